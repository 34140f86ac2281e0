#pragma once

#include "aabeta/codec.hpp"
#include "aabeta/integer.hpp"
#include "aabeta/keys.hpp"
#include "aabeta/mpkernel.hpp"
#include "aabeta/random.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <utility>

namespace aabeta {

struct Ciphertext {
    Integer c;

    friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

/// Per-encryption session values k1, k2 in (2^{n-1}, 2^n).
struct EphemeralPair {
    Integer k1;
    Integer k2;

    bool in_range(std::size_t n) const;
};

template <class Int>
struct EncryptionValues {
    Int u;
    Int v;
    Int c;
};

template <class Int>
struct EncryptionScratch {
    Int v_squared;
    Int left;
    Int right;
};

// Arithmetic vocabulary of the encryption formula, all writing into existing
// storage. Products go through the schoolbook kernel; shl is a shift by n bits.
inline void mul_into(Integer& r, const Integer& a, const Integer& b) { kernel::multiply_into(r, a, b); }
inline void add_into(Integer& r, const Integer& a, const Integer& b) {
    mpz_add(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}
inline void shl_into(Integer& r, const Integer& a, std::size_t bits) {
    mpz_mul_2exp(r.get_mpz_t(), a.get_mpz_t(), bits);
}

/// U = m1 2^n + k1, V = m2 2^n + k2, C = U e_A1 + V^2 e_A2.
/// Generic over the integer type so tests can count the operations used:
/// only mul, add and shl appear, never division or reduction.
template <class Int>
void encrypt_into(EncryptionValues<Int>& out, EncryptionScratch<Int>& scratch, const Int& e_a1, const Int& e_a2,
                  const Int& m1, const Int& m2, const Int& k1, const Int& k2, std::size_t n) {
    shl_into(out.u, m1, n);
    add_into(out.u, out.u, k1);
    shl_into(out.v, m2, n);
    add_into(out.v, out.v, k2);
    mul_into(scratch.v_squared, out.v, out.v);
    mul_into(scratch.left, out.u, e_a1);
    mul_into(scratch.right, scratch.v_squared, e_a2);
    add_into(out.c, scratch.left, scratch.right);
}

template <class Int>
EncryptionValues<Int> encrypt_values(const Int& e_a1, const Int& e_a2, const Int& m1, const Int& m2, const Int& k1,
                                     const Int& k2, std::size_t n) {
    EncryptionValues<Int> out;
    EncryptionScratch<Int> scratch;
    encrypt_into(out, scratch, e_a1, e_a2, m1, m2, k1, k2, n);
    return out;
}

struct EncryptionTrace {
    Integer u;
    Integer v;
    Ciphertext ct;
};

EphemeralPair sample_ephemerals(std::size_t n, RandomSource& rng);

Ciphertext encrypt(const PublicKey& pub, const EncodedMessage& msg, RandomSource& rng);

/// Same, writing into out and reusing its storage.
void encrypt(Ciphertext& out, const PublicKey& pub, const EncodedMessage& msg, RandomSource& rng);

EncryptionTrace encrypt_with_ephemerals(const PublicKey& pub, const EncodedMessage& msg, const EphemeralPair& eph);

struct RootCandidate {
    Integer v;
    std::optional<Integer> u;  // set when C - V^2 e_A2 >= 0 and divisible by e_A1
    bool v_in_window = false;  // 2^{2n-2} < V < 2^{2n-1}

    bool accepted() const { return u.has_value() && v_in_window; }
};

/// Every intermediate of the decryption procedure.
struct DecryptionTrace {
    Integer w;
    Integer xp;
    Integer xq;
    std::array<Integer, 4> roots;
    std::array<RootCandidate, 4> candidates;
    std::size_t accepted_count = 0;     // distinct accepted root values
    std::optional<std::size_t> chosen;  // index of the single accepted root
};

/// Runs the full procedure without rejecting zero or multiple survivors.
/// Throws invalid_ciphertext when W has no square root mod p or mod q.
DecryptionTrace decrypt_trace(const KeyPair& kp, const Ciphertext& ct);

/// Throws invalid_ciphertext when no candidate survives and parameter_violation
/// when more than one does.
EncodedMessage decrypt(const KeyPair& kp, const Ciphertext& ct);

}  // namespace aabeta
