#pragma once

#include "aabeta/integer.hpp"
#include "aabeta/numtheory.hpp"
#include "aabeta/random.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace aabeta {

/// (n, e_A1, e_A2) with e_A1 = p^2 q and e_A2 = e.
struct PublicKey {
    std::size_t n = 0;
    Integer e_a1;
    Integer e_a2;

    friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

/// Stored as (p, q, d); pq is derived because decryption needs both primes.
struct PrivateKey {
    std::size_t n = 0;
    Integer p;
    Integer q;
    Integer d;

    Integer pq() const { return p * q; }

    friend bool operator==(const PrivateKey&, const PrivateKey&) = default;
};

struct KeyPair {
    PublicKey pub;
    PrivateKey priv;

    friend bool operator==(const KeyPair&, const KeyPair&) = default;
};

enum class Validation { strict, relaxed };

struct ValidationReport {
    std::vector<std::string> violations;

    bool valid() const { return violations.empty(); }
    bool mentions(std::string_view needle) const;
};

KeyPair generate_keypair(std::size_t n, RandomSource& rng, nt::PrimeKind primes = nt::PrimeKind::plain);

/// Relaxed mode checks algebraic consistency only; strict mode adds every
/// size bound of key generation and primality of p, q.
ValidationReport validate_keypair(const KeyPair& kp, Validation mode);

PublicKey derive_public(const PrivateKey& priv, const Integer& e_a2, std::size_t n);

/// True when d^9 > (p^2 q)^4, i.e. d exceeds the key-generation floor (p^2 q)^(4/9).
bool exceeds_d_floor(const Integer& d, const Integer& e_a1);

}  // namespace aabeta
