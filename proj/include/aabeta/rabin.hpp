#pragma once

#include "aabeta/integer.hpp"
#include "aabeta/random.hpp"

#include <array>
#include <cstddef>
#include <variant>
#include <vector>

namespace aabeta::rabin {

struct KeyPair {
    std::size_t n = 0;
    Integer p;
    Integer q;

    Integer modulus() const { return p * q; }

    friend bool operator==(const KeyPair&, const KeyPair&) = default;
};

KeyPair keygen(std::size_t n, RandomSource& rng);

/// m^2 mod N for 0 <= m < N.
Integer encrypt(const Integer& modulus, const Integer& m);

/// The four square roots of c mod N in (++, +-, -+, --) order.
/// Throws invalid_ciphertext when c is not a square mod p and mod q.
std::array<Integer, 4> decrypt_all(const KeyPair& kp, const Integer& c);

// Redundancy scheme: m = payload * 2^l + (payload mod 2^l), so the low l bits
// repeat the next l bits.

Integer redundant_message(const Integer& payload, std::size_t l);

bool has_redundancy(const Integer& m, std::size_t l);

Integer encrypt_redundant(const Integer& modulus, const Integer& payload, std::size_t l);

struct Ambiguity {
    std::vector<Integer> matching_roots;
};

using RedundantResult = std::variant<Integer, Ambiguity>;

/// The unique payload, or the list of every root carrying the redundancy.
/// Throws invalid_ciphertext when no root matches.
RedundantResult decrypt_redundant(const KeyPair& kp, const Integer& c, std::size_t l);

// Extra-bits scheme: the sender also transmits m mod 2 and whether (m | N) = +1.

struct ExtraBitsCiphertext {
    Integer c;
    bool parity = false;
    bool jacobi_positive = false;

    friend bool operator==(const ExtraBitsCiphertext&, const ExtraBitsCiphertext&) = default;
};

ExtraBitsCiphertext encrypt_extrabits(const Integer& modulus, const Integer& m);

Integer decrypt_extrabits(const KeyPair& kp, const ExtraBitsCiphertext& ct);

/// Monte Carlo estimate of how often the redundancy check leaves more than one
/// root. Each trial draws a fresh n-bit key and a random payload.
struct AmbiguityStats {
    std::size_t trials = 0;
    std::size_t ambiguous = 0;
    std::size_t failures = 0;  // honest root not among the matches; should stay 0

    double rate() const { return trials == 0 ? 0.0 : static_cast<double>(ambiguous) / static_cast<double>(trials); }
};

AmbiguityStats measure_ambiguity(std::size_t n, std::size_t l, std::size_t trials, RandomSource& rng);

}  // namespace aabeta::rabin
