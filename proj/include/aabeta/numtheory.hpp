#pragma once

#include "aabeta/integer.hpp"
#include "aabeta/random.hpp"

#include <array>
#include <cstddef>

namespace aabeta::nt {

inline constexpr unsigned kDefaultPrimalityRounds = 64;

/// base^exp mod modulus, result in [0, modulus).
Integer mod_exp(const Integer& base, const Integer& exp, const Integer& modulus);

struct GcdResult {
    Integer g;
    Integer x;
    Integer y;
};

/// g = gcd(a, b) >= 0 with a*x + b*y = g.
GcdResult ext_gcd(const Integer& a, const Integer& b);

/// r in [1, m) with a*r = 1 (mod m). Throws not_invertible when gcd(a, m) != 1.
Integer mod_inv(const Integer& a, const Integer& m);

/// Miller-Rabin. Deterministic below 2^64 (fixed witness set); above that,
/// `rounds` witnesses drawn from a stream seeded by n itself, so the answer
/// is reproducible.
bool is_probable_prime(const Integer& n, unsigned rounds = kDefaultPrimalityRounds);

enum class PrimeKind { plain, safe };

/// Random probable prime p = 3 (mod 4) with 2^bits < p < 2^(bits+1).
/// Safe mode additionally requires (p - 1) / 2 prime.
Integer gen_prime_3mod4(std::size_t bits, RandomSource& rng, PrimeKind kind = PrimeKind::plain);

/// Principal square root W^((p+1)/4) mod p for p = 3 (mod 4); the other root
/// is p - x. Throws non_residue when W has no square root mod p.
Integer sqrt_mod_p_3mod4(const Integer& w, const Integer& p);

/// The four CRT combinations of (+-x_p mod p, +-x_q mod q), in sign order
/// (++, +-, -+, --), each reduced into [0, pq).
std::array<Integer, 4> four_roots(const Integer& xp, const Integer& xq, const Integer& p, const Integer& q);

/// Jacobi symbol (a | n) for odd n >= 3.
int jacobi(const Integer& a, const Integer& n);

/// floor(sqrt(n)) for n >= 0.
Integer isqrt(const Integer& n);

bool is_perfect_square(const Integer& n);

/// floor(n^(1/k)) for n >= 0, k >= 1.
Integer iroot(const Integer& n, unsigned long k);

}  // namespace aabeta::nt
