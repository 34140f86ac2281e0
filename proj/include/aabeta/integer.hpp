#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace aabeta {

using Integer = mpz_class;
using Rational = mpq_class;  // mpq_class canonicalizes: lowest terms, positive denominator

inline Integer pow2(std::size_t k) {
    Integer r;
    mpz_setbit(r.get_mpz_t(), k);
    return r;
}

/// Number of bits in |x|; zero has bit length 0.
inline std::size_t bit_length(const Integer& x) {
    return sgn(x) == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline bool test_bit(const Integer& x, std::size_t i) { return mpz_tstbit(x.get_mpz_t(), i) != 0; }

inline std::string to_decimal(const Integer& x) { return x.get_str(10); }

/// Parses a decimal integer (optional leading '-') or a 0x-prefixed hex integer.
/// Surrounding whitespace is ignored. Throws Error(format_error) on anything else.
Integer parse_integer(std::string_view text);

/// 2^lo < x < 2^hi, decided from bit positions without building the bounds.
inline bool in_pow2_interval(const Integer& x, std::size_t lo, std::size_t hi) {
    if (sgn(x) <= 0) return false;
    const std::size_t bits = bit_length(x);
    if (bits > hi) return false;
    if (bits > lo + 1) return true;
    // bits == lo + 1: x > 2^lo unless x is exactly 2^lo
    return bits == lo + 1 && mpz_scan1(x.get_mpz_t(), 0) < lo;
}

/// Exact floor division and nonnegative remainder helpers.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool divides(const Integer& d, const Integer& x) {
    return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

}  // namespace aabeta
