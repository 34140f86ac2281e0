#include "aabeta/numtheory.hpp"
#include "aabeta/error.hpp"

#include <cstdint>
#include <random>
#include <utility>

namespace aabeta::nt {

namespace {

constexpr std::array<unsigned, 12> kWitnesses64 = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

constexpr std::array<unsigned, 46> kSmallPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,
    59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109, 113, 127, 131,
    137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199};

// n odd, n > 3, n - 1 = d * 2^s
bool miller_rabin_round(const Integer& n, const Integer& n_minus_1, const Integer& d, std::size_t s,
                        const Integer& a) {
    Integer x = mod_exp(a, d, n);
    if (x == 1 || x == n_minus_1) return true;
    for (std::size_t r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n_minus_1) return true;
        if (x == 1) return false;
    }
    return false;
}

}  // namespace

Integer mod_exp(const Integer& base, const Integer& exp, const Integer& modulus) {
    require(modulus >= 2, ErrorKind::invalid_argument, "mod_exp modulus must be >= 2");
    require(sgn(exp) >= 0, ErrorKind::invalid_argument, "mod_exp exponent must be >= 0");
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

GcdResult ext_gcd(const Integer& a, const Integer& b) {
    require(sgn(a) != 0 || sgn(b) != 0, ErrorKind::invalid_argument, "ext_gcd(0, 0) is undefined");
    Integer old_r = a, r = b;
    Integer old_s = 1, s = 0;
    Integer old_t = 0, t = 1;
    while (sgn(r) != 0) {
        Integer quot;
        mpz_tdiv_q(quot.get_mpz_t(), old_r.get_mpz_t(), r.get_mpz_t());
        // gmpxx expressions are lazy; materialize before exchanging
        Integer next_r = old_r - quot * r;
        Integer next_s = old_s - quot * s;
        Integer next_t = old_t - quot * t;
        old_r = std::exchange(r, std::move(next_r));
        old_s = std::exchange(s, std::move(next_s));
        old_t = std::exchange(t, std::move(next_t));
    }
    if (sgn(old_r) < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

Integer mod_inv(const Integer& a, const Integer& m) {
    require(m >= 2, ErrorKind::invalid_argument, "mod_inv modulus must be >= 2");
    auto [g, x, y] = ext_gcd(mod_floor(a, m), m);
    if (g != 1) fail(ErrorKind::not_invertible, "gcd(a, m) = " + to_decimal(g));
    return mod_floor(x, m);
}

bool is_probable_prime(const Integer& n, unsigned rounds) {
    if (n < 2) return false;
    for (unsigned sp : kSmallPrimes) {
        if (n == sp) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), sp)) return false;
    }
    if (n < Integer(kSmallPrimes.back()) * kSmallPrimes.back()) return true;

    const Integer n_minus_1 = n - 1;
    const std::size_t s = mpz_scan1(n_minus_1.get_mpz_t(), 0);
    const Integer d = n_minus_1 >> s;

    for (unsigned a : kWitnesses64)
        if (!miller_rabin_round(n, n_minus_1, d, s, a)) return false;
    if (bit_length(n) <= 64) return true;

    RandomSource witnesses(mpz_get_ui(n.get_mpz_t()) ^ bit_length(n));
    const Integer span = n - 3;
    for (unsigned i = 0; i < rounds; ++i) {
        if (!miller_rabin_round(n, n_minus_1, d, s, witnesses.below(span) + 2)) return false;
    }
    return true;
}

Integer gen_prime_3mod4(std::size_t bits, RandomSource& rng, PrimeKind kind) {
    require(bits >= 4, ErrorKind::invalid_argument, "prime size must be >= 4 bits");
    const Integer base = pow2(bits);
    const std::size_t budget = kind == PrimeKind::plain ? 100 * bits : 100 * bits * bits;
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
        // 2^bits + 4r + 3 covers every value = 3 (mod 4) in (2^bits, 2^(bits+1))
        Integer candidate = base + (rng.bits(bits - 2) << 2) + 3;
        if (kind == PrimeKind::safe) {
            if (!is_probable_prime(candidate >> 1, 1)) continue;
            if (!is_probable_prime(candidate >> 1)) continue;
        }
        if (is_probable_prime(candidate)) return candidate;
    }
    fail(ErrorKind::generation_failure,
         "no prime = 3 mod 4 of " + std::to_string(bits) + " bits after " + std::to_string(budget) + " candidates");
}

Integer sqrt_mod_p_3mod4(const Integer& w, const Integer& p) {
    require(p >= 3 && mod_floor(p, 4) == 3, ErrorKind::invalid_argument, "modulus must be = 3 mod 4");
    require(sgn(w) >= 0 && w < p, ErrorKind::invalid_argument, "W must lie in [0, p)");
    Integer x = mod_exp(w, (p + 1) / 4, p);
    if (x * x % p != w) fail(ErrorKind::non_residue, to_decimal(w) + " is not a square mod " + to_decimal(p));
    return x;
}

std::array<Integer, 4> four_roots(const Integer& xp, const Integer& xq, const Integer& p, const Integer& q) {
    require(p != q, ErrorKind::invalid_argument, "four_roots needs distinct primes");
    require(sgn(xp) >= 0 && xp < p && sgn(xq) >= 0 && xq < q, ErrorKind::invalid_argument,
            "partial roots out of range");
    const Integer n = p * q;
    const Integer a = xp * mod_inv(q, p) * q;
    const Integer b = xq * mod_inv(p, q) * p;
    return {mod_floor(a + b, n), mod_floor(a - b, n), mod_floor(b - a, n), mod_floor(-a - b, n)};
}

int jacobi(const Integer& a_in, const Integer& n_in) {
    require(n_in >= 3 && mpz_odd_p(n_in.get_mpz_t()), ErrorKind::invalid_argument, "jacobi needs odd n >= 3");
    Integer a = mod_floor(a_in, n_in);
    Integer n = n_in;
    int result = 1;
    while (sgn(a) != 0) {
        const std::size_t twos = mpz_scan1(a.get_mpz_t(), 0);
        a >>= twos;
        const unsigned long n8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
        if ((twos & 1) && (n8 == 3 || n8 == 5)) result = -result;
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3) result = -result;
        std::swap(a, n);
        a %= n;
    }
    return n == 1 ? result : 0;
}

Integer isqrt(const Integer& n) {
    require(sgn(n) >= 0, ErrorKind::invalid_argument, "isqrt of a negative number");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Integer& n) { return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Integer iroot(const Integer& n, unsigned long k) {
    require(sgn(n) >= 0 && k >= 1, ErrorKind::invalid_argument, "iroot needs n >= 0, k >= 1");
    Integer r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

}  // namespace aabeta::nt
