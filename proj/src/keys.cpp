#include "aabeta/keys.hpp"
#include "aabeta/error.hpp"

#include <algorithm>

namespace aabeta {

namespace {

bool strictly_between(const Integer& x, const Integer& lo, const Integer& hi) { return lo < x && x < hi; }

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

}  // namespace

bool ValidationReport::mentions(std::string_view needle) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

bool exceeds_d_floor(const Integer& d, const Integer& e_a1) {
    Integer d9, e4;
    mpz_pow_ui(d9.get_mpz_t(), d.get_mpz_t(), 9);
    mpz_pow_ui(e4.get_mpz_t(), e_a1.get_mpz_t(), 4);
    return d9 > e4;
}

PublicKey derive_public(const PrivateKey& priv, const Integer& e_a2, std::size_t n) {
    return PublicKey{n, priv.p * priv.p * priv.q, e_a2};
}

KeyPair generate_keypair(std::size_t n, RandomSource& rng, nt::PrimeKind primes) {
    require(n >= 8, ErrorKind::invalid_argument, "key size n must be >= 8");
    const Integer p = nt::gen_prime_3mod4(n, rng, primes);
    Integer q;
    do {
        q = nt::gen_prime_3mod4(n, rng, primes);
    } while (q == p);

    const Integer pq = p * q;
    const Integer e_a1 = p * p * q;

    Integer e_a1_4;
    mpz_pow_ui(e_a1_4.get_mpz_t(), e_a1.get_mpz_t(), 4);
    const Integer d_floor = nt::iroot(e_a1_4, 9);

    Integer d;
    do {
        d = rng.in_range(d_floor + 1, pq - 1);
    } while (!exceeds_d_floor(d, e_a1) || gcd(d, pq) != 1);

    // smallest e = d^-1 (mod pq) above 2^{3n+4}; the window is wider than pq, so it also stays below 2^{3n+6}
    const Integer e_lower = pow2(3 * n + 4);
    Integer e = nt::mod_inv(d, pq);
    if (e <= e_lower) e += ((e_lower - e) / pq + 1) * pq;
    require(e < pow2(3 * n + 6), ErrorKind::parameter_violation, "e_A2 placement overflowed its window");

    PrivateKey priv{n, p, q, d};
    return KeyPair{derive_public(priv, e, n), priv};
}

ValidationReport validate_keypair(const KeyPair& kp, Validation mode) {
    ValidationReport report;
    auto check = [&](bool ok, std::string what) {
        if (!ok) report.violations.push_back(std::move(what));
    };
    const auto& [pub, priv] = kp;
    const Integer pq = priv.pq();

    check(pub.n == priv.n, "n differs between public and private key");
    check(pub.e_a1 == priv.p * priv.p * priv.q, "e_A1 != p^2 q");
    check(sgn(priv.p) > 0 && mod_floor(priv.p, 4) == 3, "p != 3 mod 4");
    check(sgn(priv.q) > 0 && mod_floor(priv.q, 4) == 3, "q != 3 mod 4");
    if (pq >= 2) {
        check(mod_floor(pub.e_a2 * priv.d, pq) == 1, "e_A2 * d != 1 mod pq");
        check(gcd(priv.d, pq) == 1, "gcd(d, pq) != 1");
    } else {
        report.violations.emplace_back("pq < 2");
    }
    check(gcd(pub.e_a1, pub.e_a2) == 1, "gcd(e_A1, e_A2) != 1");
    if (mode == Validation::relaxed) return report;

    const std::size_t n = pub.n;
    check(priv.p != priv.q, "p == q");
    check(nt::is_probable_prime(priv.p), "p is not prime");
    check(nt::is_probable_prime(priv.q), "q is not prime");
    check(strictly_between(priv.p, pow2(n), pow2(n + 1)), "p outside (2^n, 2^(n+1))");
    check(strictly_between(priv.q, pow2(n), pow2(n + 1)), "q outside (2^n, 2^(n+1))");
    check(strictly_between(pq, pow2(2 * n), pow2(2 * n + 2)), "pq outside (2^(2n), 2^(2n+2))");
    check(strictly_between(pub.e_a1, pow2(3 * n), pow2(3 * n + 3)), "e_A1 outside (2^(3n), 2^(3n+3))");
    check(strictly_between(pub.e_a2, pow2(3 * n + 4), pow2(3 * n + 6)), "e_A2 outside (2^(3n+4), 2^(3n+6))");
    check(exceeds_d_floor(priv.d, pub.e_a1), "d not above (p^2 q)^(4/9)");
    check(sgn(priv.d) > 0 && priv.d < pq, "d outside (0, pq)");
    return report;
}

}  // namespace aabeta
