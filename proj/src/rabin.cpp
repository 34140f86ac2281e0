#include "aabeta/rabin.hpp"
#include "aabeta/error.hpp"
#include "aabeta/numtheory.hpp"

#include <algorithm>

namespace aabeta::rabin {

KeyPair keygen(std::size_t n, RandomSource& rng) {
    require(n >= 4, ErrorKind::invalid_argument, "Rabin prime size must be >= 4 bits");
    Integer p = nt::gen_prime_3mod4(n, rng);
    Integer q;
    do {
        q = nt::gen_prime_3mod4(n, rng);
    } while (q == p);
    return KeyPair{n, std::move(p), std::move(q)};
}

Integer encrypt(const Integer& modulus, const Integer& m) {
    require(sgn(m) >= 0 && m < modulus, ErrorKind::invalid_argument, "message must lie in [0, N)");
    return m * m % modulus;
}

std::array<Integer, 4> decrypt_all(const KeyPair& kp, const Integer& c) {
    require(sgn(c) >= 0 && c < kp.modulus(), ErrorKind::invalid_ciphertext, "ciphertext outside [0, N)");
    try {
        return nt::four_roots(nt::sqrt_mod_p_3mod4(c % kp.p, kp.p), nt::sqrt_mod_p_3mod4(c % kp.q, kp.q), kp.p,
                              kp.q);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::non_residue) fail(ErrorKind::invalid_ciphertext, e.what());
        throw;
    }
}

Integer redundant_message(const Integer& payload, std::size_t l) {
    require(sgn(payload) >= 0, ErrorKind::invalid_argument, "payload must be nonnegative");
    Integer low;
    mpz_fdiv_r_2exp(low.get_mpz_t(), payload.get_mpz_t(), l);
    return (payload << l) + low;
}

bool has_redundancy(const Integer& m, std::size_t l) {
    Integer low, next;
    mpz_fdiv_r_2exp(low.get_mpz_t(), m.get_mpz_t(), l);
    const Integer shifted = m >> l;
    mpz_fdiv_r_2exp(next.get_mpz_t(), shifted.get_mpz_t(), l);
    return low == next;
}

Integer encrypt_redundant(const Integer& modulus, const Integer& payload, std::size_t l) {
    const Integer m = redundant_message(payload, l);
    require(m < modulus, ErrorKind::invalid_argument, "redundant message does not fit below N");
    return encrypt(modulus, m);
}

RedundantResult decrypt_redundant(const KeyPair& kp, const Integer& c, std::size_t l) {
    std::vector<Integer> matches;
    for (const Integer& r : decrypt_all(kp, c)) {
        if (has_redundancy(r, l) && std::find(matches.begin(), matches.end(), r) == matches.end())
            matches.push_back(r);
    }
    require(!matches.empty(), ErrorKind::invalid_ciphertext, "no square root carries the redundancy pattern");
    if (matches.size() == 1) return Integer(matches.front() >> l);
    return Ambiguity{std::move(matches)};
}

ExtraBitsCiphertext encrypt_extrabits(const Integer& modulus, const Integer& m) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), modulus.get_mpz_t());
    require(g == 1, ErrorKind::invalid_argument, "gcd(m, N) != 1");
    return {encrypt(modulus, m), mpz_odd_p(m.get_mpz_t()) != 0, nt::jacobi(m, modulus) == 1};
}

Integer decrypt_extrabits(const KeyPair& kp, const ExtraBitsCiphertext& ct) {
    const Integer modulus = kp.modulus();
    for (const Integer& r : decrypt_all(kp, ct.c)) {
        if (sgn(r) == 0) continue;
        const bool parity = mpz_odd_p(r.get_mpz_t()) != 0;
        if (parity == ct.parity && (nt::jacobi(r, modulus) == 1) == ct.jacobi_positive) return r;
    }
    fail(ErrorKind::invalid_ciphertext, "no square root matches the parity and Jacobi bits");
}

AmbiguityStats measure_ambiguity(std::size_t n, std::size_t l, std::size_t trials, RandomSource& rng) {
    AmbiguityStats stats;
    for (std::size_t i = 0; i < trials; ++i) {
        const KeyPair kp = keygen(n, rng);
        const Integer modulus = kp.modulus();
        // largest payload whose redundant form stays below N
        const Integer payload = rng.below(modulus >> l);
        const Integer c = encrypt_redundant(modulus, payload, l);
        const RedundantResult result = decrypt_redundant(kp, c, l);
        ++stats.trials;
        if (const auto* amb = std::get_if<Ambiguity>(&result)) {
            ++stats.ambiguous;
            const Integer honest = redundant_message(payload, l);
            if (std::find(amb->matching_roots.begin(), amb->matching_roots.end(), honest) ==
                amb->matching_roots.end())
                ++stats.failures;
        } else if (std::get<Integer>(result) != payload) {
            ++stats.failures;
        }
    }
    return stats;
}

}  // namespace aabeta::rabin
