#include "aabeta/cipher.hpp"
#include "aabeta/error.hpp"
#include "aabeta/numtheory.hpp"

#include <algorithm>

namespace aabeta {

bool EphemeralPair::in_range(std::size_t n) const {
    return in_pow2_interval(k1, n - 1, n) && in_pow2_interval(k2, n - 1, n);
}

namespace {

// uniform in (2^{n-1}, 2^n): top bit forced, all-zero tail rejected
void sample_ephemeral(Integer& k, std::size_t n, RandomSource& rng) {
    do rng.fill_bits(k, n - 1);
    while (sgn(k) == 0);
    mpz_setbit(k.get_mpz_t(), n - 1);
}

// reused across calls so steady-state encryption does not touch the heap
struct EncryptState {
    EphemeralPair eph;
    EncryptionValues<Integer> values;
    EncryptionScratch<Integer> scratch;
};

}  // namespace

EphemeralPair sample_ephemerals(std::size_t n, RandomSource& rng) {
    EphemeralPair eph;
    sample_ephemeral(eph.k1, n, rng);
    sample_ephemeral(eph.k2, n, rng);
    return eph;
}

void encrypt(Ciphertext& out, const PublicKey& pub, const EncodedMessage& msg, RandomSource& rng) {
    require(msg.n == pub.n && msg.in_range(), ErrorKind::invalid_argument, "message pair out of range for this key");
    thread_local EncryptState state;
    sample_ephemeral(state.eph.k1, pub.n, rng);
    sample_ephemeral(state.eph.k2, pub.n, rng);
    swap(state.values.c, out.c);
    encrypt_into(state.values, state.scratch, pub.e_a1, pub.e_a2, msg.m1, msg.m2, state.eph.k1, state.eph.k2, pub.n);
    swap(state.values.c, out.c);
}

Ciphertext encrypt(const PublicKey& pub, const EncodedMessage& msg, RandomSource& rng) {
    Ciphertext out;
    encrypt(out, pub, msg, rng);
    return out;
}

EncryptionTrace encrypt_with_ephemerals(const PublicKey& pub, const EncodedMessage& msg, const EphemeralPair& eph) {
    require(msg.n == pub.n && msg.in_range(), ErrorKind::invalid_argument, "message pair out of range for this key");
    require(eph.in_range(pub.n), ErrorKind::invalid_argument, "ephemeral values outside (2^(n-1), 2^n)");
    auto values = encrypt_values<Integer>(pub.e_a1, pub.e_a2, msg.m1, msg.m2, eph.k1, eph.k2, pub.n);
    return {std::move(values.u), std::move(values.v), Ciphertext{std::move(values.c)}};
}

DecryptionTrace decrypt_trace(const KeyPair& kp, const Ciphertext& ct) {
    const auto& [pub, priv] = kp;
    const std::size_t n = pub.n;
    const Integer pq = priv.pq();
    require(sgn(ct.c) > 0, ErrorKind::invalid_ciphertext, "ciphertext must be positive");

    DecryptionTrace t;
    t.w = mod_floor(ct.c * priv.d, pq);
    try {
        t.xp = nt::sqrt_mod_p_3mod4(mod_floor(t.w, priv.p), priv.p);
        t.xq = nt::sqrt_mod_p_3mod4(mod_floor(t.w, priv.q), priv.q);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::non_residue) fail(ErrorKind::invalid_ciphertext, e.what());
        throw;
    }
    t.roots = nt::four_roots(t.xp, t.xq, priv.p, priv.q);

    const Integer v_lo = pow2(2 * n - 2), v_hi = pow2(2 * n - 1);
    for (std::size_t i = 0; i < 4; ++i) {
        RootCandidate& cand = t.candidates[i];
        cand.v = t.roots[i];
        cand.v_in_window = v_lo < cand.v && cand.v < v_hi;
        const Integer rest = ct.c - cand.v * cand.v * pub.e_a2;
        if (sgn(rest) >= 0 && divides(pub.e_a1, rest)) {
            Integer u;
            mpz_divexact(u.get_mpz_t(), rest.get_mpz_t(), pub.e_a1.get_mpz_t());
            cand.u = std::move(u);
        }
        // V = 0 mod p or mod q collapses the roots into equal pairs; count each value once
        const bool repeat = std::any_of(t.roots.begin(), t.roots.begin() + i, [&](const Integer& r) { return r == cand.v; });
        if (cand.accepted() && !repeat) {
            ++t.accepted_count;
            t.chosen = i;
        }
    }
    if (t.accepted_count != 1) t.chosen.reset();
    return t;
}

EncodedMessage decrypt(const KeyPair& kp, const Ciphertext& ct) {
    const DecryptionTrace t = decrypt_trace(kp, ct);
    require(t.accepted_count != 0, ErrorKind::invalid_ciphertext, "no square root yields an integral U");
    require(t.accepted_count == 1, ErrorKind::parameter_violation,
            std::to_string(t.accepted_count) + " roots passed the uniqueness filter; key is inconsistent");
    const RootCandidate& hit = t.candidates[*t.chosen];
    const std::size_t n = kp.pub.n;
    return EncodedMessage{*hit.u >> n, hit.v >> n, n};
}

}  // namespace aabeta
