// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "aabeta/attacks.hpp"
#include "aabeta/bench.hpp"
#include "aabeta/cipher.hpp"
#include "aabeta/codec.hpp"
#include "aabeta/error.hpp"
#include "aabeta/keys.hpp"
#include "aabeta/lll.hpp"
#include "aabeta/numtheory.hpp"
#include "aabeta/rabin.hpp"
#include "lll_oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace aabeta;
using attacks::Verdict;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) detail << "first failure: " << what << "; ";
        ok = ok && cond;
    }
};

struct Criterion {
    const char* name;
    double limit_s;
    std::function<void(Outcome&)> run;
};

Bytes random_payload(std::size_t n, RandomSource& rng) {
    Bytes payload(capacity_bytes(n));
    for (auto& b : payload) b = static_cast<std::uint8_t>(rng.next_u64());
    return payload;
}

const Integer worked_p{62683}, worked_q{62483}, worked_d{2486483};
const Integer worked_e_a1{"245505609868187"}, worked_e_a2{"4106878163802480"};
const Integer worked_m1{"544644664056570"}, worked_m2{21777}, worked_k1{54433}, worked_k2{33079};
const Integer worked_u{"35693832703611425953"}, worked_v{1427210551};
const Integer worked_c{"17128459327562266456602243879187691"};

KeyPair worked_keys() { return {PublicKey{16, worked_e_a1, worked_e_a2}, PrivateKey{16, worked_p, worked_q, worked_d}}; }

void worked_example(Outcome& o) {
    const KeyPair kp = worked_keys();
    const EncodedMessage msg{worked_m1, worked_m2, 16};
    const auto enc = encrypt_with_ephemerals(kp.pub, msg, {worked_k1, worked_k2});
    o.expect(enc.u == worked_u, "U");
    o.expect(enc.v == worked_v, "V");
    o.expect(enc.ct.c == worked_c, "C");
    const auto t = decrypt_trace(kp, enc.ct);
    o.expect(t.w == 3215349249, "W");
    const std::array<Integer, 4> roots{318887097, 2489411338, 1427210551, 3597734792};
    o.expect(t.roots == roots, "root order");
    o.expect(t.accepted_count == 1 && t.chosen == std::size_t{2}, "single accepted root V3");
    o.expect(t.candidates[2].u == worked_u, "U3");
    o.expect(decrypt(kp, enc.ct) == msg, "recovered (m1, m2)");
    o.detail << "C=" << to_decimal(enc.ct.c);
}

void uniqueness(Outcome& o) {
    std::size_t trials = 0, unique = 0;
    for (std::size_t n : {8, 16, 32, 64}) {
        RandomSource rng(1000 + n);
        for (int i = 0; i < 100; ++i) {
            const KeyPair kp = generate_keypair(n, rng);
            const Bytes payload = random_payload(n, rng);
            const auto enc = encrypt_with_ephemerals(kp.pub, encode(payload, n), sample_ephemerals(n, rng));
            const auto t = decrypt_trace(kp, enc.ct);
            ++trials;
            if (t.accepted_count == 1 && t.chosen && t.roots[*t.chosen] == enc.v &&
                decode(decrypt(kp, enc.ct)) == payload)
                ++unique;
        }
    }
    o.expect(trials >= 400 && unique == trials, "a trial without exactly one accepted root");
    o.detail << unique << "/" << trials << " unique";
}

void factoring(Outcome& o) {
    std::size_t recovered = 0, gcd_hits = 0, total = 0;
    for (std::size_t n : {8, 16, 32}) {
        RandomSource rng(2000 + n);
        int done = 0;
        while (done < 100) {
            const KeyPair kp = generate_keypair(n, rng);
            const Integer& p = kp.priv.p;
            const Integer& q = kp.priv.q;
            const Integer pq = p * q;
            const Integer v = rng.below(pq);
            const Integer w = v * v % pq;
            if (sgn(Integer(w % p)) == 0 || sgn(Integer(w % q)) == 0) continue;
            const Integer xp = nt::sqrt_mod_p_3mod4(w % p, p), xq = nt::sqrt_mod_p_3mod4(w % q, q);
            const auto roots = nt::four_roots(xp, xq, p, q);
            ++done;
            ++total;
            try {
                const auto [fp, fq] = attacks::factor_from_roots(kp.pub.e_a1, roots);
                if (fp == p && fq == q) ++recovered;
            } catch (const Error&) {
            }
            Integer g;
            const Integer sum = roots[0] + roots[2];
            mpz_gcd(g.get_mpz_t(), kp.pub.e_a1.get_mpz_t(), sum.get_mpz_t());
            if (g == p) ++gcd_hits;
        }
    }
    o.expect(recovered == total, "factor_from_roots missed an instance");
    o.expect(gcd_hits == total, "gcd(e_A1, V1 + V3) != p");
    o.detail << recovered << "/" << total << " factored, gcd(e_A1, V1+V3)=p in " << gcd_hits << "/" << total;
}

void euclid(Outcome& o) {
    RandomSource rng(3016);
    int held = 0;
    const int trials = 10000;
    KeyPair kp = generate_keypair(16, rng);
    for (int i = 0; i < trials; ++i) {
        if (i % 100 == 0) kp = generate_keypair(16, rng);
        const auto enc = encrypt_with_ephemerals(kp.pub, encode(random_payload(16, rng), 16), sample_ephemerals(16, rng));
        if (floor_div(enc.ct.c, kp.pub.e_a1) != enc.u && floor_div(enc.ct.c, kp.pub.e_a2) != enc.v * enc.v) ++held;
    }
    o.expect(held == trials, "a quotient equalled U or V^2");
    o.detail << held << "/" << trials << " quotients differ";
}

void congruence(Outcome& o) {
    std::size_t tested = 0;
    for (std::size_t n : {16, 32, 64, 128}) {
        RandomSource rng(4000 + n);
        for (int i = 0; i < 50; ++i) {
            const KeyPair kp = generate_keypair(n, rng);
            const auto enc = encrypt_with_ephemerals(kp.pub, encode(random_payload(n, rng), n), sample_ephemerals(n, rng));
            const auto params = attacks::congruence_params(kp.pub, enc.ct);
            const Integer diff = enc.u - params.a;
            const bool divisible = divides(kp.pub.e_a2, diff);
            o.expect(divisible, "e_A2 does not divide U - a");
            if (!divisible) continue;
            const Integer j = diff / kp.pub.e_a2;
            o.expect(enc.u == params.a + kp.pub.e_a2 * j, "U = a + e_A2 j");
            o.expect(enc.v * enc.v == params.b - kp.pub.e_a1 * j, "V^2 = b - e_A1 j");
            o.expect(params.window_u == pow2(n - 6), "window_u = 2^(n-6)");
            o.expect(params.window_v == 3 * pow2(n - 7), "window_v = 3 * 2^(n-7)");
            ++tested;
        }
    }
    const auto worked = attacks::congruence_params(worked_keys().pub, Ciphertext{worked_c});
    o.expect(worked.window_u == 1024 && worked.window_v == 1536, "worked windows");
    o.expect(worked_u == worked.a + worked_e_a2 * 8691, "worked j = 8691");
    o.detail << tested << " instances, worked windows " << to_decimal(worked.window_u) << "/"
             << to_decimal(worked.window_v);
}

void lattice(Outcome& o) {
    const KeyPair kp = worked_keys();
    const Ciphertext ct{worked_c};
    const Integer t = pow2(320);
    const auto report = attacks::lattice_attack(kp.pub, ct, t, attacks::KnownAnswer{worked_u, worked_v});
    o.expect(report.verdict == Verdict::not_recovered, "verdict not-recovered");

    const LatticeBasis m0 = attacks::build_lattice(kp.pub, ct, t);
    const LatticeBasis reduced = lll_reduce(m0);
    std::size_t zero_third = 0, t_rows = 0;
    for (const auto& row : reduced.rows) {
        if (sgn(row[2]) == 0) ++zero_third;
        if (abs(row[2]) == t) ++t_rows;
    }
    o.expect(zero_third == 2 && t_rows == 1, "reduced basis shape");
    o.expect(lll_oracle::is_lll_reduced(reduced, kDefaultLllDelta), "worked basis LLL-reduced");

    const Integer v_squared = worked_v * worked_v;
    const IntVector coeff{worked_u, v_squared, 1};
    IntVector image(3, Integer(0));
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) image[c] += coeff[r] * m0.rows[r][c];
    o.expect(image == IntVector{worked_u, v_squared, 0}, "membership identity");

    RandomSource rng(6128);
    int tested = 0;
    while (tested < 500) {
        LatticeBasis b;
        for (int i = 0; i < 3; ++i) {
            IntVector row;
            for (int j = 0; j < 3; ++j) row.push_back(rng.bits(129) - pow2(128));
            b.rows.push_back(row);
        }
        if (sgn(b.determinant()) == 0) continue;
        ++tested;
        const LatticeBasis r = lll_reduce(b);
        o.expect(lll_oracle::is_lll_reduced(r, kDefaultLllDelta), "random basis not reduced");
        o.expect(lll_oracle::same_lattice(b, r), "random basis |det| changed");
    }
    o.detail << "zero-third rows " << zero_third << ", T rows " << t_rows << ", " << tested << " random bases";
}

void redundancy(Outcome& o) {
    RandomSource rng(7016);
    const auto stats = rabin::measure_ambiguity(16, 8, 20000, rng);
    const double lo = std::ldexp(1.0, -7) / 3, hi = 3 * std::ldexp(1.0, -7);
    o.expect(stats.trials == 20000, "trial count");
    o.expect(stats.failures == 0, "honest root missing");
    o.expect(stats.rate() >= lo && stats.rate() <= hi, "rate outside [2^-7/3, 3*2^-7]");
    o.detail << "rate " << stats.rate() << " (" << stats.ambiguous << "/" << stats.trials << "), bounds [" << lo << ", "
             << hi << "]";
}

void table_ratios(Outcome& o) {
    double worst_ratio = 0;
    for (std::size_t n : {64, 128, 256, 512}) {
        RandomSource rng(8000 + n);
        for (int i = 0; i < 10; ++i) {
            const KeyPair kp = generate_keypair(n, rng);
            const std::size_t key_bits = bit_length(kp.pub.e_a1) + bit_length(kp.pub.e_a2);
            o.expect(key_bits >= 6 * n && key_bits <= 6 * n + 9, "public-key bits outside [6n, 6n+9]");
            for (int k = 0; k < 5; ++k) {
                const Ciphertext ct = encrypt(kp.pub, encode(random_payload(n, rng), n), rng);
                const double ratio = static_cast<double>(bit_length(ct.c)) / static_cast<double>(4 * n);
                worst_ratio = std::max(worst_ratio, ratio);
            }
        }
    }
    o.expect(worst_ratio <= 1.80, "ciphertext ratio above 1.80");

    // sizes interleaved within each round so a slow interval hits all of them
    const std::vector<double> ns{128, 256, 512, 1024};
    const int rounds = 9;
    std::vector<std::vector<double>> samples(ns.size());
    for (int round = 0; round < rounds; ++round)
        for (std::size_t i = 0; i < ns.size(); ++i)
            samples[i].push_back(bench::time_aabeta_encrypt(static_cast<std::size_t>(ns[i]), 5, 80 + round, 5.0));
    std::vector<double> times;
    for (auto& s : samples) {
        std::sort(s.begin(), s.end());
        times.push_back(s[s.size() / 2]);
    }
    const double slope = bench::loglog_slope(ns, times);
    o.expect(slope >= 1.5 && slope <= 2.6, "encryption exponent outside [1.5, 2.6]");
    char buf[200];
    std::snprintf(buf, sizeof buf, "max C ratio %.3f, exponent %.3f (median us %.3f %.3f %.3f %.3f)", worst_ratio,
                  slope, 1000 * times[0], 1000 * times[1], 1000 * times[2], 1000 * times[3]);
    o.detail << buf;
}

void coppersmith(Outcome& o) {
    std::size_t keys = 0;
    for (std::size_t n : {16, 32, 64, 128}) {
        RandomSource rng(9000 + n);
        for (int i = 0; i < 10; ++i) {
            const KeyPair kp = generate_keypair(n, rng);
            if (!validate_keypair(kp, Validation::strict).valid()) {
                o.expect(false, "generated key not strict-valid");
                continue;
            }
            const auto r = attacks::coppersmith_feasibility(kp.pub, kp.priv.d);
            o.expect(r.diagnostic("v_check") == "infeasible", "v-check feasible on a strict key");
            o.expect(r.diagnostic("d_check") == "infeasible", "d-check feasible on a strict key");
            o.expect(r.verdict == Verdict::infeasible_by_bounds, "verdict");
            ++keys;
        }
    }
    RandomSource rng(9999);
    const KeyPair kp = generate_keypair(64, rng);
    const Integer pq = kp.priv.pq();
    Integer d = 65537;
    while (nt::ext_gcd(d, pq).g != 1) d += 2;
    const PublicKey weak{64, kp.pub.e_a1, nt::mod_inv(d, pq)};
    o.expect(!exceeds_d_floor(d, weak.e_a1), "weak d above floor");
    const auto r = attacks::coppersmith_feasibility(weak, d);
    o.expect(r.diagnostic("d_check") == "feasible", "weak key d-check");
    o.detail << keys << " strict keys infeasible, weak d flagged";
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"worked example bit-exact", 1, worked_example},
        {"unique decryption over 400 round trips", 30, uniqueness},
        {"factoring from the four roots", 10, factoring},
        {"euclidean division reveals nothing", 30, euclid},
        {"congruence identity and windows", 30, congruence},
        {"lattice attack shape and LLL postconditions", 60, lattice},
        {"Rabin redundancy ambiguity at l=8", 60, redundancy},
        {"key and ciphertext sizes, encryption growth", 300, table_ratios},
        {"Coppersmith bound checks", 5, coppersmith},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.expect(secs < c.limit_s, "runtime limit");
        std::printf("%s %zu %s: %s [%.2fs / %.0fs]\n", o.ok ? "PASS" : "FAIL", i + 1, c.name, o.detail.str().c_str(),
                    secs, c.limit_s);
        std::fflush(stdout);
        if (!o.ok) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
