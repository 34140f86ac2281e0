#include "aabeta/attacks.hpp"
#include "aabeta/error.hpp"
#include "aabeta/numtheory.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace aabeta::attacks {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fixed(double x, int digits = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string scientific(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

double log2_of(const Integer& x) {
    if (sgn(x) == 0) return -INFINITY;
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

Integer round_sqrt(const Integer& s) {
    Integer r = nt::isqrt(s);
    const Integer twice = 2 * r + 1;
    if (twice * twice <= 4 * s) ++r;
    return r;
}

// m1 = U >> n and m2 = V >> n land in the message intervals
bool decodes(const Integer& u, const Integer& v, std::size_t n) {
    return EncodedMessage{u >> n, v >> n, n}.in_range();
}

AttackReport make_report(std::string name, std::size_t n) {
    AttackReport report;
    report.attack = std::move(name);
    report.n = n;
    return report;
}

bool v_in_window(const Integer& v, std::size_t n) { return pow2(2 * n - 2) < v && v < pow2(2 * n - 1); }

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::recovered: return "recovered";
        case Verdict::infeasible_by_bounds: return "infeasible-by-bounds";
        case Verdict::not_recovered: return "not-recovered";
    }
    return "not-recovered";
}

Verdict parse_verdict(std::string_view text) {
    if (text == "recovered") return Verdict::recovered;
    if (text == "infeasible-by-bounds") return Verdict::infeasible_by_bounds;
    if (text == "not-recovered") return Verdict::not_recovered;
    fail(ErrorKind::format_error, "unknown verdict '" + std::string(text) + "'");
}

// ---- congruence -------------------------------------------------------------

CongruenceParams congruence_params(const PublicKey& pub, const Ciphertext& ct) {
    require(pub.n >= 7, ErrorKind::invalid_argument, "congruence windows need n >= 7");
    Integer inv;
    try {
        inv = nt::mod_inv(pub.e_a1, pub.e_a2);
    } catch (const Error& e) {
        fail(ErrorKind::inconsistent_key, std::string("e_A1 not invertible mod e_A2: ") + e.what());
    }
    CongruenceParams params;
    params.a = mod_floor(ct.c * inv, pub.e_a2);
    const Integer rest = ct.c - pub.e_a1 * params.a;
    require(divides(pub.e_a2, rest), ErrorKind::inconsistent_key, "C - e_A1 a is not divisible by e_A2");
    mpz_divexact(params.b.get_mpz_t(), rest.get_mpz_t(), pub.e_a2.get_mpz_t());
    params.window_u = pow2(pub.n - 6);
    params.window_v = 3 * pow2(pub.n - 7);
    return params;
}

JRange congruence_j_range(const PublicKey& pub, const Ciphertext& ct, const CongruenceParams& params) {
    (void)ct;
    const std::size_t n = pub.n;
    const auto& [a, b, wu, wv] = params;
    // 2^{4n} < a + e_A2 j < 2^{4n+1}
    const Integer u_lo = floor_div(pow2(4 * n) - a, pub.e_a2) + 1;
    const Integer u_hi = floor_div(pow2(4 * n + 1) - a - 1, pub.e_a2);
    // 2^{4n-4} < b - e_A1 j < 2^{4n-2}
    const Integer v_lo = floor_div(b - pow2(4 * n - 2), pub.e_a1) + 1;
    const Integer v_hi = floor_div(b - pow2(4 * n - 4) - 1, pub.e_a1);
    return {std::max(u_lo, v_lo), std::min(u_hi, v_hi)};
}

AttackReport congruence_bruteforce(const PublicKey& pub, const Ciphertext& ct, const Integer& j_budget) {
    const auto start = Clock::now();
    AttackReport report = make_report("congruence", pub.n);
    report.parameters = {{"budget", to_decimal(j_budget)}};

    const CongruenceParams params = congruence_params(pub, ct);
    const JRange range = congruence_j_range(pub, ct, params);
    report.diagnostics = {{"a", to_decimal(params.a)},
                          {"b", to_decimal(params.b)},
                          {"window_u", to_decimal(params.window_u)},
                          {"window_v", to_decimal(params.window_v)},
                          {"j_lo", to_decimal(range.lo)},
                          {"j_hi", to_decimal(range.hi)},
                          {"j_candidates", to_decimal(range.count())}};

    Integer scanned = 0;
    for (Integer j = range.lo; j <= range.hi && scanned < j_budget; ++j, ++scanned) {
        const Integer v_squared = params.b - pub.e_a1 * j;
        if (sgn(v_squared) < 0 || !nt::is_perfect_square(v_squared)) continue;
        const Integer v = nt::isqrt(v_squared);
        const Integer u = params.a + pub.e_a2 * j;
        if (!v_in_window(v, pub.n) || !decodes(u, v, pub.n)) continue;
        report.verdict = Verdict::recovered;
        report.recovered = {{"j", to_decimal(j)},
                            {"U", to_decimal(u)},
                            {"V", to_decimal(v)},
                            {"m1", to_decimal(u >> pub.n)},
                            {"m2", to_decimal(v >> pub.n)}};
        ++scanned;
        break;
    }
    report.diagnostics.emplace_back("scanned", to_decimal(scanned));
    report.diagnostics.emplace_back("budget_covers_window", range.count() <= j_budget ? "yes" : "no");
    report.elapsed_ms = ms_since(start);
    return report;
}

// ---- Coppersmith ------------------------------------------------------------

AttackReport coppersmith_feasibility(const PublicKey& pub, const std::optional<Integer>& d) {
    const auto start = Clock::now();
    const std::size_t n = pub.n;
    AttackReport report = make_report("coppersmith", n);
    report.parameters = {{"modulus", "e_A1"}, {"v_delta", "2"}, {"d_beta", "2/3"}, {"d_delta", "1"}};

    // x^2 - W = 0 mod e_A1 is solvable for roots below e_A1^{1/2}; the smallest V is just above 2^{2n-2}
    const bool v_feasible = pow2(4 * n - 4) < pub.e_a1;
    report.diagnostics.emplace_back("v_min_log2", std::to_string(2 * n - 2));
    report.diagnostics.emplace_back("sqrt_e_a1", to_decimal(nt::isqrt(pub.e_a1)));
    report.diagnostics.emplace_back("sqrt_e_a1_log2", fixed(log2_of(pub.e_a1) / 2));
    report.diagnostics.emplace_back("v_check", v_feasible ? "feasible" : "infeasible");

    // e x - 1 = 0 mod pq with pq > e_A1^{2/3}: roots below e_A1^{4/9} are reachable
    bool d_feasible = false;
    if (d) {
        d_feasible = !exceeds_d_floor(*d, pub.e_a1);
        report.diagnostics.emplace_back("d_source", "known-answer");
        report.diagnostics.emplace_back("d_log2", fixed(log2_of(*d)));
    } else {
        report.diagnostics.emplace_back("d_source", "keygen-floor");
    }
    report.diagnostics.emplace_back("d_bound_log2", fixed(log2_of(pub.e_a1) * 4.0 / 9.0));
    report.diagnostics.emplace_back("d_check", d_feasible ? "feasible" : "infeasible");

    report.verdict = (!v_feasible && !d_feasible) ? Verdict::infeasible_by_bounds : Verdict::not_recovered;
    report.elapsed_ms = ms_since(start);
    return report;
}

// ---- Euclidean division -----------------------------------------------------

AttackReport euclid_division_check(const PublicKey& pub, const Ciphertext& ct, const KnownAnswer& truth) {
    const auto start = Clock::now();
    AttackReport report = make_report("euclid", pub.n);
    const Integer q1 = floor_div(ct.c, pub.e_a1);
    const Integer q2 = floor_div(ct.c, pub.e_a2);
    const Integer v_squared = truth.v * truth.v;
    const bool u_differs = q1 != truth.u;
    const bool v_differs = q2 != v_squared;
    const bool conforming = pow2(4 * pub.n) < truth.u && truth.u < pow2(4 * pub.n + 1) && v_in_window(truth.v, pub.n) &&
                            truth.u * pub.e_a1 + v_squared * pub.e_a2 == ct.c;

    report.diagnostics = {{"floor_c_over_e_a1", to_decimal(q1)},
                          {"floor_c_over_e_a2", to_decimal(q2)},
                          {"u_differs", u_differs ? "yes" : "no"},
                          {"v_squared_differs", v_differs ? "yes" : "no"},
                          {"input", conforming ? "conforming" : "non-conforming"}};
    if (u_differs && v_differs) {
        report.verdict = Verdict::not_recovered;
    } else {
        report.verdict = Verdict::recovered;
        if (!u_differs) report.recovered.emplace_back("U", to_decimal(q1));
        if (!v_differs) report.recovered.emplace_back("V_squared", to_decimal(q2));
    }
    report.elapsed_ms = ms_since(start);
    return report;
}

// ---- lattice ----------------------------------------------------------------

LatticeBasis build_lattice(const PublicKey& pub, const Ciphertext& ct, const Integer& t) {
    require(t >= 1, ErrorKind::invalid_argument, "T must be >= 1");
    return LatticeBasis{{{1, 0, pub.e_a1 * t}, {0, 1, pub.e_a2 * t}, {0, 0, -ct.c * t}}};
}

std::size_t choose_t_exponent(const PublicKey& pub, const Ciphertext& ct) {
    require(ct.c >= 1, ErrorKind::invalid_argument, "C must be >= 1");
    const Integer target = 9 * pow2(12 * pub.n);
    // first guess from bit lengths, then settle exactly
    std::size_t k = bit_length(target) > bit_length(ct.c) ? bit_length(target) - bit_length(ct.c) : 0;
    while (k > 0 && (ct.c << (k - 1)) > target) --k;
    while ((ct.c << k) <= target) ++k;
    return k;
}

double gaussian_heuristic_log2(const Integer& c, const Integer& t) {
    return 0.5 * std::log2(3.0 / (2.0 * std::numbers::pi * std::numbers::e)) + (log2_of(c) + log2_of(t)) / 3.0;
}

AttackReport lattice_attack(const PublicKey& pub, const Ciphertext& ct, const std::optional<Integer>& t_in,
                            const std::optional<KnownAnswer>& truth) {
    const auto start = Clock::now();
    const std::size_t n = pub.n;
    const Integer t = t_in ? *t_in : choose_t(pub, ct);
    AttackReport report = make_report("lattice", n);
    report.parameters = {{"T_log2", fixed(log2_of(t))}, {"T", to_decimal(t)}, {"delta", "3/4"},
                         {"search_bound", std::to_string(kLatticeSearchBound)}};

    const LatticeBasis reduced = lll_reduce(build_lattice(pub, ct, t));

    std::vector<std::size_t> zero_rows;
    std::size_t t_rows = 0;
    for (std::size_t i = 0; i < reduced.size(); ++i) {
        const Integer& third = reduced.rows[i][2];
        if (sgn(third) == 0) zero_rows.push_back(i);
        if (abs(third) == t) ++t_rows;
        report.diagnostics.emplace_back("row" + std::to_string(i) + "_norm_log2",
                                        fixed(log2_of(squared_norm(reduced.rows[i])) / 2));
    }
    const double sigma_log2 = gaussian_heuristic_log2(ct.c, t);
    report.diagnostics.emplace_back("det_log2", fixed(log2_of(ct.c) + log2_of(t)));
    report.diagnostics.emplace_back("sigma_log2", fixed(sigma_log2));
    report.diagnostics.emplace_back("sigma", scientific(std::exp2(sigma_log2)));
    report.diagnostics.emplace_back("zero_third_rows", std::to_string(zero_rows.size()));
    report.diagnostics.emplace_back("t_rows", std::to_string(t_rows));
    for (std::size_t i = 0; i < reduced.size(); ++i) {
        std::string row;
        for (const Integer& x : reduced.rows[i]) row += (row.empty() ? "" : " ") + to_decimal(x);
        report.diagnostics.emplace_back("row" + std::to_string(i), row);
    }
    if (truth) {
        const Integer v_squared = truth->v * truth->v;
        const Integer norm = round_sqrt(truth->u * truth->u + v_squared * v_squared);
        report.diagnostics.emplace_back("v0_norm", to_decimal(norm));
        report.diagnostics.emplace_back("v0_norm_log2", fixed(log2_of(norm)));
        report.diagnostics.emplace_back("v0_in_lattice",
                                        truth->u * pub.e_a1 + v_squared * pub.e_a2 == ct.c ? "yes" : "no");
        report.diagnostics.emplace_back("v0_below_sigma", log2_of(norm) < sigma_log2 ? "yes" : "no");
    }

    // small combinations x r + y s of the rows with zero third coordinate
    const int bound = kLatticeSearchBound;
    std::size_t tried = 0;
    const IntVector zero3(3, Integer(0));
    const IntVector& r = zero_rows.size() > 0 ? reduced.rows[zero_rows[0]] : zero3;
    const IntVector& s = zero_rows.size() > 1 ? reduced.rows[zero_rows[1]] : zero3;
    for (int x = -bound; x <= bound && report.verdict != Verdict::recovered; ++x) {
        for (int y = -bound; y <= bound; ++y) {
            if (x == 0 && y == 0) continue;
            ++tried;
            const Integer u = x * r[0] + y * s[0];
            const Integer v_squared = x * r[1] + y * s[1];
            if (sgn(v_squared) < 0 || !nt::is_perfect_square(v_squared)) continue;
            const Integer v = nt::isqrt(v_squared);
            if (!v_in_window(v, n) || u * pub.e_a1 + v_squared * pub.e_a2 != ct.c || !decodes(u, v, n)) continue;
            report.verdict = Verdict::recovered;
            report.recovered = {{"U", to_decimal(u)}, {"V", to_decimal(v)},
                                {"m1", to_decimal(u >> n)}, {"m2", to_decimal(v >> n)}};
            break;
        }
    }
    report.diagnostics.emplace_back("combinations_tried", std::to_string(tried));
    report.elapsed_ms = ms_since(start);
    return report;
}

// ---- factoring ----------------------------------------------------------------

std::pair<Integer, Integer> factor_from_roots(const Integer& e_a1, const std::array<Integer, 4>& roots) {
    require(e_a1 > 1, ErrorKind::invalid_argument, "e_A1 must exceed 1");
    constexpr std::array<std::pair<int, int>, 4> kPairs{{{0, 2}, {0, 1}, {1, 3}, {2, 3}}};
    for (auto [i, j] : kPairs) {
        Integer g;
        const Integer sum = roots[i] + roots[j];
        mpz_gcd(g.get_mpz_t(), e_a1.get_mpz_t(), sum.get_mpz_t());
        if (g <= 1 || g >= e_a1) continue;
        // the divisors of p^2 q are 1, p, q, p^2, pq, p^2 q; only p has its square dividing e_A1
        const Integer cofactor = e_a1 / g;
        for (const Integer& cand : {g, cofactor, nt::isqrt(g), nt::isqrt(cofactor)}) {
            if (cand <= 1 || !divides(cand * cand, e_a1)) continue;
            const Integer q = e_a1 / (cand * cand);
            if (q > 1 && q != cand) return {cand, q};
        }
    }
    fail(ErrorKind::factoring_failure, "no cross pair of roots exposes a factor of e_A1");
}

}  // namespace aabeta::attacks
