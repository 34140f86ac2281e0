#include "aabeta/attacks.hpp"
#include "aabeta/numtheory.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>

using namespace aabeta;
using attacks::Verdict;

namespace {

struct Instance {
    KeyPair kp;
    EncryptionTrace enc;
};

Instance random_instance(std::size_t n, RandomSource& rng) {
    KeyPair kp = generate_keypair(n, rng);
    Bytes payload(capacity_bytes(n));
    for (auto& b : payload) b = static_cast<std::uint8_t>(rng.next_u64());
    auto enc = encrypt_with_ephemerals(kp.pub, encode(payload, n), sample_ephemerals(n, rng));
    return {std::move(kp), std::move(enc)};
}

}  // namespace

TEST_CASE("congruence parameters on the worked instance") {
    const PublicKey pub = fixture::keys().pub;
    const Ciphertext ct{fixture::c};
    const auto params = attacks::congruence_params(pub, ct);
    CHECK(params.a == mod_floor(fixture::c * nt::mod_inv(fixture::e_a1, fixture::e_a2), fixture::e_a2));
    CHECK(fixture::e_a1 * params.a + fixture::e_a2 * params.b == fixture::c);
    CHECK(divides(fixture::e_a2, fixture::u - params.a));
    const Integer j = (fixture::u - params.a) / fixture::e_a2;
    CHECK(j == 8691);
    CHECK(params.b - fixture::e_a1 * j == fixture::v_squared);
    CHECK(params.window_u == 1024);
    CHECK(params.window_v == 1536);

    const auto range = attacks::congruence_j_range(pub, ct, params);
    CHECK(range.lo <= j);
    CHECK(j <= range.hi);
}

TEST_CASE("congruence identity and windows on random instances") {
    for (std::size_t n : {8, 16, 32, 64}) {
        RandomSource rng(n * 3);
        for (int i = 0; i < 50; ++i) {
            const auto [kp, enc] = random_instance(n, rng);
            const auto params = attacks::congruence_params(kp.pub, enc.ct);
            const Integer diff = enc.u - params.a;
            CHECK(sgn(diff) >= 0);
            REQUIRE(divides(kp.pub.e_a2, diff));
            const Integer j = diff / kp.pub.e_a2;
            CHECK(params.b - kp.pub.e_a1 * j == enc.v * enc.v);
            CHECK(params.window_u == pow2(n - 6 > 0 ? n - 6 : 0));
            // window_u counts j values that certainly fit the U interval: e_A2 < 2^{3n+6}
            CHECK(params.window_u * kp.pub.e_a2 < pow2(4 * n));
            CHECK(floor_div(pow2(4 * n), kp.pub.e_a2) >= params.window_u);
            const auto range = attacks::congruence_j_range(kp.pub, enc.ct, params);
            CHECK(range.lo <= j);
            CHECK(j <= range.hi);
        }
    }
}

TEST_CASE("congruence brute force") {
    SUBCASE("full scan at n = 8") {
        RandomSource rng(88);
        for (int i = 0; i < 10; ++i) {
            const auto [kp, enc] = random_instance(8, rng);
            const auto report = attacks::congruence_bruteforce(kp.pub, enc.ct, Integer(1000000));
            CHECK(report.verdict == Verdict::recovered);
            CHECK(*report.recovered_value("U") == to_decimal(enc.u));
            CHECK(*report.recovered_value("V") == to_decimal(enc.v));
        }
    }
    SUBCASE("worked instance") {
        const auto report = attacks::congruence_bruteforce(fixture::keys().pub, Ciphertext{fixture::c}, 100000);
        CHECK(report.verdict == Verdict::recovered);
        CHECK(*report.recovered_value("j") == "8691");
        CHECK(*report.recovered_value("m1") == to_decimal(fixture::m1));
        CHECK(*report.recovered_value("m2") == to_decimal(fixture::m2));
        CHECK(*report.diagnostic("window_u") == "1024");
        CHECK(*report.diagnostic("window_v") == "1536");
        const Integer candidates(*report.diagnostic("j_candidates"));
        const auto exact = attacks::congruence_bruteforce(fixture::keys().pub, Ciphertext{fixture::c}, candidates);
        CHECK(exact.verdict == Verdict::recovered);
        const auto short_budget = attacks::congruence_bruteforce(fixture::keys().pub, Ciphertext{fixture::c}, 100);
        CHECK(short_budget.verdict == Verdict::not_recovered);
    }
    SUBCASE("n = 64 exceeds any practical budget") {
        RandomSource rng(64);
        const auto [kp, enc] = random_instance(64, rng);
        const auto report = attacks::congruence_bruteforce(kp.pub, enc.ct, 1000000);
        CHECK(report.verdict == Verdict::not_recovered);
        CHECK(*report.diagnostic("window_u") == to_decimal(pow2(58)));
        CHECK(*report.diagnostic("budget_covers_window") == "no");
    }
}

TEST_CASE("coppersmith feasibility") {
    RandomSource rng(17);
    for (std::size_t n : {8, 16, 32, 64}) {
        for (int i = 0; i < 20; ++i) {
            const KeyPair kp = generate_keypair(n, rng);
            const auto report = attacks::coppersmith_feasibility(kp.pub, kp.priv.d);
            CHECK(report.verdict == Verdict::infeasible_by_bounds);
            CHECK(*report.diagnostic("v_check") == "infeasible");
            CHECK(*report.diagnostic("d_check") == "infeasible");
            CHECK(attacks::coppersmith_feasibility(kp.pub).verdict == Verdict::infeasible_by_bounds);
        }
    }

    // weakened key: small d, e_A2 its inverse
    const KeyPair kp = generate_keypair(32, rng);
    const Integer pq = kp.priv.pq();
    Integer d = 65537;
    while (nt::ext_gcd(d, pq).g != 1) d += 2;
    CHECK_FALSE(exceeds_d_floor(d, kp.pub.e_a1));
    const PublicKey weak{32, kp.pub.e_a1, nt::mod_inv(d, pq)};
    const auto report = attacks::coppersmith_feasibility(weak, d);
    CHECK(*report.diagnostic("d_check") == "feasible");
    CHECK(report.verdict != Verdict::infeasible_by_bounds);

    const auto worked = attacks::coppersmith_feasibility(fixture::keys().pub, fixture::d);
    CHECK(*worked.diagnostic("v_check") == "infeasible");
    CHECK(*worked.diagnostic("sqrt_e_a1") == to_decimal(nt::isqrt(fixture::e_a1)));
    CHECK(nt::isqrt(fixture::e_a1) < pow2(30));
}

TEST_CASE("euclidean division does not reveal U or V^2") {
    const auto worked = attacks::euclid_division_check(fixture::keys().pub, Ciphertext{fixture::c},
                                                       {fixture::u, fixture::v});
    CHECK(worked.verdict == Verdict::not_recovered);
    CHECK(*worked.diagnostic("input") == "conforming");

    RandomSource rng(16);
    int held = 0;
    const KeyPair kp = generate_keypair(16, rng);
    for (int i = 0; i < 10000; ++i) {
        const EncodedMessage msg = encode(Bytes{static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(i >> 8)}, 16);
        const auto enc = encrypt_with_ephemerals(kp.pub, msg, sample_ephemerals(16, rng));
        if (floor_div(enc.ct.c, kp.pub.e_a1) != enc.u && floor_div(enc.ct.c, kp.pub.e_a2) != enc.v * enc.v) ++held;
    }
    CHECK(held == 10000);

    for (int i = 0; i < 200; ++i) {
        const auto [k, enc] = random_instance(32, rng);
        CHECK(attacks::euclid_division_check(k.pub, enc.ct, {enc.u, enc.v}).verdict == Verdict::not_recovered);
    }

    // C = U e_A1 with V = 0 is not a real ciphertext
    const Ciphertext crafted{fixture::u * fixture::e_a1};
    const auto degenerate = attacks::euclid_division_check(fixture::keys().pub, crafted, {fixture::u, 0});
    CHECK(*degenerate.diagnostic("u_differs") == "no");
    CHECK(*degenerate.diagnostic("input") == "non-conforming");
}

TEST_CASE("choose_T") {
    const PublicKey pub = fixture::keys().pub;
    const std::size_t k = attacks::choose_t_exponent(pub, Ciphertext{fixture::c});
    CHECK(fixture::c * pow2(k) > 9 * pow2(192));
    CHECK(fixture::c * pow2(k - 1) <= 9 * pow2(192));
    CHECK(k == 82);
    CHECK(attacks::choose_t_exponent(pub, Ciphertext{pow2(192)}) == 4);
    // larger C never needs a larger T
    std::size_t last = 1000;
    for (std::size_t bits = 1; bits < 250; bits += 7) {
        const std::size_t e = attacks::choose_t_exponent(pub, Ciphertext{pow2(bits) + 1});
        CHECK(e <= last);
        last = e;
    }
    CHECK(attacks::preset_t(16) == pow2(320));
}

TEST_CASE("lattice attack on the worked instance") {
    const auto report = attacks::lattice_attack(fixture::keys().pub, Ciphertext{fixture::c}, pow2(320),
                                                attacks::KnownAnswer{fixture::u, fixture::v});
    CHECK(report.verdict == Verdict::not_recovered);
    CHECK(*report.diagnostic("zero_third_rows") == "2");
    CHECK(*report.diagnostic("t_rows") == "1");
    CHECK(*report.diagnostic("v0_in_lattice") == "yes");
    CHECK(*report.diagnostic("v0_norm") == "35751905917344588937");
    CHECK(report.diagnostic("sigma").has_value());

    // (U, V^2, 1) M0 = (U, V^2, 0)
    const LatticeBasis m0 = attacks::build_lattice(fixture::keys().pub, Ciphertext{fixture::c}, pow2(320));
    const IntVector coeff{fixture::u, fixture::v_squared, 1};
    IntVector image(3, Integer(0));
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) image[c] += coeff[r] * m0.rows[r][c];
    CHECK(image == IntVector{fixture::u, fixture::v_squared, 0});
}

TEST_CASE("lattice attack toy runs and reports") {
    RandomSource rng(8);
    const auto [kp, enc] = random_instance(8, rng);
    const auto report = attacks::lattice_attack(kp.pub, enc.ct, std::nullopt, attacks::KnownAnswer{enc.u, enc.v});
    CHECK(report.attack == "lattice");
    CHECK(report.diagnostic("row0_norm_log2").has_value());
    CHECK(*report.diagnostic("v0_in_lattice") == "yes");
    if (report.verdict == Verdict::recovered) CHECK(*report.recovered_value("U") == to_decimal(enc.u));
}

TEST_CASE("factor_from_roots") {
    const std::array<Integer, 4> roots{318887097, 2489411338, 1427210551, 3597734792};
    Integer g;
    const Integer sum = roots[0] + roots[2];
    CHECK(sum == 1746097648);
    CHECK(Integer(62683) * 27856 == sum);
    mpz_gcd(g.get_mpz_t(), fixture::e_a1.get_mpz_t(), sum.get_mpz_t());
    CHECK(g == 62683);
    auto [p, q] = attacks::factor_from_roots(fixture::e_a1, roots);
    CHECK(p == 62683);
    CHECK(q == 62483);

    const auto toy = nt::four_roots(2, 9, 7, 11);
    std::tie(p, q) = attacks::factor_from_roots(539, toy);
    CHECK(p == 7);
    CHECK(q == 11);

    std::array<Integer, 4> shuffled{roots[3], roots[1], roots[0], roots[2]};
    std::tie(p, q) = attacks::factor_from_roots(fixture::e_a1, shuffled);
    CHECK(p == 62683);

    const std::array<Integer, 4> junk{1, 1, 1, 1};
    CHECK(error_kind([&] { attacks::factor_from_roots(fixture::e_a1, junk); }) == ErrorKind::factoring_failure);
}

TEST_CASE("factor_from_roots on random keys") {
    for (std::size_t n : {8, 16, 32}) {
        RandomSource rng(n + 900);
        for (int i = 0; i < 100; ++i) {
            const KeyPair kp = generate_keypair(n, rng);
            const Integer pq = kp.priv.pq();
            const Integer v = rng.below(pq);
            const Integer w = v * v % pq;
            const auto roots = nt::four_roots(nt::sqrt_mod_p_3mod4(w % kp.priv.p, kp.priv.p),
                                              nt::sqrt_mod_p_3mod4(w % kp.priv.q, kp.priv.q), kp.priv.p, kp.priv.q);
            if (w % kp.priv.p == 0 || w % kp.priv.q == 0) continue;
            const auto [p, q] = attacks::factor_from_roots(kp.pub.e_a1, roots);
            CHECK(p == kp.priv.p);
            CHECK(q == kp.priv.q);
        }
    }
}

TEST_CASE("report text and csv forms") {
    const auto report = attacks::congruence_bruteforce(fixture::keys().pub, Ciphertext{fixture::c}, 100000);
    const std::string text = report.to_text();
    CHECK(text.starts_with("attack: congruence\nn: 16\nverdict: recovered\n"));
    CHECK(attacks::AttackReport::from_text(text) == report);
    CHECK(attacks::AttackReport::csv_header() == "attack,n,verdict,budget,elapsed_ms,diagnostics");
    const std::string row = report.to_csv_row();
    CHECK(row.starts_with("congruence,16,recovered,100000,"));
    CHECK(attacks::parse_verdict("infeasible-by-bounds") == Verdict::infeasible_by_bounds);
    CHECK(error_kind([] { attacks::parse_verdict("maybe"); }) == ErrorKind::format_error);
}
