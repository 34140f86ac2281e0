#include "aabeta/attacks.hpp"
#include "aabeta/lll.hpp"
#include "fixtures.hpp"
#include "lll_oracle.hpp"

#include <doctest.h>

using namespace aabeta;
using namespace lll_oracle;

TEST_CASE("identity basis is already reduced") {
    const LatticeBasis id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    CHECK(lll_reduce(id) == id);
}

TEST_CASE("small hand basis") {
    const LatticeBasis b{{{1, 1, 0}, {0, 1, 0}, {0, 0, 7}}};
    const LatticeBasis r = lll_reduce(b);
    CHECK(squared_norm(r.rows[0]) <= 2);
    CHECK(is_lll_reduced(r, kDefaultLllDelta));
    CHECK(abs(r.determinant()) == 7);
}

TEST_CASE("rejects dependent rows and bad delta") {
    const LatticeBasis dep{{{1, 2, 3}, {2, 4, 6}, {0, 0, 1}}};
    CHECK(error_kind([&] { lll_reduce(dep); }) == ErrorKind::invalid_argument);
    const LatticeBasis id{{{1, 0}, {0, 1}}};
    CHECK(error_kind([&] { lll_reduce(id, Rational(1, 4)); }) == ErrorKind::invalid_argument);
    CHECK(error_kind([&] { lll_reduce(id, Rational(1)); }) == ErrorKind::invalid_argument);
}

TEST_CASE("determinant") {
    const LatticeBasis b{{{2, 0, 0}, {1, 3, 0}, {4, 5, 6}}};
    CHECK(b.determinant() == 36);
    const LatticeBasis swap{{{0, 1}, {1, 0}}};
    CHECK(swap.determinant() == -1);
}

TEST_CASE("500 random 3x3 bases with 128-bit entries") {
    RandomSource rng(128);
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
        if (!is_lll_reduced(r, kDefaultLllDelta)) FAIL("not reduced at basis " << tested);
        CHECK(same_lattice(b, r));
    }
}

TEST_CASE("random bases in higher dimension and other delta") {
    RandomSource rng(5);
    for (std::size_t dim : {2, 4, 6, 8}) {
        for (int t = 0; t < 20; ++t) {
            LatticeBasis b;
            for (std::size_t i = 0; i < dim; ++i) {
                IntVector row;
                for (std::size_t j = 0; j < dim; ++j) row.push_back(rng.bits(40) - pow2(39));
                b.rows.push_back(row);
            }
            if (sgn(b.determinant()) == 0) continue;
            const Rational delta(99, 100);
            const LatticeBasis r = lll_reduce(b, delta);
            CHECK(is_lll_reduced(r, delta));
            CHECK(same_lattice(b, r));
        }
    }
}

TEST_CASE("worked lattice reduces to the reference matrix") {
    const PublicKey pub = fixture::keys().pub;
    const Integer t = pow2(320);
    const LatticeBasis m0 = attacks::build_lattice(pub, Ciphertext{fixture::c}, t);
    CHECK(m0.rows[0] == IntVector{1, 0, fixture::e_a1 * t});
    CHECK(m0.rows[1] == IntVector{0, 1, fixture::e_a2 * t});
    CHECK(m0.rows[2] == IntVector{0, 0, -fixture::c * t});
    CHECK(m0.determinant() == -fixture::c * t);

    const LatticeBasis m1 = lll_reduce(m0);
    const LatticeBasis expected{{{Integer("-4106878163802480"), Integer("245505609868187"), 0},
                                 {Integer("247367271832221073"), Integer("4155888875658045598"), 0},
                                 {Integer("-1118395942494397"), Integer("66856738131713"), t}}};
    CHECK(m1 == expected);
    CHECK(is_lll_reduced(m1, kDefaultLllDelta));
    CHECK(abs(m1.determinant()) == fixture::c * t);
}
