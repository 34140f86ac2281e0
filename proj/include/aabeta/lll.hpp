#pragma once

#include "aabeta/integer.hpp"

#include <cstddef>
#include <vector>

namespace aabeta {

using IntVector = std::vector<Integer>;

/// Integer lattice basis in row-vector convention: each row is a basis vector.
struct LatticeBasis {
    std::vector<IntVector> rows;

    std::size_t size() const { return rows.size(); }
    std::size_t dimension() const { return rows.empty() ? 0 : rows.front().size(); }

    /// Exact determinant of a square basis (fraction-free Bareiss elimination).
    Integer determinant() const;

    friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;
};

Integer dot(const IntVector& a, const IntVector& b);

inline Integer squared_norm(const IntVector& v) { return dot(v, v); }

inline const Rational kDefaultLllDelta{3, 4};

/// LLL reduction with exact rational Gram-Schmidt data. The result is
/// size-reduced (|mu_ij| <= 1/2) and satisfies the Lovasz condition with the
/// given delta in (1/4, 1). Throws invalid_argument for dependent rows.
LatticeBasis lll_reduce(const LatticeBasis& basis, const Rational& delta = kDefaultLllDelta);

}  // namespace aabeta
