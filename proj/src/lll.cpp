#include "aabeta/lll.hpp"
#include "aabeta/error.hpp"

#include <utility>

namespace aabeta {

namespace {

Integer round_nearest(const Rational& x) {
    // floor(x + 1/2) = floor((2 num + den) / (2 den))
    return floor_div(2 * x.get_num() + x.get_den(), 2 * x.get_den());
}

class Reducer {
public:
    Reducer(std::vector<IntVector> rows, Rational delta) : b_(std::move(rows)), delta_(std::move(delta)) {
        const std::size_t k = b_.size();
        mu_.assign(k, std::vector<Rational>(k));
        bstar_norm_.assign(k, Rational(0));
        gram_schmidt();
    }

    std::vector<IntVector> run() {
        const std::size_t k_max = b_.size();
        std::size_t k = 1;
        while (k < k_max) {
            size_reduce(k, k - 1);
            const Rational& m = mu_[k][k - 1];
            if (bstar_norm_[k] < (delta_ - m * m) * bstar_norm_[k - 1]) {
                swap(k);
                if (k > 1) --k;
            } else {
                for (std::size_t l = k - 1; l-- > 0;) size_reduce(k, l);
                ++k;
            }
        }
        return std::move(b_);
    }

private:
    void gram_schmidt() {
        const std::size_t k = b_.size();
        const std::size_t dim = b_.front().size();
        std::vector<std::vector<Rational>> bstar(k, std::vector<Rational>(dim));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t c = 0; c < dim; ++c) bstar[i][c] = b_[i][c];
            for (std::size_t j = 0; j < i; ++j) {
                Rational num = 0;
                for (std::size_t c = 0; c < dim; ++c) num += b_[i][c] * bstar[j][c];
                mu_[i][j] = num / bstar_norm_[j];
                for (std::size_t c = 0; c < dim; ++c) bstar[i][c] -= mu_[i][j] * bstar[j][c];
            }
            Rational norm = 0;
            for (std::size_t c = 0; c < dim; ++c) norm += bstar[i][c] * bstar[i][c];
            require(sgn(norm) != 0, ErrorKind::invalid_argument, "basis rows are linearly dependent");
            bstar_norm_[i] = norm;
        }
    }

    void size_reduce(std::size_t k, std::size_t l) {
        if (2 * abs(mu_[k][l]) <= 1) return;
        const Integer r = round_nearest(mu_[k][l]);
        for (std::size_t c = 0; c < b_[k].size(); ++c) b_[k][c] -= r * b_[l][c];
        mu_[k][l] -= r;
        for (std::size_t i = 0; i < l; ++i) mu_[k][i] -= r * mu_[l][i];
    }

    void swap(std::size_t k) {
        std::swap(b_[k], b_[k - 1]);
        for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu_[k][j], mu_[k - 1][j]);

        const Rational m = mu_[k][k - 1];
        const Rational merged = bstar_norm_[k] + m * m * bstar_norm_[k - 1];
        mu_[k][k - 1] = m * bstar_norm_[k - 1] / merged;
        bstar_norm_[k] = bstar_norm_[k - 1] * bstar_norm_[k] / merged;
        bstar_norm_[k - 1] = merged;
        for (std::size_t i = k + 1; i < b_.size(); ++i) {
            const Rational t = mu_[i][k];
            mu_[i][k] = mu_[i][k - 1] - m * t;
            mu_[i][k - 1] = t + mu_[k][k - 1] * mu_[i][k];
        }
    }

    std::vector<IntVector> b_;
    Rational delta_;
    std::vector<std::vector<Rational>> mu_;
    std::vector<Rational> bstar_norm_;
};

}  // namespace

Integer dot(const IntVector& a, const IntVector& b) {
    require(a.size() == b.size(), ErrorKind::invalid_argument, "vector length mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Integer LatticeBasis::determinant() const {
    const std::size_t k = size();
    require(k > 0 && dimension() == k, ErrorKind::invalid_argument, "determinant needs a square basis");
    std::vector<IntVector> a = rows;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        if (sgn(a[i][i]) == 0) {
            std::size_t pivot = i + 1;
            while (pivot < k && sgn(a[pivot][i]) == 0) ++pivot;
            if (pivot == k) return 0;
            std::swap(a[i], a[pivot]);
            sign = -sign;
        }
        for (std::size_t r = i + 1; r < k; ++r) {
            for (std::size_t c = i + 1; c < k; ++c) {
                Integer v = a[r][c] * a[i][i] - a[r][i] * a[i][c];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[r][c] = std::move(v);
            }
        }
        prev = a[i][i];
    }
    return sign * a[k - 1][k - 1];
}

LatticeBasis lll_reduce(const LatticeBasis& basis, const Rational& delta) {
    require(basis.size() > 0, ErrorKind::invalid_argument, "empty basis");
    require(Rational(1, 4) < delta && delta < 1, ErrorKind::invalid_argument, "delta must lie in (1/4, 1)");
    for (const auto& row : basis.rows)
        require(row.size() == basis.dimension(), ErrorKind::invalid_argument, "ragged basis");
    require(basis.size() <= basis.dimension(), ErrorKind::invalid_argument, "more rows than dimension");
    if (basis.size() == 1) {
        require(sgn(squared_norm(basis.rows.front())) != 0, ErrorKind::invalid_argument, "zero basis vector");
        return basis;
    }
    return LatticeBasis{Reducer(basis.rows, delta).run()};
}

}  // namespace aabeta
