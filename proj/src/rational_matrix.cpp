#include "reltrace/rational_matrix.hpp"

#include <utility>

#include "reltrace/error.hpp"

namespace reltrace {

namespace {

struct Echelon {
    RationalMatrix reduced;              // reduced row echelon form
    std::vector<std::size_t> pivot_cols;
};

Echelon row_reduce(RationalMatrix m) {
    Echelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        const Rational inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        e.pivot_cols.push_back(col);
        ++row;
    }
    e.reduced = std::move(m);
    return e;
}

}  // namespace

RationalMatrix::RationalMatrix(const IntMatrix& m) : RationalMatrix(m.rows(), m.cols()) {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = Rational(m(i, j));
}

std::vector<Rational> RationalMatrix::col(std::size_t j) const {
    std::vector<Rational> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& x) const {
    if (x.size() != cols_) throw_invalid("complexes", "rational matrix-vector dimension mismatch");
    std::vector<Rational> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) y[i] += (*this)(i, j) * x[j];
    return y;
}

std::size_t rank(const RationalMatrix& m) { return row_reduce(m).pivot_cols.size(); }

std::vector<std::size_t> pivot_columns(const RationalMatrix& m) { return row_reduce(m).pivot_cols; }

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m) {
    const Echelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = -e.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve(const RationalMatrix& m, const std::vector<Rational>& b) {
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    const Echelon e = row_reduce(aug);
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.cols()) return std::nullopt;
    std::vector<Rational> x(m.cols());
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) x[e.pivot_cols[r]] = e.reduced(r, m.cols());
    return x;
}

RationalMatrix from_columns(std::size_t n, const std::vector<std::vector<Rational>>& vectors) {
    RationalMatrix m(n, vectors.size());
    for (std::size_t j = 0; j < vectors.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = vectors[j][i];
    return m;
}

}  // namespace reltrace
