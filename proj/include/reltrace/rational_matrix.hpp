#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <vector>

#include "reltrace/integer_matrix.hpp"

namespace reltrace {

using Rational = boost::multiprecision::cpp_rational;

/// Dense matrix over Q, used for rational homology and rank computations.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    explicit RationalMatrix(const IntMatrix& m);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Rational> col(std::size_t j) const;
    std::vector<Rational> apply(const std::vector<Rational>& x) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

std::size_t rank(const RationalMatrix& m);

/// Pivot columns of the reduced row echelon form: the leftmost maximal
/// independent set of columns.
std::vector<std::size_t> pivot_columns(const RationalMatrix& m);

/// Basis (as column vectors) of the null space of m.
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m);

/// Some solution of m x = b, if one exists.
std::optional<std::vector<Rational>> solve(const RationalMatrix& m, const std::vector<Rational>& b);

/// Columns of `vectors` (each of length n) assembled into an n x k matrix.
RationalMatrix from_columns(std::size_t n, const std::vector<std::vector<Rational>>& vectors);

}  // namespace reltrace
