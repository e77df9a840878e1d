#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace reltrace {

using Int = std::int64_t;

/// Exponent vector of an element of a finitely generated abelian group,
/// expressed in the coordinates of its presentation's generators.
using Exponents = std::vector<Int>;

// Overflow-checked arithmetic; throws Error(ComputationFailure) on overflow.
Int add_checked(Int a, Int b);
Int sub_checked(Int a, Int b);
Int mul_checked(Int a, Int b);
Int floor_div(Int a, Int b);
Int floor_mod(Int a, Int b);

Exponents add(const Exponents& a, const Exponents& b);
Exponents sub(const Exponents& a, const Exponents& b);
Exponents scale(const Exponents& a, Int s);
bool is_zero(const Exponents& a);

/// Colexicographic order: the last coordinate is most significant. Class
/// lists then read 1, a, a^2, b, ab, a^2b.
struct ColexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols = 0);
    static IntMatrix diagonal(const std::vector<Int>& entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Int> row(std::size_t i) const;
    std::vector<Int> col(std::size_t j) const;
    void set_col(std::size_t j, const std::vector<Int>& v);

    IntMatrix transpose() const;
    /// M * x for a column vector x.
    std::vector<Int> apply(const std::vector<Int>& x) const;

    bool is_zero() const;
    bool is_identity() const;
    Int trace() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += k * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, Int k);
    /// col[dst] += k * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, Int k);
    void negate_row(std::size_t r);

    std::string to_string() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
Int determinant(const IntMatrix& m);

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_r, d_i > 0.
struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    std::size_t rank = 0;
    std::vector<Int> invariant_factors;  // the r nonzero diagonal entries of D
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Invariant factors of the finite abelian group Z/t_1 + ... + Z/t_k in
/// canonical divisibility-chain form, with factors equal to 1 dropped.
std::vector<Int> normalize_torsion(const std::vector<Int>& orders);

/// Sublattice of Z^n kept in row Hermite normal form. Reduction modulo the
/// lattice yields a canonical coset representative.
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(std::size_t dim) : dim_(dim) {}
    Lattice(std::size_t dim, const std::vector<Exponents>& generators);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return basis_.size(); }
    const std::vector<Exponents>& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    Exponents reduce(Exponents v) const;
    bool contains(const Exponents& v) const;
    /// |Z^n / L| when L has full rank.
    std::optional<Int> index() const;
    /// Columns not carrying a pivot: free directions of Z^n / L.
    std::vector<std::size_t> free_columns() const;
    /// Pivot entry for a pivot column, 0 otherwise.
    Int pivot_modulus(std::size_t column) const;

    Lattice plus(const std::vector<Exponents>& more) const;

    friend bool operator==(const Lattice&, const Lattice&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Exponents> basis_;
    std::vector<std::size_t> pivots_;
};

}  // namespace reltrace
