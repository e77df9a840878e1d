#include "reltrace/integer_matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "reltrace/error.hpp"

namespace reltrace {

namespace {
constexpr const char* kModule = "fundamental_group";

Int abs_checked(Int a) {
    if (a == INT64_MIN) throw_failure(kModule, "integer overflow");
    return a < 0 ? -a : a;
}
}  // namespace

Int add_checked(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw_failure(kModule, "integer overflow");
    return r;
}

Int sub_checked(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw_failure(kModule, "integer overflow");
    return r;
}

Int mul_checked(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw_failure(kModule, "integer overflow");
    return r;
}

Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Int floor_mod(Int a, Int b) { return sub_checked(a, mul_checked(floor_div(a, b), b)); }

Exponents add(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = add_checked(a[i], b[i]);
    return r;
}

Exponents sub(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = sub_checked(a[i], b[i]);
    return r;
}

Exponents scale(const Exponents& a, Int s) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul_checked(a[i], s);
    return r;
}

bool is_zero(const Exponents& a) {
    return std::all_of(a.begin(), a.end(), [](Int x) { return x == 0; });
}

bool ColexLess::operator()(const Exponents& a, const Exponents& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols) {
    if (!rows.empty()) cols = rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw_invalid(kModule, "ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Int>& entries) {
    IntMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

std::vector<Int> IntMatrix::row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<Int> IntMatrix::col(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

void IntMatrix::set_col(std::size_t j, const std::vector<Int>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw_invalid(kModule, "matrix-vector dimension mismatch");
    std::vector<Int> y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0 && x[j] != 0) y[i] = add_checked(y[i], mul_checked((*this)(i, j), x[j]));
    return y;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Int x) { return x == 0; });
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

Int IntMatrix::trace() const {
    Int t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t = add_checked(t, (*this)(i, i));
    return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, Int k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(src, j) != 0) (*this)(dst, j) = add_checked((*this)(dst, j), mul_checked(k, (*this)(src, j)));
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, Int k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
        if ((*this)(i, src) != 0) (*this)(i, dst) = add_checked((*this)(i, dst), mul_checked(k, (*this)(i, src)));
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = mul_checked((*this)(r, j), -1);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    }
    os << "]";
    return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw_invalid(kModule, "matrix product dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) c(i, j) = add_checked(c(i, j), mul_checked(aik, b(k, j)));
        }
    return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw_invalid(kModule, "matrix sum dimension mismatch");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = add_checked(a(i, j), b(i, j));
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw_invalid(kModule, "matrix difference dimension mismatch");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = sub_checked(a(i, j), b(i, j));
    return c;
}

Int determinant(const IntMatrix& input) {
    if (input.rows() != input.cols()) throw_invalid(kModule, "determinant of a non-square matrix");
    const std::size_t n = input.rows();
    if (n == 0) return 1;
    IntMatrix m = input;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                // Bareiss step; the division is exact.
                const Int num = sub_checked(mul_checked(m(i, j), m(k, k)), mul_checked(m(i, k), m(k, j)));
                m(i, j) = num / prev;
            }
        prev = m(k, k);
    }
    return mul_checked(sign, m(n - 1, n - 1));
}

namespace {

using Big = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using BigRows = std::vector<std::vector<Big>>;

BigRows to_big(const IntMatrix& m) {
    BigRows out(m.rows(), std::vector<Big>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    return out;
}

IntMatrix from_big(const BigRows& b, std::size_t rows, std::size_t cols) {
    static const Big lo = std::numeric_limits<Int>::min();
    static const Big hi = std::numeric_limits<Int>::max();
    IntMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (b[i][j] < lo || b[i][j] > hi) throw_failure(kModule, "integer overflow");
            out(i, j) = static_cast<Int>(b[i][j]);
        }
    return out;
}

BigRows transposed(const BigRows& b, std::size_t cols) {
    BigRows out(cols, std::vector<Big>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) out[j][i] = b[i][j];
    return out;
}

// Nearest integer to a / b, b != 0.
Big nearest_quotient(const Big& a, const Big& b) {
    Big q = a / b;
    const Big r = a - q * b;
    if (2 * abs(r) > abs(b)) q += (r < 0) == (b < 0) ? 1 : -1;
    return q;
}

Big nearest(const BigRat& x) {
    return nearest_quotient(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

BigRat dot(const std::vector<BigRat>& a, const std::vector<BigRat>& b) {
    BigRat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void axpy(std::vector<Big>& dst, const std::vector<Big>& src, const Big& k) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= k * src[i];
}

// Incremental LLL (delta = 3/4) on rows of X, visited in the order
// [kernel rows rank.., then rank-1 down to 0]. Size reduction adds earlier
// positions to later ones, i.e. higher-index rows to lower-index rows, which
// keeps U M V = D once mirrored on Y: X[a] -= q X[b] pairs with
// Y[b] += q (d_b / d_a) Y[a]. Swaps stay inside runs of equal d, where
// they pair with swapping Y[a] and Y[b]. Kernel rows need no mirror.
void blocked_lll(BigRows& X, BigRows& Y, const std::vector<Big>& d) {
    const std::size_t rank = d.size();
    std::vector<std::size_t> order;
    for (std::size_t i = rank; i < X.size(); ++i) order.push_back(i);
    for (std::size_t i = rank; i-- > 0;) order.push_back(i);
    const std::size_t n = order.size();
    if (n < 2) return;
    auto block = [&](std::size_t i) -> Big { return i < rank ? d[i] : Big(0); };

    std::vector<std::vector<BigRat>> mu(n, std::vector<BigRat>(n, BigRat(0)));
    std::vector<BigRat> B(n);
    {
        std::vector<std::vector<BigRat>> star;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<BigRat> v(X[order[i]].begin(), X[order[i]].end());
            const std::vector<BigRat> orig = v;
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = dot(orig, star[j]) / B[j];
                for (std::size_t k = 0; k < v.size(); ++k) v[k] -= mu[i][j] * star[j][k];
            }
            B[i] = dot(v, v);
            star.push_back(std::move(v));
        }
    }

    auto reduce = [&](std::size_t k, std::size_t l) {
        const Big q = nearest(mu[k][l]);
        if (q == 0) return;
        const std::size_t a = order[k], b = order[l];
        axpy(X[a], X[b], q);
        if (a < rank && b < rank) axpy(Y[b], Y[a], -q * (d[b] / d[a]));
        mu[k][l] -= q;
        for (std::size_t i = 0; i < l; ++i) mu[k][i] -= q * mu[l][i];
    };

    const BigRat delta(3, 4);
    std::size_t k = 1;
    while (k < n) {
        reduce(k, k - 1);
        const std::size_t a = order[k], b = order[k - 1];
        if (block(a) == block(b) && B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            std::swap(X[a], X[b]);
            if (a < rank) std::swap(Y[a], Y[b]);
            const BigRat m = mu[k][k - 1];
            const BigRat Bn = B[k] + m * m * B[k - 1];
            mu[k][k - 1] = m * B[k - 1] / Bn;
            B[k] = B[k - 1] * B[k] / Bn;
            B[k - 1] = Bn;
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
            for (std::size_t i = k + 1; i < n; ++i) {
                const BigRat t = mu[i][k];
                mu[i][k] = mu[i][k - 1] - m * t;
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
            }
            k = std::max<std::size_t>(k - 1, 1);
        } else {
            for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
            ++k;
        }
    }
}
}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    // Elimination runs on unbounded integers; the transforms are then
    // shortened modulo the kernels, and only the results must fit in Int.
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    BigRows D = to_big(m);
    BigRows U = to_big(IntMatrix::identity(r));
    BigRows Vt = to_big(IntMatrix::identity(c));  // rows of Vt are the columns of V
    SmithForm out;

    auto swap_r = [&](std::size_t a, std::size_t b) {
        std::swap(D[a], D[b]);
        std::swap(U[a], U[b]);
    };
    auto swap_c = [&](std::size_t a, std::size_t b) {
        for (auto& row : D) std::swap(row[a], row[b]);
        std::swap(Vt[a], Vt[b]);
    };
    // row[dst] -= k row[src], col[dst] -= k col[src]
    auto subrow = [&](std::size_t dst, std::size_t src, const Big& k) {
        axpy(D[dst], D[src], k);
        axpy(U[dst], U[src], k);
    };
    auto subcol = [&](std::size_t dst, std::size_t src, const Big& k) {
        for (auto& row : D) row[dst] -= k * row[src];
        axpy(Vt[dst], Vt[src], k);
    };

    for (std::size_t t = 0; t < std::min(r, c); ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pi = r, pj = c;
        Big best = 0;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j)
                if (D[i][j] != 0 && (best == 0 || abs(D[i][j]) < best)) {
                    best = abs(D[i][j]);
                    pi = i;
                    pj = j;
                }
        if (best == 0) break;
        swap_r(t, pi);
        swap_c(t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i)
                if (D[i][t] != 0) {
                    subrow(i, t, nearest_quotient(D[i][t], D[t][t]));
                    if (D[i][t] != 0) clean = false;
                }
            for (std::size_t j = t + 1; j < c; ++j)
                if (D[t][j] != 0) {
                    subcol(j, t, nearest_quotient(D[t][j], D[t][t]));
                    if (D[t][j] != 0) clean = false;
                }
            if (!clean) {
                // A remainder survived: move the smallest one into the pivot.
                std::size_t bi = t, bj = t;
                Big b = abs(D[t][t]);
                for (std::size_t i = t + 1; i < r; ++i)
                    if (D[i][t] != 0 && abs(D[i][t]) < b) { b = abs(D[i][t]); bi = i; bj = t; }
                for (std::size_t j = t + 1; j < c; ++j)
                    if (D[t][j] != 0 && abs(D[t][j]) < b) { b = abs(D[t][j]); bi = t; bj = j; }
                swap_r(t, bi);
                swap_c(t, bj);
                continue;
            }
            // Divisibility: the pivot must divide the whole trailing block.
            std::size_t bad = r;
            for (std::size_t i = t + 1; i < r && bad == r; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (D[i][j] % D[t][t] != 0) { bad = i; break; }
            if (bad == r) break;
            subrow(t, bad, -1);
        }
        if (D[t][t] < 0) {
            for (auto& x : D[t]) x = -x;
            for (auto& x : U[t]) x = -x;
        }
        out.rank = t + 1;
    }

    // Elimination lets U and V grow far past what the factorization needs.
    std::vector<Big> d;
    for (std::size_t i = 0; i < out.rank; ++i) d.push_back(D[i][i]);
    blocked_lll(U, Vt, d);
    blocked_lll(Vt, U, d);

    out.U = from_big(U, r, r);
    out.D = from_big(D, r, c);
    out.V = from_big(transposed(Vt, c), c, c);
    for (std::size_t i = 0; i < out.rank; ++i) out.invariant_factors.push_back(out.D(i, i));
    return out;
}

std::vector<Int> normalize_torsion(const std::vector<Int>& orders) {
    std::vector<Int> diag;
    for (Int o : orders) {
        if (o == 0) throw_invalid(kModule, "torsion order 0");
        diag.push_back(abs_checked(o));
    }
    const SmithForm s = smith_normal_form(IntMatrix::diagonal(diag));
    std::vector<Int> out;
    for (Int f : s.invariant_factors)
        if (f != 1) out.push_back(f);
    return out;
}

Lattice::Lattice(std::size_t dim, const std::vector<Exponents>& generators) : dim_(dim) {
    std::vector<Exponents> rows;
    for (const auto& g : generators) {
        if (g.size() != dim) throw_invalid(kModule, "lattice generator has wrong length");
        if (!reltrace::is_zero(g)) rows.push_back(g);
    }
    auto axpy = [](Exponents& dst, const Exponents& src, Int k) {
        if (k == 0) return;
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = add_checked(dst[i], mul_checked(k, src[i]));
    };

    std::size_t next = 0;
    for (std::size_t col = 0; col < dim && next < rows.size(); ++col) {
        // Euclid down the column until a single nonzero entry remains.
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = next; i < rows.size(); ++i)
                if (rows[i][col] != 0 && (best == rows.size() || abs_checked(rows[i][col]) < abs_checked(rows[best][col])))
                    best = i;
            if (best == rows.size()) break;
            std::swap(rows[next], rows[best]);
            bool others = false;
            for (std::size_t i = next + 1; i < rows.size(); ++i)
                if (rows[i][col] != 0) {
                    axpy(rows[i], rows[next], -(rows[i][col] / rows[next][col]));
                    if (rows[i][col] != 0) others = true;
                }
            if (!others) break;
        }
        if (rows[next][col] == 0) continue;
        if (rows[next][col] < 0) rows[next] = scale(rows[next], -1);
        for (std::size_t i = 0; i < next; ++i) axpy(rows[i], rows[next], -floor_div(rows[i][col], rows[next][col]));
        pivots_.push_back(col);
        ++next;
        // Drop rows that became zero.
        rows.erase(std::remove_if(rows.begin() + static_cast<std::ptrdiff_t>(next), rows.end(),
                                  [](const Exponents& v) { return reltrace::is_zero(v); }),
                   rows.end());
    }
    rows.resize(next);
    basis_ = std::move(rows);
}

Exponents Lattice::reduce(Exponents v) const {
    if (v.size() != dim_) throw_invalid(kModule, "vector length does not match lattice dimension");
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const std::size_t p = pivots_[i];
        const Int q = floor_div(v[p], basis_[i][p]);
        if (q == 0) continue;
        for (std::size_t j = p; j < dim_; ++j) v[j] = sub_checked(v[j], mul_checked(q, basis_[i][j]));
    }
    return v;
}

bool Lattice::contains(const Exponents& v) const { return reltrace::is_zero(reduce(v)); }

std::optional<Int> Lattice::index() const {
    if (basis_.size() != dim_) return std::nullopt;
    Int idx = 1;
    for (std::size_t i = 0; i < basis_.size(); ++i) idx = mul_checked(idx, basis_[i][pivots_[i]]);
    return idx;
}

std::vector<std::size_t> Lattice::free_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < dim_; ++c)
        if (std::find(pivots_.begin(), pivots_.end(), c) == pivots_.end()) out.push_back(c);
    return out;
}

Int Lattice::pivot_modulus(std::size_t column) const {
    for (std::size_t i = 0; i < pivots_.size(); ++i)
        if (pivots_[i] == column) return basis_[i][column];
    return 0;
}

Lattice Lattice::plus(const std::vector<Exponents>& more) const {
    std::vector<Exponents> gens = basis_;
    gens.insert(gens.end(), more.begin(), more.end());
    return Lattice(dim_, gens);
}

}  // namespace reltrace
