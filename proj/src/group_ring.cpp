#include "reltrace/group_ring.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <utility>

#include "reltrace/error.hpp"

namespace reltrace {

namespace {

constexpr const char* kModule = "shadow_algebra";

// ---------------------------------------------------------------- arithmetic mod 2^61 - 1

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;
__extension__ typedef unsigned __int128 Wide;

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b) {
    const Wide p = static_cast<Wide>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
    std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
    std::uint64_t r = lo + hi;
    if (r >= kPrime) r -= kPrime;
    return r;
}

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    if (r >= kPrime) r -= kPrime;
    return r;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mod_mul(r, a);
        a = mod_mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_inv(std::uint64_t a) { return mod_pow(a, kPrime - 2); }

std::uint64_t to_mod(Int c) {
    const Int r = c % static_cast<Int>(kPrime);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<Int>(kPrime) : r);
}

Int symmetric_lift(std::uint64_t v) {
    return v > kPrime / 2 ? -static_cast<Int>(kPrime - v) : static_cast<Int>(v);
}

// Row reduction in place; returns pivot columns. `limit` bounds the columns
// eligible as pivots (an augmented column beyond it signals inconsistency).
std::vector<std::size_t> mod_row_reduce(std::vector<std::vector<std::uint64_t>>& m, std::size_t limit) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    const std::size_t ncols = m.empty() ? 0 : m.front().size();
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && m[p][col] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        const std::uint64_t inv = mod_inv(m[row][col]);
        for (std::size_t j = col; j < ncols; ++j) m[row][j] = mod_mul(m[row][j], inv);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            const std::uint64_t f = m[i][col];
            for (std::size_t j = col; j < ncols; ++j)
                if (m[row][j] != 0) m[i][j] = mod_sub(m[i][j], mod_mul(f, m[row][j]));
        }
        pivots.push_back(col);
        ++row;
        if (col >= limit) break;
    }
    return pivots;
}

void check_same_group(const AbelianStructure& a, const AbelianStructure& b, const char* what) {
    if (&a != &b && a.num_generators() != b.num_generators())
        throw_invalid(kModule, std::string(what) + ": group mismatch");
}

bool twists_agree(const AbelianStructure& g, const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (!g.relations().contains(sub(a.col(j), b.col(j)))) return false;
    return true;
}

}  // namespace

// ---------------------------------------------------------------- GroupRingElement

GroupRingElement GroupRingElement::monomial(Exponents g, Int coefficient) {
    GroupRingElement x;
    x.add_term(g, coefficient);
    return x;
}

Int GroupRingElement::coefficient(const Exponents& g) const {
    const auto it = terms_.find(g);
    return it == terms_.end() ? 0 : it->second;
}

GroupRingElement& GroupRingElement::add_term(const Exponents& g, Int c) {
    if (c == 0) return *this;
    auto [it, inserted] = terms_.try_emplace(g, c);
    if (!inserted) {
        it->second = add_checked(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
    for (const auto& [g, c] : o.terms_) add_term(g, c);
    return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
    for (const auto& [g, c] : o.terms_) add_term(g, sub_checked(0, c));
    return *this;
}

GroupRingElement operator-(const GroupRingElement& a) {
    GroupRingElement r;
    for (const auto& [g, c] : a.terms_) r.add_term(g, sub_checked(0, c));
    return r;
}

GroupRingElement operator*(Int k, const GroupRingElement& a) {
    GroupRingElement r;
    for (const auto& [g, c] : a.terms_) r.add_term(g, mul_checked(k, c));
    return r;
}

Int augmentation(const GroupRingElement& x) {
    Int s = 0;
    for (const auto& [g, c] : x.terms()) s = add_checked(s, c);
    return s;
}

GroupRingElement multiply(const AbelianStructure& group, const GroupRingElement& a, const GroupRingElement& b) {
    GroupRingElement r;
    for (const auto& [g, c] : a.terms())
        for (const auto& [h, d] : b.terms()) r.add_term(group.reduce(add(g, h)), mul_checked(c, d));
    return r;
}

GroupRingElement map_elements(const IntMatrix& hom, const AbelianStructure& target, const GroupRingElement& x) {
    GroupRingElement r;
    for (const auto& [g, c] : x.terms()) r.add_term(target.reduce(hom.apply(g)), c);
    return r;
}

GroupRingElement from_terms(const AbelianStructure& group, const std::vector<std::pair<Int, Word>>& terms) {
    GroupRingElement r;
    for (const auto& [c, w] : terms) r.add_term(group.element(w), c);
    return r;
}

std::string format(const AbelianStructure& group, const GroupRingElement& x) {
    if (x.is_zero()) return "0";
    const bool multi = std::any_of(group.generator_names().begin(), group.generator_names().end(),
                                   [](const std::string& s) { return s.size() != 1; });
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : x.terms()) {
        const Int mag = c < 0 ? -c : c;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        const bool unit = is_zero(g);
        if (unit) {
            os << mag;
        } else {
            if (mag != 1) os << mag << (multi ? "*" : "");
            os << group.format(g);
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- GroupRingMatrix

GroupRingMatrix::GroupRingMatrix(GroupPtr group, std::size_t rows, std::size_t cols)
    : GroupRingMatrix(group, rows, cols, IntMatrix::identity(group->num_generators())) {}

GroupRingMatrix::GroupRingMatrix(GroupPtr group, std::size_t rows, std::size_t cols, IntMatrix twist)
    : group_(std::move(group)), rows_(rows), cols_(cols), twist_(std::move(twist)), entries_(rows * cols) {
    const std::size_t n = group_->num_generators();
    if (twist_.rows() != n || twist_.cols() != n) throw_invalid(kModule, "twist matrix has the wrong shape");
}

GroupRingMatrix GroupRingMatrix::identity(GroupPtr group, std::size_t n) {
    GroupRingMatrix m(group, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = GroupRingElement::monomial(group->identity());
    return m;
}

std::vector<GroupRingElement> GroupRingMatrix::col(std::size_t j) const {
    std::vector<GroupRingElement> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

void GroupRingMatrix::set_col(std::size_t j, const std::vector<GroupRingElement>& v) {
    if (v.size() != rows_) throw_invalid(kModule, "column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

GroupRingMatrix GroupRingMatrix::mapped(const IntMatrix& hom, GroupPtr target, IntMatrix twist) const {
    GroupRingMatrix r(target, rows_, cols_, std::move(twist));
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = map_elements(hom, *target, entries_[k]);
    return r;
}

GroupRingMatrix GroupRingMatrix::with_twist(IntMatrix twist) const {
    GroupRingMatrix r = *this;
    if (twist.rows() != twist_.rows() || twist.cols() != twist_.cols())
        throw_invalid(kModule, "twist matrix has the wrong shape");
    r.twist_ = std::move(twist);
    return r;
}

IntMatrix GroupRingMatrix::augmented() const {
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = augmentation((*this)(i, j));
    return m;
}

bool GroupRingMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const GroupRingElement& e) { return e.is_zero(); });
}

bool GroupRingMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    const GroupRingElement one = GroupRingElement::monomial(group_->identity());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? one : GroupRingElement{})) return false;
    return true;
}

GroupRingMatrix operator*(const GroupRingMatrix& m, const GroupRingMatrix& n) {
    if (m.cols_ != n.rows_) throw_invalid(kModule, "group-ring matrix product dimension mismatch");
    check_same_group(*m.group_, *n.group_, "group-ring matrix product");
    const AbelianStructure& g = *m.group_;
    GroupRingMatrix r(m.group_, m.rows_, n.cols_, m.twist_ * n.twist_);
    for (std::size_t k = 0; k < m.cols_; ++k) {
        for (std::size_t j = 0; j < n.cols_; ++j) {
            if (n(k, j).is_zero()) continue;
            const GroupRingElement twisted = map_elements(m.twist_, g, n(k, j));
            for (std::size_t i = 0; i < m.rows_; ++i)
                if (!m(i, k).is_zero()) r(i, j) += multiply(g, m(i, k), twisted);
        }
    }
    return r;
}

GroupRingMatrix operator+(const GroupRingMatrix& a, const GroupRingMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw_invalid(kModule, "group-ring matrix sum dimension mismatch");
    GroupRingMatrix r = a;
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] += b.entries_[k];
    return r;
}

GroupRingMatrix operator-(const GroupRingMatrix& a, const GroupRingMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw_invalid(kModule, "group-ring matrix difference dimension mismatch");
    GroupRingMatrix r = a;
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] -= b.entries_[k];
    return r;
}

bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    if (a.group_->num_generators() != b.group_->num_generators()) return false;
    return a.entries_ == b.entries_ && twists_agree(*a.group_, a.twist_, b.twist_);
}

// ---------------------------------------------------------------- TraceVector

void TraceVector::add(const Exponents& cls, Int c) {
    if (c == 0) return;
    auto [it, inserted] = coefficients.try_emplace(cls, c);
    if (!inserted) {
        it->second = add_checked(it->second, c);
        if (it->second == 0) coefficients.erase(it);
    }
}

Int TraceVector::coefficient(const Exponents& cls) const {
    const auto it = coefficients.find(cls);
    return it == coefficients.end() ? 0 : it->second;
}

TraceVector& TraceVector::operator+=(const TraceVector& o) {
    for (const auto& [k, c] : o.coefficients) add(k, c);
    return *this;
}

TraceVector& TraceVector::operator-=(const TraceVector& o) {
    for (const auto& [k, c] : o.coefficients) add(k, sub_checked(0, c));
    return *this;
}

TraceVector operator*(Int k, const TraceVector& t) {
    TraceVector r;
    for (const auto& [cls, c] : t.coefficients) r.add(cls, mul_checked(k, c));
    return r;
}

Int augmentation(const TraceVector& t) {
    Int s = 0;
    for (const auto& [cls, c] : t.coefficients) s = add_checked(s, c);
    return s;
}

std::string format(const ShadowClassSet& classes, const TraceVector& t) {
    if (t.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [cls, c] : t.coefficients) {
        const Int mag = c < 0 ? -c : c;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (mag != 1) os << mag;
        os << "[" << classes.format(cls) << "]";
    }
    return os.str();
}

TraceVector push_forward(const TraceVector& t, const ClassMap& map) {
    TraceVector r;
    for (const auto& [cls, c] : t.coefficients) r.add(map(cls), c);
    return r;
}

TraceVector stallings_trace(const GroupRingMatrix& m, const ShadowClassSet& classes) {
    if (m.rows() != m.cols()) throw_invalid(kModule, "Stallings trace of a non-square matrix");
    check_same_group(m.group(), classes.group(), "Stallings trace");
    if (!twists_agree(classes.group(), m.twist(), classes.twist()))
        throw_invalid(kModule, "Stallings trace: matrix twist differs from the class set twist");
    TraceVector t;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (const auto& [g, c] : m(i, i).terms()) t.add(classes.class_of(g), c);
    return t;
}

GroupRingElement fox_derivative(const AbelianStructure& group, const Word& w, std::size_t generator) {
    const std::size_t n = group.num_generators();
    if (generator >= n) throw_invalid(kModule, "Fox derivative with respect to an unknown generator");
    GroupRingElement r;
    Exponents prefix(n, 0);
    for (const auto& l : w.letters()) {
        if (l.generator >= n) throw_invalid(kModule, "word uses an unknown generator");
        if (l.generator == generator) {
            // d(g^e)/dg = 1 + g + ... + g^{e-1}, or -(g^-1 + ... + g^e) for e < 0.
            if (l.exponent > 0) {
                for (Int k = 0; k < l.exponent; ++k) {
                    Exponents e = prefix;
                    e[generator] = add_checked(e[generator], k);
                    r.add_term(group.reduce(e), 1);
                }
            } else {
                for (Int k = 1; k <= -l.exponent; ++k) {
                    Exponents e = prefix;
                    e[generator] = sub_checked(e[generator], k);
                    r.add_term(group.reduce(e), -1);
                }
            }
        }
        prefix[l.generator] = add_checked(prefix[l.generator], l.exponent);
    }
    return r;
}

// ---------------------------------------------------------------- injectivity certificate

namespace {

constexpr std::size_t kMaxCertificateColumns = 800;
constexpr std::size_t kMaxCertificateRows = 4000;

struct Evaluation {
    std::vector<Int> torsion;           // orders of the torsion factors
    std::size_t torsion_order = 1;
    std::vector<std::uint64_t> points;  // values of the free coordinates
};

// Mixed-radix index of the torsion part and the scalar of the free part.
std::pair<std::size_t, std::uint64_t> evaluate(const AbelianStructure& g, const Evaluation& ev, const Exponents& x) {
    const std::vector<Int> c = g.canonical_coordinates(x);
    std::size_t index = 0;
    std::size_t radix = 1;
    for (std::size_t i = 0; i < ev.torsion.size(); ++i) {
        index += static_cast<std::size_t>(c[i]) * radix;
        radix *= static_cast<std::size_t>(ev.torsion[i]);
    }
    std::uint64_t scalar = 1;
    for (std::size_t j = 0; j < ev.points.size(); ++j) {
        const Int e = c[ev.torsion.size() + j];
        const std::uint64_t base = e >= 0 ? ev.points[j] : mod_inv(ev.points[j]);
        scalar = mod_mul(scalar, mod_pow(base, static_cast<std::uint64_t>(e >= 0 ? e : -e)));
    }
    return {index, scalar};
}

std::size_t add_torsion_index(const Evaluation& ev, std::size_t a, std::size_t b) {
    std::size_t out = 0;
    std::size_t radix = 1;
    for (Int t : ev.torsion) {
        const std::size_t ut = static_cast<std::size_t>(t);
        out += ((a % ut + b % ut) % ut) * radix;
        a /= ut;
        b /= ut;
        radix *= ut;
    }
    return out;
}

}  // namespace

InjectivityCertificate certify_injective(const GroupRingMatrix& d) {
    const AbelianStructure& g = d.group();
    if (d.cols() == 0) return {true, "no columns"};
    Evaluation ev;
    ev.torsion = g.torsion();
    for (Int t : ev.torsion) ev.torsion_order *= static_cast<std::size_t>(t);
    const std::size_t T = ev.torsion_order;
    if (d.cols() * T > kMaxCertificateColumns || d.rows() * T > kMaxCertificateRows)
        return {false, "regular representation too large for the rank certificate"};
    if (d.rows() < d.cols()) return {false, "more columns than rows"};

    std::mt19937_64 rng(0x5eed1234abcdULL);
    std::uniform_int_distribution<std::uint64_t> dist(2, kPrime - 2);
    for (int attempt = 0; attempt < 3; ++attempt) {
        ev.points.assign(g.free_rank(), 0);
        for (auto& p : ev.points) p = dist(rng);
        std::vector<std::vector<std::uint64_t>> m(d.rows() * T, std::vector<std::uint64_t>(d.cols() * T, 0));
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j)
                for (const auto& [x, c] : d(i, j).terms()) {
                    const auto [tau, s] = evaluate(g, ev, x);
                    const std::uint64_t v = mod_mul(to_mod(c), s);
                    for (std::size_t sigma = 0; sigma < T; ++sigma) {
                        auto& cell = m[i * T + add_torsion_index(ev, sigma, tau)][j * T + sigma];
                        cell = mod_add(cell, v);
                    }
                }
        const auto pivots = mod_row_reduce(m, d.cols() * T);
        if (pivots.size() == d.cols() * T)
            return {true, "full column rank of a modular evaluation (" + std::to_string(T) + "-dimensional torsion block)"};
    }
    return {false, "modular evaluations are rank deficient"};
}

// ---------------------------------------------------------------- window solver

namespace {

constexpr std::size_t kMaxUnknowns = 4000;
constexpr std::size_t kMaxDenseEntries = 40'000'000;

// Normal forms with pivot coordinates in range and free coordinates within bounds.
std::vector<Exponents> window_elements(const AbelianStructure& g, const std::vector<std::pair<Int, Int>>& bounds,
                                       std::size_t cap) {
    const std::size_t n = g.num_generators();
    std::vector<Int> lo(n), hi(n);
    std::size_t f = 0;
    for (std::size_t c = 0; c < n; ++c) {
        const Int mod = g.relations().pivot_modulus(c);
        if (mod != 0) {
            lo[c] = 0;
            hi[c] = mod - 1;
        } else {
            lo[c] = bounds[f].first;
            hi[c] = bounds[f].second;
            ++f;
        }
    }
    std::vector<Exponents> out;
    Exponents cur = lo;
    for (;;) {
        out.push_back(cur);
        if (out.size() > cap) return out;
        std::size_t c = 0;
        while (c < n) {
            if (++cur[c] <= hi[c]) break;
            cur[c] = lo[c];
            ++c;
        }
        if (c == n) break;
    }
    return out;
}

}  // namespace

std::optional<std::vector<GroupRingElement>> solve_linear(const GroupRingMatrix& d,
                                                          const std::vector<GroupRingElement>& rhs) {
    if (rhs.size() != d.rows()) throw_invalid(kModule, "right-hand side length mismatch");
    const AbelianStructure& g = d.group();
    if (std::all_of(rhs.begin(), rhs.end(), [](const GroupRingElement& e) { return e.is_zero(); }))
        return std::vector<GroupRingElement>(d.cols());

    const auto free_cols = g.relations().free_columns();
    // Coordinate ranges (on free columns) of the supports of rhs and of D.
    auto range_of = [&](auto&& elements) {
        std::vector<std::pair<Int, Int>> r(free_cols.size(), {0, 0});
        bool any = false;
        for (const GroupRingElement* e : elements)
            for (const auto& [x, c] : e->terms()) {
                for (std::size_t k = 0; k < free_cols.size(); ++k) {
                    const Int v = x[free_cols[k]];
                    if (!any) {
                        r[k] = {v, v};
                    } else {
                        r[k].first = std::min(r[k].first, v);
                        r[k].second = std::max(r[k].second, v);
                    }
                }
                any = true;
            }
        return r;
    };
    std::vector<const GroupRingElement*> rhs_ptr, d_ptr;
    for (const auto& e : rhs) rhs_ptr.push_back(&e);
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) d_ptr.push_back(&d(i, j));
    const auto r_range = range_of(rhs_ptr);
    const auto d_range = range_of(d_ptr);

    for (Int margin : {Int{0}, Int{2}, Int{5}}) {
        std::vector<std::pair<Int, Int>> bounds(free_cols.size());
        for (std::size_t k = 0; k < free_cols.size(); ++k)
            bounds[k] = {r_range[k].first - d_range[k].second - margin, r_range[k].second - d_range[k].first + margin};
        const auto window = window_elements(g, bounds, kMaxUnknowns);
        const std::size_t unknowns = window.size() * d.cols();
        if (unknowns > kMaxUnknowns) throw_failure("covers", "top-cell support window too large to solve");

        // Equations are indexed by (row, group element).
        std::map<std::pair<std::size_t, Exponents>, std::size_t> eq_index;
        std::vector<std::vector<std::pair<std::size_t, Int>>> eq_terms;
        auto eq_of = [&](std::size_t row, const Exponents& x) {
            auto [it, inserted] = eq_index.try_emplace({row, x}, eq_terms.size());
            if (inserted) eq_terms.emplace_back();
            return it->second;
        };
        for (std::size_t j = 0; j < d.cols(); ++j)
            for (std::size_t w = 0; w < window.size(); ++w)
                for (std::size_t i = 0; i < d.rows(); ++i)
                    for (const auto& [x, c] : d(i, j).terms())
                        eq_terms[eq_of(i, g.reduce(add(x, window[w])))].push_back({j * window.size() + w, c});
        std::vector<std::pair<std::size_t, Int>> rhs_terms;
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (const auto& [x, c] : rhs[i].terms()) rhs_terms.push_back({eq_of(i, x), c});

        if (eq_terms.size() * (unknowns + 1) > kMaxDenseEntries)
            throw_failure("covers", "top-cell linear system too large to solve");
        std::vector<std::vector<std::uint64_t>> m(eq_terms.size(), std::vector<std::uint64_t>(unknowns + 1, 0));
        for (std::size_t e = 0; e < eq_terms.size(); ++e)
            for (const auto& [u, c] : eq_terms[e]) m[e][u] = mod_add(m[e][u], to_mod(c));
        for (const auto& [e, c] : rhs_terms) m[e][unknowns] = mod_add(m[e][unknowns], to_mod(c));

        const auto pivots = mod_row_reduce(m, unknowns);
        if (!pivots.empty() && pivots.back() == unknowns) continue;  // inconsistent on this window

        std::vector<GroupRingElement> x(d.cols());
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            const std::size_t u = pivots[r];
            x[u / window.size()].add_term(window[u % window.size()], symmetric_lift(m[r][unknowns]));
        }
        bool exact = true;
        for (std::size_t i = 0; i < d.rows() && exact; ++i) {
            GroupRingElement s;
            for (std::size_t j = 0; j < d.cols(); ++j) s += multiply(g, d(i, j), x[j]);
            exact = s == rhs[i];
        }
        if (exact) return x;
    }
    return std::nullopt;
}

}  // namespace reltrace
