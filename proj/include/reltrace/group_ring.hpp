#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reltrace/group.hpp"
#include "reltrace/integer_matrix.hpp"

namespace reltrace {

/// Element of Z[pi] for a finitely generated abelian pi: finitely many
/// (normal-form group element, nonzero integer) terms.
class GroupRingElement {
public:
    using Terms = std::map<Exponents, Int, ColexLess>;

    GroupRingElement() = default;
    static GroupRingElement monomial(Exponents g, Int coefficient = 1);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Int coefficient(const Exponents& g) const;
    /// Adds c*g; g must already be in normal form.
    GroupRingElement& add_term(const Exponents& g, Int c);

    GroupRingElement& operator+=(const GroupRingElement& o);
    GroupRingElement& operator-=(const GroupRingElement& o);
    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
    friend GroupRingElement operator-(const GroupRingElement& a);
    friend GroupRingElement operator*(Int k, const GroupRingElement& a);
    friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

private:
    Terms terms_;
};

/// Sum of coefficients (the ring map sending every group element to 1).
Int augmentation(const GroupRingElement& x);

GroupRingElement multiply(const AbelianStructure& group, const GroupRingElement& a, const GroupRingElement& b);
/// Image under a homomorphism of abelianizations given on exponent vectors.
GroupRingElement map_elements(const IntMatrix& hom, const AbelianStructure& target, const GroupRingElement& x);
GroupRingElement from_terms(const AbelianStructure& group, const std::vector<std::pair<Int, Word>>& terms);
/// Additive notation in the group's generator names: "1 + b + b^2", "-a^-1".
std::string format(const AbelianStructure& group, const GroupRingElement& x);

/// Matrix over Z[pi] representing a phi-twisted module map
/// f(g x) = phi(g) f(x) in the basis of the source, acting on column vectors.
class GroupRingMatrix {
public:
    GroupRingMatrix() = default;
    GroupRingMatrix(GroupPtr group, std::size_t rows, std::size_t cols);
    GroupRingMatrix(GroupPtr group, std::size_t rows, std::size_t cols, IntMatrix twist);
    static GroupRingMatrix identity(GroupPtr group, std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const AbelianStructure& group() const { return *group_; }
    const GroupPtr& group_ptr() const noexcept { return group_; }
    const IntMatrix& twist() const noexcept { return twist_; }

    GroupRingElement& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const GroupRingElement& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::vector<GroupRingElement> col(std::size_t j) const;
    void set_col(std::size_t j, const std::vector<GroupRingElement>& v);

    /// Entrywise image under a homomorphism; the result carries `twist`.
    GroupRingMatrix mapped(const IntMatrix& hom, GroupPtr target, IntMatrix twist) const;
    GroupRingMatrix with_twist(IntMatrix twist) const;
    IntMatrix augmented() const;
    bool is_zero() const;
    bool is_identity() const;

    /// (M N) x = M phi_M(N) phi_M phi_N(x): N's entries pass through M's twist.
    friend GroupRingMatrix operator*(const GroupRingMatrix& m, const GroupRingMatrix& n);
    friend GroupRingMatrix operator+(const GroupRingMatrix& a, const GroupRingMatrix& b);
    friend GroupRingMatrix operator-(const GroupRingMatrix& a, const GroupRingMatrix& b);
    /// Equal entries, twists agreeing modulo the relations.
    friend bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b);

private:
    GroupPtr group_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    IntMatrix twist_;
    std::vector<GroupRingElement> entries_;
};

/// Formal integer combination of twisted conjugacy classes.
struct TraceVector {
    std::map<Exponents, Int, ColexLess> coefficients;

    void add(const Exponents& cls, Int c);
    bool is_zero() const noexcept { return coefficients.empty(); }
    std::size_t support_size() const noexcept { return coefficients.size(); }
    Int coefficient(const Exponents& cls) const;

    TraceVector& operator+=(const TraceVector& o);
    TraceVector& operator-=(const TraceVector& o);
    friend TraceVector operator*(Int k, const TraceVector& t);
    friend bool operator==(const TraceVector&, const TraceVector&) = default;
};

Int augmentation(const TraceVector& t);
std::string format(const ShadowClassSet& classes, const TraceVector& t);
TraceVector push_forward(const TraceVector& t, const ClassMap& map);

/// Sum over the diagonal of M, each group element replaced by its twisted class.
TraceVector stallings_trace(const GroupRingMatrix& m, const ShadowClassSet& classes);

/// Free derivative d w / d g, evaluated in the group ring of `group`.
GroupRingElement fox_derivative(const AbelianStructure& group, const Word& w, std::size_t generator);

/// Whether D : Z[pi]^cols -> Z[pi]^rows is injective, certified by full column
/// rank of a modular evaluation (free part to random units, torsion part to its
/// regular representation).
struct InjectivityCertificate {
    bool certified = false;
    std::string detail;
};
InjectivityCertificate certify_injective(const GroupRingMatrix& d);

/// Some x with D x = rhs (D read untwisted; exactly verified), searched on
/// finite support windows.
std::optional<std::vector<GroupRingElement>> solve_linear(const GroupRingMatrix& d,
                                                          const std::vector<GroupRingElement>& rhs);

}  // namespace reltrace
