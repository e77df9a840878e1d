#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "reltrace/error.hpp"
#include "reltrace/group_ring.hpp"
#include "reltrace/integer_matrix.hpp"

namespace reltrace {

/// Finitely generated abelian group as (free rank, torsion divisibility chain).
struct AbelianInvariants {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;

    std::string format() const;
    friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

/// Z^dim modulo the span of `relations`, by Hermite then Smith reduction.
AbelianInvariants cokernel(std::size_t dim, const std::vector<Exponents>& relations);
AbelianInvariants direct_sum(const std::vector<AbelianInvariants>& parts);

struct Morphism {
    std::size_t source = 0;
    std::size_t target = 0;
    std::string name;
};

/// Finite category given by its morphisms and composition table. Hom-sets
/// are the free abelian groups on the listed morphisms.
class EICategory {
public:
    /// table[f][g] = f o g, required exactly when target(g) == source(f).
    EICategory(std::size_t objects, std::vector<Morphism> morphisms,
               std::vector<std::vector<std::optional<std::size_t>>> table);

    /// One object whose endomorphisms are the elements of a finite abelian group.
    static EICategory from_group(const AbelianStructure& group);

    std::size_t num_objects() const noexcept { return objects_; }
    std::size_t num_morphisms() const noexcept { return morphisms_.size(); }
    const Morphism& morphism(std::size_t f) const { return morphisms_.at(f); }
    std::optional<std::size_t> compose(std::size_t f, std::size_t g) const { return table_.at(f).at(g); }
    std::size_t identity(std::size_t object) const { return identity_.at(object); }
    std::optional<std::size_t> inverse(std::size_t f) const { return inverse_.at(f); }
    bool is_isomorphism(std::size_t f) const { return inverse_.at(f).has_value(); }
    std::vector<std::size_t> hom(std::size_t a, std::size_t b) const;

    /// Iso class index per object and one representative per class (the least object).
    const std::vector<std::size_t>& iso_class() const noexcept { return iso_class_; }
    const std::vector<std::size_t>& representatives() const noexcept { return representatives_; }
    /// Fixed isomorphism representative(class(o)) -> o.
    std::size_t transport(std::size_t object) const { return transport_.at(object); }
    /// Automorphisms of a representative as the abelian group they form.
    GroupPtr automorphism_group(std::size_t cls) const;
    /// Group element of an automorphism of representatives()[cls].
    Exponents automorphism_element(std::size_t cls, std::size_t f) const;

    /// Identities, associativity, the EI condition; empty when valid.
    Diagnostics validate() const;

private:
    std::size_t objects_ = 0;
    std::vector<Morphism> morphisms_;
    std::vector<std::vector<std::optional<std::size_t>>> table_;
    std::vector<std::size_t> identity_;
    std::vector<std::optional<std::size_t>> inverse_;
    std::vector<std::size_t> iso_class_;
    std::vector<std::size_t> representatives_;
    std::vector<std::size_t> transport_;
};

using EICategoryPtr = std::shared_ptr<const EICategory>;

/// Shape of a random EI-category: iso classes with cyclic automorphism
/// groups, the objects of each class, and a strict order on classes along
/// which non-invertible morphisms run.
struct EIBlueprint {
    std::vector<Int> class_orders;               // |Aut| per iso class
    std::vector<std::size_t> object_class;       // iso class per object
    std::vector<std::vector<bool>> below;        // below[c][d]: morphisms c -> d exist, c != d
};

/// Hom(c, d) = Aut(d) x Aut(c) for c below d, with (x, y) o (z, w) = (x, w);
/// isomorphic objects share their class's automorphisms.
EICategory make_ei_category(const EIBlueprint& blueprint);
EIBlueprint random_blueprint(std::mt19937_64& rng, std::size_t max_objects, const std::vector<Int>& orders);

enum class Variance { Covariant, Contravariant };

/// Functor to free abelian groups given by one integer matrix per morphism.
/// Covariant: action[f] : M(source) -> M(target); contravariant the reverse.
struct EIModule {
    EICategoryPtr category;
    Variance variance = Variance::Covariant;
    std::vector<std::size_t> dims;
    std::vector<IntMatrix> action;
    bool supported_on_isomorphisms = false;
    /// Rank over Z[Aut] per iso class, when built by free_module.
    std::vector<std::size_t> free_ranks;

    /// Functoriality and, when flagged, vanishing on non-isomorphisms.
    Diagnostics validate() const;
};

/// Z[Aut(c)]^r on every object of class c, automorphisms acting by
/// multiplication (left for covariant, right for contravariant) and
/// non-isomorphisms by zero.
EIModule free_module(EICategoryPtr category, Variance variance, const std::vector<std::size_t>& ranks);

struct TensorResult {
    std::vector<AbelianInvariants> components;  // X(c) tensor_{End(c)} Y(c) per iso class
    AbelianInvariants direct_sum;
    AbelianInvariants coequalizer;              // over every morphism of the category
    bool agrees = false;
};

/// X contravariant, Y covariant, both supported on isomorphisms; otherwise throws InvalidInput.
TensorResult eimodule_compose(const EIModule& x, const EIModule& y);

/// Bimodule: Z(a, b) with left actions of f : a -> a' and right actions of g : b' -> b.
struct EIBimodule {
    EICategoryPtr category;
    std::vector<std::vector<std::size_t>> dims;         // [a][b]
    std::vector<std::vector<IntMatrix>> left;           // [f][b] : Z(s, b) -> Z(t, b)
    std::vector<std::vector<IntMatrix>> right;          // [g][a] : Z(a, t) -> Z(a, s)

    Diagnostics validate() const;
};

/// Z(a, b) = Z Hom(b, a), acted on by composition.
EIBimodule hom_bimodule(EICategoryPtr category);
/// One-object category: Z[G] with left multiplication and right action through phi.
EIBimodule twisted_bimodule(EICategoryPtr category, const std::vector<std::size_t>& phi);

/// Coequalizer of the two actions on the sum of the Z(a, a).
AbelianInvariants eimodule_shadow(const EIBimodule& z);
/// Shadow of Z[pi]^phi for a finitely generated abelian pi: free on the
/// twisted classes, so the rank is the class count (nullopt when infinite).
std::optional<AbelianInvariants> group_ring_shadow(const ShadowClassSet& classes);

/// Free Z[pi]-module with a chosen basis (columns of `basis`, invertible).
struct FreeModule {
    GroupPtr group;
    GroupRingMatrix basis;
};

struct DualData {
    GroupRingMatrix dual_basis;    // rows are the dual basis: dual_basis * basis = I
    GroupRingMatrix coevaluation;  // sum_i b_i (x) b'_i in standard coordinates
    GroupRingMatrix evaluation;    // pairing of the standard dual basis with the standard basis
    GroupRingMatrix pairing;       // b'_i(b_j)
};

/// Throws InvalidInput when the basis is not invertible.
DualData build_dual(const FreeModule& f);
/// Both triangle composites are identities, and the dual basis pairs to the identity.
bool verify_snake(const FreeModule& f, const DualData& d);

/// Random invertible matrix over Z[pi] as a product of elementary and unit
/// factors, with its inverse assembled from the inverted factors.
std::pair<GroupRingMatrix, GroupRingMatrix> random_basis(GroupPtr group, std::size_t rank, std::mt19937_64& rng,
                                                         int factors = 6);
/// Adjugate over the commutative ring Z[pi]; nullopt unless the determinant is +-g.
std::optional<GroupRingMatrix> inverse_matrix(const GroupRingMatrix& m);
GroupRingElement determinant(const GroupRingMatrix& m);

/// Per iso class of a free covariant module: Z[Aut(c)]^r with the standard basis.
std::vector<FreeModule> free_components(const EIModule& m);
/// The dual of a free module: the free module of the same ranks and opposite variance.
EIModule dual_module(const EIModule& m);

}  // namespace reltrace
