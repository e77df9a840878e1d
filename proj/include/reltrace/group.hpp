#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reltrace/error.hpp"
#include "reltrace/integer_matrix.hpp"

namespace reltrace {

struct Letter {
    std::size_t generator = 0;
    Int exponent = 0;
    friend bool operator==(const Letter&, const Letter&) = default;
};

/// Freely reduced word in the generators of a presentation. Adjacent letters
/// always carry distinct generators; the empty word is the identity.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters);

    static Word generator(std::size_t g, Int exponent = 1);

    const std::vector<Letter>& letters() const noexcept { return letters_; }
    bool empty() const noexcept { return letters_.empty(); }
    /// Sum of |exponent| over letters.
    Int length() const;

    Word inverse() const;
    Word cyclically_reduced() const;
    /// Replace each generator g by images[g].
    Word substitute(const std::vector<Word>& images) const;
    Exponents exponent_sums(std::size_t num_generators) const;

    friend Word operator*(const Word& a, const Word& b);
    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Letter> letters_;
};

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;

    Diagnostics validate() const;
    /// Relator exponent-sum matrix: one row per relator.
    IntMatrix relator_matrix() const;
    std::string format(const Word& w) const;
};

/// Homomorphism given by an image word per domain generator.
struct GroupHom {
    Presentation domain;
    Presentation codomain;
    std::vector<Word> images;

    /// Action on exponent vectors: column j = exponent sums of images[j].
    IntMatrix abelianized() const;
};

/// Abelianization of a finitely presented group. Elements are exponent
/// vectors in the presentation's generator coordinates, reduced modulo the
/// Hermite basis of the relator lattice; Smith form data gives the
/// invariant factors and canonical coordinates.
class AbelianStructure {
public:
    explicit AbelianStructure(const Presentation& presentation);
    static AbelianStructure free_abelian(std::vector<std::string> generator_names);
    static AbelianStructure cyclic(Int order, std::string generator_name = "g");

    const std::vector<std::string>& generator_names() const noexcept { return names_; }
    std::size_t num_generators() const noexcept { return names_.size(); }
    const Lattice& relations() const noexcept { return relations_; }
    const SmithForm& smith() const noexcept { return smith_; }
    std::size_t free_rank() const noexcept { return free_rank_; }
    const std::vector<Int>& torsion() const noexcept { return torsion_; }
    /// Number of elements, when finite.
    std::optional<Int> order() const;

    Exponents identity() const { return Exponents(names_.size(), 0); }
    Exponents generator(std::size_t g) const;
    Exponents reduce(Exponents v) const { return relations_.reduce(std::move(v)); }
    Exponents element(const Word& w) const { return reduce(w.exponent_sums(names_.size())); }

    /// Coordinates in the Smith basis: torsion entries in [0, d_i), then free entries.
    std::vector<Int> canonical_coordinates(const Exponents& v) const;

    /// All elements of a finite group, in colex order of their normal forms.
    std::vector<Exponents> elements() const;

    /// True when phi (acting on exponent column vectors) maps relations into relations.
    bool preserves_relations(const IntMatrix& phi) const;
    /// Whether `hom` carries this group's relations into `target`'s.
    bool is_hom_to(const AbelianStructure& target, const IntMatrix& hom) const;

    Word to_word(const Exponents& v) const;
    /// Multiplicative notation: "1", "a", "a^2b", "a^-1b^3".
    std::string format(const Exponents& v) const;

private:
    AbelianStructure() = default;
    void finish(const IntMatrix& relator_matrix);

    std::vector<std::string> names_;
    Lattice relations_;
    SmithForm smith_;
    std::size_t free_rank_ = 0;
    std::vector<Int> torsion_;
};

using GroupPtr = std::shared_ptr<const AbelianStructure>;

/// Twisted conjugacy classes g ~ h g phi(h)^-1 on the abelianization:
/// additively the cosets of relations + (I - Phi) Z^n.
class ShadowClassSet {
public:
    ShadowClassSet(GroupPtr group, IntMatrix twist);

    const AbelianStructure& group() const noexcept { return *group_; }
    const GroupPtr& group_ptr() const noexcept { return group_; }
    const IntMatrix& twist() const noexcept { return twist_; }
    const Lattice& lattice() const noexcept { return lattice_; }

    bool finite() const noexcept { return lattice_.index().has_value(); }
    std::optional<Int> size() const { return lattice_.index(); }
    /// Structure of the class set as an abelian group coker(I - Phi).
    std::size_t free_rank() const noexcept { return free_rank_; }
    const std::vector<Int>& torsion() const noexcept { return torsion_; }

    Exponents class_of(const Exponents& element) const { return lattice_.reduce(element); }
    /// Canonical representatives, colex ordered. Finite class sets only.
    std::vector<Exponents> representatives() const;

    std::string format(const Exponents& cls) const { return group_->format(cls); }

private:
    GroupPtr group_;
    IntMatrix twist_;
    Lattice lattice_;
    std::size_t free_rank_ = 0;
    std::vector<Int> torsion_;
};

/// Map of twisted class sets induced by a homomorphism of abelianizations,
/// with a fixed translation accounting for basepoint displacement.
class ClassMap {
public:
    ClassMap(std::shared_ptr<const ShadowClassSet> source, std::shared_ptr<const ShadowClassSet> target,
             IntMatrix hom, Exponents shift);

    Exponents operator()(const Exponents& cls) const;

    const ShadowClassSet& source() const noexcept { return *source_; }
    const ShadowClassSet& target() const noexcept { return *target_; }
    const IntMatrix& hom() const noexcept { return hom_; }
    const Exponents& shift() const noexcept { return shift_; }

    /// this after `first`: first: X -> Y, this: Y -> Z.
    ClassMap after(const ClassMap& first) const;

private:
    std::shared_ptr<const ShadowClassSet> source_;
    std::shared_ptr<const ShadowClassSet> target_;
    IntMatrix hom_;
    Exponents shift_;
};

/// Checks iota o phi_A = phi_B o iota on abelianizations and that the class
/// image is independent of representatives; throws on failure.
ClassMap pushforward_classes(const IntMatrix& iota, std::shared_ptr<const ShadowClassSet> source,
                             std::shared_ptr<const ShadowClassSet> target, Exponents shift = {});

struct AbelianRecognition {
    bool abelian = false;
    std::string reason;
};

/// Decides (soundly, incompletely) whether a presentation defines an abelian
/// group: Tietze elimination, then a search for commutator relators. With
/// rewrite_rounds > 0 an additional bounded relator-rewriting search tries
/// to certify the remaining commutators (experimental).
AbelianRecognition recognize_abelian(const Presentation& presentation, int rewrite_rounds = 0);

}  // namespace reltrace
