#include "reltrace/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace reltrace {

namespace {
constexpr const char* kModule = "fundamental_group";
constexpr Int kMaxEnumeration = 1'000'000;
constexpr Int kTietzeLengthCap = 400;
}  // namespace

// ---------------------------------------------------------------- Word

Word::Word(std::vector<Letter> letters) {
    for (const Letter& l : letters) {
        if (l.exponent == 0) continue;
        if (!letters_.empty() && letters_.back().generator == l.generator) {
            letters_.back().exponent = add_checked(letters_.back().exponent, l.exponent);
            if (letters_.back().exponent == 0) letters_.pop_back();
        } else {
            letters_.push_back(l);
        }
    }
}

Word Word::generator(std::size_t g, Int exponent) { return Word({Letter{g, exponent}}); }

Int Word::length() const {
    Int n = 0;
    for (const auto& l : letters_) n = add_checked(n, l.exponent < 0 ? -l.exponent : l.exponent);
    return n;
}

Word Word::inverse() const {
    std::vector<Letter> inv;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) inv.push_back({it->generator, -it->exponent});
    return Word(std::move(inv));
}

Word Word::cyclically_reduced() const {
    std::vector<Letter> l = letters_;
    while (l.size() >= 2 && l.front().generator == l.back().generator) {
        const Int e = add_checked(l.front().exponent, l.back().exponent);
        l.pop_back();
        if (e == 0) {
            l.erase(l.begin());
        } else {
            l.front().exponent = e;
        }
    }
    return Word(std::move(l));
}

Word Word::substitute(const std::vector<Word>& images) const {
    Word out;
    for (const auto& l : letters_) {
        if (l.generator >= images.size()) throw_invalid(kModule, "substitution misses a generator");
        const Word& img = l.exponent > 0 ? images[l.generator] : images[l.generator].inverse();
        const Int n = l.exponent < 0 ? -l.exponent : l.exponent;
        for (Int k = 0; k < n; ++k) out = out * img;
    }
    return out;
}

Exponents Word::exponent_sums(std::size_t num_generators) const {
    Exponents v(num_generators, 0);
    for (const auto& l : letters_) {
        if (l.generator >= num_generators) throw_invalid(kModule, "word uses an unknown generator");
        v[l.generator] = add_checked(v[l.generator], l.exponent);
    }
    return v;
}

Word operator*(const Word& a, const Word& b) {
    std::vector<Letter> l = a.letters_;
    l.insert(l.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::move(l));
}

// ---------------------------------------------------------------- Presentation

Diagnostics Presentation::validate() const {
    Diagnostics d;
    std::set<std::string> seen;
    for (const auto& g : generators)
        if (!seen.insert(g).second) d.push_back({Severity::Error, kModule, "duplicate generator name '" + g + "'"});
    for (std::size_t r = 0; r < relators.size(); ++r)
        for (const auto& l : relators[r].letters())
            if (l.generator >= generators.size())
                d.push_back({Severity::Error, kModule, "relator " + std::to_string(r) + " uses an unlisted generator"});
    return d;
}

IntMatrix Presentation::relator_matrix() const {
    IntMatrix m(relators.size(), generators.size());
    for (std::size_t r = 0; r < relators.size(); ++r) {
        const Exponents e = relators[r].exponent_sums(generators.size());
        for (std::size_t j = 0; j < e.size(); ++j) m(r, j) = e[j];
    }
    return m;
}

std::string Presentation::format(const Word& w) const {
    if (w.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& l : w.letters()) {
        if (!first) os << "*";
        first = false;
        os << generators.at(l.generator);
        if (l.exponent != 1) os << "^" << l.exponent;
    }
    return os.str();
}

IntMatrix GroupHom::abelianized() const {
    if (images.size() != domain.generators.size())
        throw_invalid(kModule, "homomorphism needs one image per domain generator");
    IntMatrix m(codomain.generators.size(), domain.generators.size());
    for (std::size_t j = 0; j < images.size(); ++j) m.set_col(j, images[j].exponent_sums(codomain.generators.size()));
    return m;
}

// ---------------------------------------------------------------- AbelianStructure

AbelianStructure::AbelianStructure(const Presentation& presentation) : names_(presentation.generators) {
    const Diagnostics d = presentation.validate();
    if (has_errors(d)) throw_invalid(kModule, d.front().message);
    finish(presentation.relator_matrix());
}

AbelianStructure AbelianStructure::free_abelian(std::vector<std::string> generator_names) {
    AbelianStructure a;
    a.names_ = std::move(generator_names);
    a.finish(IntMatrix(0, a.names_.size()));
    return a;
}

AbelianStructure AbelianStructure::cyclic(Int order, std::string generator_name) {
    Presentation p{{std::move(generator_name)}, {Word::generator(0, order)}};
    return AbelianStructure(p);
}

void AbelianStructure::finish(const IntMatrix& relator_matrix) {
    std::vector<Exponents> rows;
    for (std::size_t i = 0; i < relator_matrix.rows(); ++i) rows.push_back(relator_matrix.row(i));
    relations_ = Lattice(names_.size(), rows);
    smith_ = smith_normal_form(relator_matrix);
    free_rank_ = names_.size() - smith_.rank;
    torsion_.clear();
    for (Int f : smith_.invariant_factors)
        if (f != 1) torsion_.push_back(f);
}

std::optional<Int> AbelianStructure::order() const { return relations_.index(); }

Exponents AbelianStructure::generator(std::size_t g) const {
    Exponents e = identity();
    e.at(g) = 1;
    return reduce(std::move(e));
}

std::vector<Int> AbelianStructure::canonical_coordinates(const Exponents& v) const {
    // Row vector x maps to y = x V; relations become the rows of D.
    const IntMatrix& V = smith_.V;
    std::vector<Int> y(names_.size(), 0);
    for (std::size_t j = 0; j < names_.size(); ++j)
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (v[i] != 0 && V(i, j) != 0) y[j] = add_checked(y[j], mul_checked(v[i], V(i, j)));
    std::vector<Int> out;
    for (std::size_t i = 0; i < smith_.rank; ++i)
        if (smith_.invariant_factors[i] != 1) out.push_back(floor_mod(y[i], smith_.invariant_factors[i]));
    for (std::size_t i = smith_.rank; i < names_.size(); ++i) out.push_back(y[i]);
    return out;
}

std::vector<Exponents> AbelianStructure::elements() const {
    const auto n = order();
    if (!n) throw_invalid(kModule, "cannot enumerate an infinite group");
    if (*n > kMaxEnumeration) throw_failure(kModule, "group too large to enumerate");
    // Normal forms are exactly the vectors with 0 <= v[p] < pivot at pivot columns.
    std::vector<Int> radix(names_.size());
    for (std::size_t c = 0; c < names_.size(); ++c) radix[c] = relations_.pivot_modulus(c);
    std::vector<Exponents> out;
    Exponents cur(names_.size(), 0);
    for (;;) {
        out.push_back(cur);
        std::size_t c = 0;
        while (c < cur.size()) {
            if (++cur[c] < radix[c]) break;
            cur[c] = 0;
            ++c;
        }
        if (c == cur.size()) break;
    }
    return out;
}

bool AbelianStructure::preserves_relations(const IntMatrix& phi) const { return is_hom_to(*this, phi); }

bool AbelianStructure::is_hom_to(const AbelianStructure& target, const IntMatrix& hom) const {
    if (hom.cols() != num_generators() || hom.rows() != target.num_generators()) return false;
    for (const auto& r : relations_.basis())
        if (!target.relations().contains(hom.apply(r))) return false;
    return true;
}

Word AbelianStructure::to_word(const Exponents& v) const {
    std::vector<Letter> l;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) l.push_back({i, v[i]});
    return Word(std::move(l));
}

std::string AbelianStructure::format(const Exponents& v) const {
    bool all_single = std::all_of(names_.begin(), names_.end(), [](const std::string& s) { return s.size() == 1; });
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (any && !all_single) os << "*";
        any = true;
        os << names_[i];
        if (v[i] != 1) os << "^" << v[i];
    }
    return any ? os.str() : "1";
}

// ---------------------------------------------------------------- ShadowClassSet

ShadowClassSet::ShadowClassSet(GroupPtr group, IntMatrix twist) : group_(std::move(group)), twist_(std::move(twist)) {
    const std::size_t n = group_->num_generators();
    if (twist_.rows() != n || twist_.cols() != n) throw_invalid(kModule, "twist matrix has the wrong shape");
    if (!group_->preserves_relations(twist_))
        throw_invalid(kModule, "twist does not induce an endomorphism of the abelianization");
    const IntMatrix shift = IntMatrix::identity(n) - twist_;
    std::vector<Exponents> gens;
    for (std::size_t j = 0; j < n; ++j) gens.push_back(shift.col(j));
    lattice_ = group_->relations().plus(gens);

    IntMatrix basis(lattice_.rank(), n);
    for (std::size_t i = 0; i < lattice_.rank(); ++i)
        for (std::size_t j = 0; j < n; ++j) basis(i, j) = lattice_.basis()[i][j];
    const SmithForm s = smith_normal_form(basis);
    free_rank_ = n - s.rank;
    for (Int f : s.invariant_factors)
        if (f != 1) torsion_.push_back(f);
}

std::vector<Exponents> ShadowClassSet::representatives() const {
    const auto n = size();
    if (!n) throw_invalid(kModule, "infinite twisted class set has no finite representative list");
    if (*n > kMaxEnumeration) throw_failure(kModule, "twisted class set too large to enumerate");
    const std::size_t dim = group_->num_generators();
    std::vector<Int> radix(dim);
    for (std::size_t c = 0; c < dim; ++c) radix[c] = lattice_.pivot_modulus(c);
    std::vector<Exponents> out;
    Exponents cur(dim, 0);
    for (;;) {
        out.push_back(cur);
        std::size_t c = 0;
        while (c < dim) {
            if (++cur[c] < radix[c]) break;
            cur[c] = 0;
            ++c;
        }
        if (c == dim) break;
    }
    return out;
}

// ---------------------------------------------------------------- ClassMap

ClassMap::ClassMap(std::shared_ptr<const ShadowClassSet> source, std::shared_ptr<const ShadowClassSet> target,
                   IntMatrix hom, Exponents shift)
    : source_(std::move(source)), target_(std::move(target)), hom_(std::move(hom)), shift_(std::move(shift)) {
    if (shift_.empty()) shift_ = target_->group().identity();
}

Exponents ClassMap::operator()(const Exponents& cls) const {
    return target_->class_of(add(hom_.apply(cls), shift_));
}

ClassMap ClassMap::after(const ClassMap& first) const {
    // x -> H2 (H1 x + s1) + s2
    return ClassMap(first.source_, target_, hom_ * first.hom_, add(hom_.apply(first.shift_), shift_));
}

ClassMap pushforward_classes(const IntMatrix& iota, std::shared_ptr<const ShadowClassSet> source,
                             std::shared_ptr<const ShadowClassSet> target, Exponents shift) {
    const AbelianStructure& A = source->group();
    const AbelianStructure& B = target->group();
    if (!A.is_hom_to(B, iota)) throw_invalid(kModule, "inclusion does not induce a homomorphism of abelianizations");
    // iota o phi_A = phi_B o iota modulo the relations of B.
    const IntMatrix lhs = iota * source->twist();
    const IntMatrix rhs = target->twist() * iota;
    for (std::size_t j = 0; j < A.num_generators(); ++j)
        if (!B.relations().contains(sub(lhs.col(j), rhs.col(j))))
            throw_invalid(kModule, "inclusion is not compatible with the twists (iota o phi_A != phi_B o iota)");
    for (const auto& k : source->lattice().basis())
        if (!target->lattice().contains(iota.apply(k)))
            throw_failure(kModule, "class map is not well defined on twisted classes");
    return ClassMap(std::move(source), std::move(target), iota, std::move(shift));
}

// ---------------------------------------------------------------- recognition

namespace {

using Flat = std::vector<std::pair<std::size_t, int>>;  // (generator, +-1)

Flat flatten(const Word& w) {
    Flat f;
    for (const auto& l : w.letters()) {
        const int s = l.exponent > 0 ? 1 : -1;
        for (Int k = 0; k < (l.exponent > 0 ? l.exponent : -l.exponent); ++k) f.push_back({l.generator, s});
    }
    return f;
}

Flat free_reduce(const Flat& in) {
    Flat out;
    for (const auto& x : in) {
        if (!out.empty() && out.back().first == x.first && out.back().second == -x.second)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

bool is_commutator_of(const Word& relator, std::size_t x, std::size_t y) {
    const Word r = relator.cyclically_reduced();
    const auto& l = r.letters();
    if (l.size() != 4) return false;
    for (const auto& le : l)
        if (le.exponent != 1 && le.exponent != -1) return false;
    if (l[0].generator != l[2].generator || l[1].generator != l[3].generator) return false;
    if (l[0].exponent != -l[2].exponent || l[1].exponent != -l[3].exponent) return false;
    const std::set<std::size_t> pair{l[0].generator, l[1].generator};
    return pair == std::set<std::size_t>{x, y};
}

// One Dehn-style move: replace a subword matching more than half of a cyclic
// relator rotation (or exactly half, when allow_half) by the inverse of the
// complementary part.
bool rewrite_once(Flat& w, const std::vector<Flat>& rotations, bool allow_half) {
    for (const auto& rot : rotations) {
        const std::size_t L = rot.size();
        for (std::size_t len = L; len > 0 && len * 2 >= L; --len) {
            if (len * 2 == L && !allow_half) continue;
            for (std::size_t pos = 0; pos + len <= w.size(); ++pos) {
                if (!std::equal(rot.begin(), rot.begin() + static_cast<std::ptrdiff_t>(len),
                                w.begin() + static_cast<std::ptrdiff_t>(pos)))
                    continue;
                Flat rest(rot.begin() + static_cast<std::ptrdiff_t>(len), rot.end());
                std::reverse(rest.begin(), rest.end());
                for (auto& x : rest) x.second = -x.second;
                Flat next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
                next.insert(next.end(), rest.begin(), rest.end());
                next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + len), w.end());
                w = free_reduce(next);
                return true;
            }
        }
    }
    return false;
}

bool rewrites_to_identity(Flat w, const std::vector<Flat>& rels, int rounds) {
    std::vector<Flat> rotations;
    for (const auto& r : rels) {
        for (int inv = 0; inv < 2; ++inv) {
            Flat base = r;
            if (inv) {
                std::reverse(base.begin(), base.end());
                for (auto& x : base) x.second = -x.second;
            }
            for (std::size_t s = 0; s < base.size(); ++s) {
                Flat rot(base.begin() + static_cast<std::ptrdiff_t>(s), base.end());
                rot.insert(rot.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(s));
                rotations.push_back(std::move(rot));
            }
        }
    }
    w = free_reduce(w);
    for (int round = 0; round < rounds; ++round) {
        while (!w.empty() && rewrite_once(w, rotations, false)) {
        }
        if (w.empty()) return true;
        if (!rewrite_once(w, rotations, true)) return false;
    }
    return w.empty();
}

}  // namespace

AbelianRecognition recognize_abelian(const Presentation& presentation, int rewrite_rounds) {
    std::vector<Word> rels;
    for (const auto& r : presentation.relators) rels.push_back(r.cyclically_reduced());
    std::vector<bool> alive(presentation.generators.size(), true);

    for (bool progress = true; progress;) {
        progress = false;
        rels.erase(std::remove_if(rels.begin(), rels.end(), [](const Word& w) { return w.empty(); }), rels.end());
        std::vector<std::size_t> order(rels.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return rels[a].length() < rels[b].length(); });
        for (std::size_t ri : order) {
            const auto& letters = rels[ri].letters();
            std::map<std::size_t, int> count;
            for (const auto& l : letters) count[l.generator] += 1;
            for (std::size_t pos = 0; pos < letters.size(); ++pos) {
                const Letter x = letters[pos];
                if (count[x.generator] != 1 || (x.exponent != 1 && x.exponent != -1)) continue;
                // Rotate so x comes first: x^e w = 1.
                std::vector<Letter> rest(letters.begin() + static_cast<std::ptrdiff_t>(pos) + 1, letters.end());
                rest.insert(rest.end(), letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(pos));
                const Word w(rest);
                const Word value = x.exponent == 1 ? w.inverse() : w;
                std::vector<Word> images;
                for (std::size_t g = 0; g < alive.size(); ++g) images.push_back(g == x.generator ? value : Word::generator(g));
                std::vector<Word> next;
                bool too_long = false;
                for (std::size_t k = 0; k < rels.size(); ++k) {
                    if (k == ri) continue;
                    Word s = rels[k].substitute(images).cyclically_reduced();
                    if (s.length() > kTietzeLengthCap) too_long = true;
                    next.push_back(std::move(s));
                }
                if (too_long) continue;
                rels = std::move(next);
                alive[x.generator] = false;
                progress = true;
                break;
            }
            if (progress) break;
        }
    }

    std::vector<std::size_t> gens;
    for (std::size_t g = 0; g < alive.size(); ++g)
        if (alive[g]) gens.push_back(g);
    if (gens.size() <= 1)
        return {true, gens.empty() ? "presentation simplifies to the trivial group" : "presentation simplifies to a cyclic group"};

    std::vector<Flat> flat_rels;
    for (const auto& r : rels) flat_rels.push_back(flatten(r));
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            const bool witnessed = std::any_of(rels.begin(), rels.end(),
                                               [&](const Word& r) { return is_commutator_of(r, gens[i], gens[j]); });
            if (witnessed) continue;
            if (rewrite_rounds > 0) {
                const Word comm = Word::generator(gens[i]) * Word::generator(gens[j]) * Word::generator(gens[i], -1) *
                                  Word::generator(gens[j], -1);
                if (rewrites_to_identity(flatten(comm), flat_rels, rewrite_rounds)) continue;
            }
            return {false, "no certificate that generators " + presentation.generators[gens[i]] + " and " +
                               presentation.generators[gens[j]] + " commute"};
        }
    return {true, rewrite_rounds > 0 ? "all generator pairs commute (bounded rewriting certificate)"
                                     : "all generator pairs commute by relators"};
}

}  // namespace reltrace
