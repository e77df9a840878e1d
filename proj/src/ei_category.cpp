#include "reltrace/ei_category.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace reltrace {

namespace {

constexpr const char* kModule = "shadow_algebra";

bool is_zero_matrix(const IntMatrix& m) { return m.is_zero(); }

std::string matrix_shape(const IntMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

}  // namespace

std::string AbelianInvariants::format() const {
    std::vector<std::string> parts;
    if (free_rank == 1) parts.push_back("Z");
    if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
    for (Int t : torsion) parts.push_back("Z/" + std::to_string(t));
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
    return out;
}

AbelianInvariants cokernel(std::size_t dim, const std::vector<Exponents>& relations) {
    const Lattice lattice(dim, relations);
    IntMatrix basis(lattice.rank(), dim);
    for (std::size_t i = 0; i < lattice.rank(); ++i)
        for (std::size_t j = 0; j < dim; ++j) basis(i, j) = lattice.basis()[i][j];
    const SmithForm s = smith_normal_form(basis);
    AbelianInvariants out;
    out.free_rank = dim - s.rank;
    out.torsion = normalize_torsion(s.invariant_factors);
    return out;
}

AbelianInvariants direct_sum(const std::vector<AbelianInvariants>& parts) {
    AbelianInvariants out;
    std::vector<Int> orders;
    for (const auto& p : parts) {
        out.free_rank += p.free_rank;
        orders.insert(orders.end(), p.torsion.begin(), p.torsion.end());
    }
    out.torsion = normalize_torsion(orders);
    return out;
}

// ---------------------------------------------------------------------------
// EICategory

EICategory::EICategory(std::size_t objects, std::vector<Morphism> morphisms,
                       std::vector<std::vector<std::optional<std::size_t>>> table)
    : objects_(objects), morphisms_(std::move(morphisms)), table_(std::move(table)) {
    const std::size_t n = morphisms_.size();
    if (table_.size() != n) throw_invalid(kModule, "composition table has the wrong number of rows");
    for (const auto& row : table_)
        if (row.size() != n) throw_invalid(kModule, "composition table has the wrong number of columns");
    for (const auto& m : morphisms_)
        if (m.source >= objects_ || m.target >= objects_)
            throw_invalid(kModule, "morphism " + m.name + " refers to a missing object");

    identity_.assign(objects_, n);
    for (std::size_t e = 0; e < n; ++e) {
        const std::size_t o = morphisms_[e].source;
        if (morphisms_[e].target != o || identity_[o] != n) continue;
        bool unit = true;
        for (std::size_t f = 0; f < n && unit; ++f) {
            if (morphisms_[f].source == o && table_[f][e] != f) unit = false;
            if (morphisms_[f].target == o && table_[e][f] != f) unit = false;
        }
        if (unit) identity_[o] = e;
    }
    for (std::size_t o = 0; o < objects_; ++o)
        if (identity_[o] == n) throw_invalid(kModule, "object " + std::to_string(o) + " has no identity morphism");

    inverse_.assign(n, std::nullopt);
    for (std::size_t f = 0; f < n; ++f) {
        const Morphism& mf = morphisms_[f];
        for (std::size_t g : hom(mf.target, mf.source))
            if (table_[f][g] == identity_[mf.target] && table_[g][f] == identity_[mf.source]) {
                inverse_[f] = g;
                break;
            }
    }

    iso_class_.assign(objects_, objects_);
    transport_.assign(objects_, n);
    for (std::size_t o = 0; o < objects_; ++o) {
        if (iso_class_[o] != objects_) continue;
        const std::size_t cls = representatives_.size();
        representatives_.push_back(o);
        for (std::size_t p = o; p < objects_; ++p) {
            if (iso_class_[p] != objects_) continue;
            for (std::size_t f : hom(o, p))
                if (inverse_[f]) {
                    iso_class_[p] = cls;
                    transport_[p] = p == o ? identity_[o] : f;
                    break;
                }
        }
    }
}

EICategory EICategory::from_group(const AbelianStructure& group) {
    const auto order = group.order();
    if (!order) throw_invalid(kModule, "group is infinite");
    const std::vector<Exponents> elements = group.elements();
    std::vector<Morphism> morphisms;
    for (const auto& g : elements) morphisms.push_back({0, 0, group.format(g)});
    std::vector<std::vector<std::optional<std::size_t>>> table(elements.size(),
                                                               std::vector<std::optional<std::size_t>>(elements.size()));
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = 0; j < elements.size(); ++j) {
            const Exponents prod = group.reduce(add(elements[i], elements[j]));
            const auto it = std::find(elements.begin(), elements.end(), prod);
            table[i][j] = static_cast<std::size_t>(it - elements.begin());
        }
    return EICategory(1, std::move(morphisms), std::move(table));
}

std::vector<std::size_t> EICategory::hom(std::size_t a, std::size_t b) const {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < morphisms_.size(); ++f)
        if (morphisms_[f].source == a && morphisms_[f].target == b) out.push_back(f);
    return out;
}

GroupPtr EICategory::automorphism_group(std::size_t cls) const {
    const std::size_t c = representatives_.at(cls);
    const std::vector<std::size_t> autos = hom(c, c);
    auto index = [&](std::size_t f) {
        return static_cast<std::size_t>(std::find(autos.begin(), autos.end(), f) - autos.begin());
    };
    Presentation p;
    for (std::size_t f : autos) p.generators.push_back(morphisms_[f].name);
    // Multiplication-table presentation; abelian, so it presents the group itself.
    for (std::size_t i = 0; i < autos.size(); ++i)
        for (std::size_t j = 0; j < autos.size(); ++j) {
            const std::size_t ij = *table_[autos[i]][autos[j]];
            if (ij != *table_[autos[j]][autos[i]])
                throw_invalid(kModule, "automorphism group of object " + std::to_string(c) + " is not abelian");
            p.relators.push_back(Word::generator(i) * Word::generator(j) * Word::generator(index(ij), -1));
        }
    p.relators.push_back(Word::generator(index(identity_[c])));
    return std::make_shared<const AbelianStructure>(p);
}

Exponents EICategory::automorphism_element(std::size_t cls, std::size_t f) const {
    const std::size_t c = representatives_.at(cls);
    const std::vector<std::size_t> autos = hom(c, c);
    const auto it = std::find(autos.begin(), autos.end(), f);
    if (it == autos.end()) throw_invalid(kModule, "morphism is not an automorphism of the representative");
    Exponents v(autos.size(), 0);
    v[static_cast<std::size_t>(it - autos.begin())] = 1;
    return v;
}

Diagnostics EICategory::validate() const {
    Diagnostics out;
    const std::size_t n = morphisms_.size();
    auto report = [&](const std::string& msg) { out.push_back({Severity::Error, kModule, msg}); };
    for (std::size_t f = 0; f < n; ++f)
        for (std::size_t g = 0; g < n; ++g) {
            const bool composable = morphisms_[g].target == morphisms_[f].source;
            const auto& fg = table_[f][g];
            if (composable != fg.has_value()) {
                report("composition " + morphisms_[f].name + " o " + morphisms_[g].name +
                       (composable ? " is missing" : " is defined for non-composable morphisms"));
                continue;
            }
            if (fg && (*fg >= n || morphisms_[*fg].source != morphisms_[g].source ||
                       morphisms_[*fg].target != morphisms_[f].target))
                report("composition " + morphisms_[f].name + " o " + morphisms_[g].name + " has the wrong endpoints");
        }
    if (!out.empty()) return out;
    for (std::size_t f = 0; f < n; ++f)
        for (std::size_t g = 0; g < n; ++g) {
            if (!table_[f][g]) continue;
            for (std::size_t h = 0; h < n; ++h) {
                if (!table_[g][h]) continue;
                if (table_[*table_[f][g]][h] != table_[f][*table_[g][h]])
                    report("composition is not associative at " + morphisms_[f].name + ", " + morphisms_[g].name +
                           ", " + morphisms_[h].name);
            }
        }
    for (std::size_t f = 0; f < n; ++f)
        if (morphisms_[f].source == morphisms_[f].target && !inverse_[f])
            report("endomorphism " + morphisms_[f].name + " is not invertible");
    return out;
}

// ---------------------------------------------------------------------------
// Random EI-categories

EICategory make_ei_category(const EIBlueprint& bp) {
    const std::size_t classes = bp.class_orders.size();
    const std::size_t objects = bp.object_class.size();
    if (bp.below.size() != classes) throw_invalid(kModule, "blueprint order has the wrong size");
    for (std::size_t c : bp.object_class)
        if (c >= classes) throw_invalid(kModule, "blueprint object refers to a missing class");
    for (Int m : bp.class_orders)
        if (m < 1) throw_invalid(kModule, "automorphism group order must be positive");

    // Label: (source, target, x, y); isomorphisms use x only.
    using Key = std::tuple<std::size_t, std::size_t, Int, Int>;
    std::vector<Morphism> morphisms;
    std::vector<Key> keys;
    std::map<Key, std::size_t> index;
    auto add_morphism = [&](const Key& k, std::string name) {
        index[k] = morphisms.size();
        keys.push_back(k);
        morphisms.push_back({std::get<0>(k), std::get<1>(k), std::move(name)});
    };
    for (std::size_t o = 0; o < objects; ++o)
        for (std::size_t p = 0; p < objects; ++p) {
            const std::size_t c = bp.object_class[o];
            const std::size_t d = bp.object_class[p];
            const std::string base = std::to_string(o) + "->" + std::to_string(p);
            if (c == d) {
                for (Int g = 0; g < bp.class_orders[c]; ++g)
                    add_morphism({o, p, g, 0}, base + "[" + std::to_string(g) + "]");
            } else if (bp.below[c][d]) {
                for (Int x = 0; x < bp.class_orders[d]; ++x)
                    for (Int y = 0; y < bp.class_orders[c]; ++y)
                        add_morphism({o, p, x, y}, base + "[" + std::to_string(x) + "," + std::to_string(y) + "]");
            }
        }

    const std::size_t n = morphisms.size();
    std::vector<std::vector<std::optional<std::size_t>>> table(n, std::vector<std::optional<std::size_t>>(n));
    for (std::size_t f = 0; f < n; ++f)
        for (std::size_t g = 0; g < n; ++g) {
            const auto [fs, ft, fx, fy] = keys[f];
            const auto [gs, gt, gx, gy] = keys[g];
            if (gt != fs) continue;
            const bool f_iso = bp.object_class[fs] == bp.object_class[ft];
            const bool g_iso = bp.object_class[gs] == bp.object_class[gt];
            Key k;
            if (f_iso && g_iso) {
                k = {gs, ft, (fx + gx) % bp.class_orders[bp.object_class[ft]], 0};
            } else if (f_iso) {
                k = {gs, ft, (fx + gx) % bp.class_orders[bp.object_class[ft]], gy};
            } else if (g_iso) {
                k = {gs, ft, fx, (fy + gx) % bp.class_orders[bp.object_class[gs]]};
            } else {
                k = {gs, ft, fx, gy};
            }
            const auto it = index.find(k);
            if (it == index.end()) throw_invalid(kModule, "blueprint order is not transitive");
            table[f][g] = it->second;
        }
    return EICategory(objects, std::move(morphisms), std::move(table));
}

EIBlueprint random_blueprint(std::mt19937_64& rng, std::size_t max_objects, const std::vector<Int>& orders) {
    EIBlueprint bp;
    const std::size_t objects = std::uniform_int_distribution<std::size_t>(1, max_objects)(rng);
    const std::size_t classes = std::uniform_int_distribution<std::size_t>(1, objects)(rng);
    std::uniform_int_distribution<std::size_t> pick_order(0, orders.size() - 1);
    for (std::size_t c = 0; c < classes; ++c) bp.class_orders.push_back(orders[pick_order(rng)]);
    std::uniform_int_distribution<std::size_t> pick_class(0, classes - 1);
    for (std::size_t o = 0; o < objects; ++o) bp.object_class.push_back(o < classes ? o : pick_class(rng));
    std::shuffle(bp.object_class.begin(), bp.object_class.end(), rng);
    bp.below.assign(classes, std::vector<bool>(classes, false));
    std::bernoulli_distribution coin(0.5);
    for (std::size_t c = 0; c < classes; ++c)
        for (std::size_t d = c + 1; d < classes; ++d) bp.below[c][d] = coin(rng);
    for (std::size_t k = 0; k < classes; ++k)
        for (std::size_t c = 0; c < classes; ++c)
            for (std::size_t d = 0; d < classes; ++d)
                if (bp.below[c][k] && bp.below[k][d]) bp.below[c][d] = true;
    return bp;
}

// ---------------------------------------------------------------------------
// Modules

Diagnostics EIModule::validate() const {
    Diagnostics out;
    auto report = [&](const std::string& msg) { out.push_back({Severity::Error, kModule, msg}); };
    if (!category) {
        report("module has no category");
        return out;
    }
    const EICategory& cat = *category;
    if (dims.size() != cat.num_objects() || action.size() != cat.num_morphisms()) {
        report("module data does not match the category");
        return out;
    }
    const bool co = variance == Variance::Covariant;
    for (std::size_t f = 0; f < cat.num_morphisms(); ++f) {
        const Morphism& m = cat.morphism(f);
        const std::size_t rows = co ? dims[m.target] : dims[m.source];
        const std::size_t cols = co ? dims[m.source] : dims[m.target];
        if (action[f].rows() != rows || action[f].cols() != cols)
            report("action of " + m.name + " has shape " + matrix_shape(action[f]));
    }
    if (!out.empty()) return out;
    for (std::size_t o = 0; o < cat.num_objects(); ++o)
        if (!(action[cat.identity(o)] == IntMatrix::identity(dims[o])))
            report("identity of object " + std::to_string(o) + " does not act as the identity");
    for (std::size_t f = 0; f < cat.num_morphisms(); ++f)
        for (std::size_t g = 0; g < cat.num_morphisms(); ++g) {
            const auto fg = cat.compose(f, g);
            if (!fg) continue;
            const IntMatrix expected = co ? action[f] * action[g] : action[g] * action[f];
            if (!(action[*fg] == expected))
                report("action is not functorial at " + cat.morphism(f).name + " o " + cat.morphism(g).name);
        }
    if (supported_on_isomorphisms)
        for (std::size_t f = 0; f < cat.num_morphisms(); ++f)
            if (!cat.is_isomorphism(f) && !is_zero_matrix(action[f]))
                report("non-isomorphism " + cat.morphism(f).name + " acts nontrivially");
    return out;
}

EIModule free_module(EICategoryPtr category, Variance variance, const std::vector<std::size_t>& ranks) {
    const EICategory& cat = *category;
    if (ranks.size() != cat.representatives().size())
        throw_invalid(kModule, "one rank per isomorphism class is required");
    EIModule m;
    m.category = category;
    m.variance = variance;
    m.supported_on_isomorphisms = true;
    m.free_ranks = ranks;

    std::vector<std::vector<std::size_t>> autos;
    for (std::size_t c : cat.representatives()) autos.push_back(cat.hom(c, c));
    auto position = [&](std::size_t cls, std::size_t f) {
        const auto& a = autos[cls];
        return static_cast<std::size_t>(std::find(a.begin(), a.end(), f) - a.begin());
    };
    for (std::size_t o = 0; o < cat.num_objects(); ++o) {
        const std::size_t cls = cat.iso_class()[o];
        m.dims.push_back(ranks[cls] * autos[cls].size());
    }
    const bool co = variance == Variance::Covariant;
    for (std::size_t f = 0; f < cat.num_morphisms(); ++f) {
        const Morphism& mf = cat.morphism(f);
        const std::size_t rows = co ? m.dims[mf.target] : m.dims[mf.source];
        const std::size_t cols = co ? m.dims[mf.source] : m.dims[mf.target];
        IntMatrix a(rows, cols);
        if (cat.is_isomorphism(f)) {
            const std::size_t cls = cat.iso_class()[mf.source];
            const std::size_t k = autos[cls].size();
            // a = transport(target)^-1 o f o transport(source), an automorphism of the representative.
            const std::size_t back = *cat.inverse(cat.transport(mf.target));
            const std::size_t aut = *cat.compose(back, *cat.compose(f, cat.transport(mf.source)));
            for (std::size_t i = 0; i < ranks[cls]; ++i)
                for (std::size_t u = 0; u < k; ++u) {
                    const std::size_t img = co ? *cat.compose(aut, autos[cls][u]) : *cat.compose(autos[cls][u], aut);
                    a(i * k + position(cls, img), i * k + u) = 1;
                }
        }
        m.action.push_back(std::move(a));
    }
    return m;
}

namespace {

struct TensorLayout {
    std::vector<std::size_t> offset;
    std::size_t total = 0;
};

TensorLayout tensor_layout(const EIModule& x, const EIModule& y, const std::vector<std::size_t>& objects) {
    TensorLayout t;
    t.offset.assign(x.dims.size(), 0);
    for (std::size_t o : objects) {
        t.offset[o] = t.total;
        t.total += x.dims[o] * y.dims[o];
    }
    return t;
}

// X(f) x (x) y - x (x) Y(f) y for f : o -> p, x in X(p), y in Y(o).
void balance_relations(const EIModule& x, const EIModule& y, std::size_t f, const TensorLayout& layout,
                       std::set<Exponents>& out) {
    const Morphism& m = x.category->morphism(f);
    const std::size_t o = m.source;
    const std::size_t p = m.target;
    const IntMatrix& xf = x.action[f];
    const IntMatrix& yf = y.action[f];
    for (std::size_t xi = 0; xi < x.dims[p]; ++xi)
        for (std::size_t yj = 0; yj < y.dims[o]; ++yj) {
            Exponents rel(layout.total, 0);
            for (std::size_t i = 0; i < x.dims[o]; ++i)
                if (xf(i, xi) != 0) rel[layout.offset[o] + i * y.dims[o] + yj] += xf(i, xi);
            for (std::size_t j = 0; j < y.dims[p]; ++j)
                if (yf(j, yj) != 0) rel[layout.offset[p] + xi * y.dims[p] + j] -= yf(j, yj);
            if (!is_zero(rel)) out.insert(std::move(rel));
        }
}

}  // namespace

TensorResult eimodule_compose(const EIModule& x, const EIModule& y) {
    if (x.variance != Variance::Contravariant || y.variance != Variance::Covariant)
        throw_invalid(kModule, "composition needs a contravariant and a covariant module");
    if (!x.supported_on_isomorphisms || !y.supported_on_isomorphisms)
        throw_invalid(kModule, "composition formula needs modules supported on isomorphisms");
    if (!x.category || x.category != y.category) throw_invalid(kModule, "modules live over different categories");
    for (const EIModule* m : {&x, &y}) {
        const Diagnostics d = m->validate();
        if (has_errors(d)) throw_invalid(kModule, d.front().message);
    }
    const EICategory& cat = *x.category;
    TensorResult result;

    for (std::size_t c : cat.representatives()) {
        const TensorLayout layout = tensor_layout(x, y, {c});
        std::set<Exponents> rels;
        for (std::size_t f : cat.hom(c, c)) balance_relations(x, y, f, layout, rels);
        result.components.push_back(cokernel(layout.total, {rels.begin(), rels.end()}));
    }
    result.direct_sum = direct_sum(result.components);

    std::vector<std::size_t> all(cat.num_objects());
    std::iota(all.begin(), all.end(), 0);
    const TensorLayout layout = tensor_layout(x, y, all);
    std::set<Exponents> rels;
    for (std::size_t f = 0; f < cat.num_morphisms(); ++f) balance_relations(x, y, f, layout, rels);
    result.coequalizer = cokernel(layout.total, {rels.begin(), rels.end()});
    result.agrees = result.coequalizer == result.direct_sum;
    return result;
}

// ---------------------------------------------------------------------------
// Bimodules and shadows

Diagnostics EIBimodule::validate() const {
    Diagnostics out;
    auto report = [&](const std::string& msg) { out.push_back({Severity::Error, kModule, msg}); };
    if (!category) {
        report("bimodule has no category");
        return out;
    }
    const EICategory& cat = *category;
    const std::size_t n = cat.num_objects();
    const std::size_t nm = cat.num_morphisms();
    if (dims.size() != n || left.size() != nm || right.size() != nm) {
        report("bimodule data does not match the category");
        return out;
    }
    for (std::size_t f = 0; f < nm; ++f) {
        const Morphism& m = cat.morphism(f);
        if (left[f].size() != n || right[f].size() != n) {
            report("action list of " + m.name + " has the wrong length");
            continue;
        }
        for (std::size_t o = 0; o < n; ++o) {
            if (left[f][o].rows() != dims[m.target][o] || left[f][o].cols() != dims[m.source][o])
                report("left action of " + m.name + " has shape " + matrix_shape(left[f][o]));
            if (right[f][o].rows() != dims[o][m.source] || right[f][o].cols() != dims[o][m.target])
                report("right action of " + m.name + " has shape " + matrix_shape(right[f][o]));
        }
    }
    if (!out.empty()) return out;
    for (std::size_t f = 0; f < nm; ++f)
        for (std::size_t g = 0; g < nm; ++g) {
            const auto fg = cat.compose(f, g);
            if (fg)
                for (std::size_t o = 0; o < n; ++o) {
                    if (!(left[*fg][o] == left[f][o] * left[g][o]))
                        report("left action is not functorial at " + cat.morphism(f).name + " o " + cat.morphism(g).name);
                    if (!(right[*fg][o] == right[g][o] * right[f][o]))
                        report("right action is not functorial at " + cat.morphism(f).name + " o " + cat.morphism(g).name);
                }
            // (f z) g = f (z g) for z in Z(s_f, t_g).
            const Morphism& mf = cat.morphism(f);
            const Morphism& mg = cat.morphism(g);
            if (!(left[f][mg.source] * right[g][mf.source] == right[g][mf.target] * left[f][mg.target]))
                report("left and right actions do not commute at " + mf.name + ", " + mg.name);
        }
    return out;
}

EIBimodule hom_bimodule(EICategoryPtr category) {
    const EICategory& cat = *category;
    const std::size_t n = cat.num_objects();
    EIBimodule z;
    z.category = category;
    std::vector<std::vector<std::vector<std::size_t>>> basis(n, std::vector<std::vector<std::size_t>>(n));
    z.dims.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            basis[a][b] = cat.hom(b, a);
            z.dims[a][b] = basis[a][b].size();
        }
    auto pos = [&](std::size_t a, std::size_t b, std::size_t f) {
        const auto& v = basis[a][b];
        return static_cast<std::size_t>(std::find(v.begin(), v.end(), f) - v.begin());
    };
    for (std::size_t f = 0; f < cat.num_morphisms(); ++f) {
        const Morphism& m = cat.morphism(f);
        std::vector<IntMatrix> l;
        std::vector<IntMatrix> r;
        for (std::size_t o = 0; o < n; ++o) {
            IntMatrix lm(z.dims[m.target][o], z.dims[m.source][o]);
            for (std::size_t j = 0; j < basis[m.source][o].size(); ++j)
                lm(pos(m.target, o, *cat.compose(f, basis[m.source][o][j])), j) = 1;
            l.push_back(std::move(lm));
            IntMatrix rm(z.dims[o][m.source], z.dims[o][m.target]);
            for (std::size_t j = 0; j < basis[o][m.target].size(); ++j)
                rm(pos(o, m.source, *cat.compose(basis[o][m.target][j], f)), j) = 1;
            r.push_back(std::move(rm));
        }
        z.left.push_back(std::move(l));
        z.right.push_back(std::move(r));
    }
    return z;
}

EIBimodule twisted_bimodule(EICategoryPtr category, const std::vector<std::size_t>& phi) {
    const EICategory& cat = *category;
    if (cat.num_objects() != 1) throw_invalid(kModule, "twisted bimodule needs a one-object category");
    const std::size_t n = cat.num_morphisms();
    if (phi.size() != n) throw_invalid(kModule, "twist must assign an image to every morphism");
    for (std::size_t f = 0; f < n; ++f)
        for (std::size_t g = 0; g < n; ++g)
            if (phi.at(f) >= n || phi.at(g) >= n || phi[*cat.compose(f, g)] != *cat.compose(phi[f], phi[g]))
                throw_invalid(kModule, "twist is not an endomorphism");
    EIBimodule z;
    z.category = category;
    z.dims = {{n}};
    for (std::size_t f = 0; f < n; ++f) {
        IntMatrix l(n, n);
        IntMatrix r(n, n);
        for (std::size_t u = 0; u < n; ++u) {
            l(*cat.compose(f, u), u) = 1;
            r(*cat.compose(u, phi[f]), u) = 1;
        }
        z.left.push_back({std::move(l)});
        z.right.push_back({std::move(r)});
    }
    return z;
}

AbelianInvariants eimodule_shadow(const EIBimodule& z) {
    const Diagnostics d = z.validate();
    if (has_errors(d)) throw_invalid(kModule, d.front().message);
    const EICategory& cat = *z.category;
    const std::size_t n = cat.num_objects();
    std::vector<std::size_t> offset(n, 0);
    std::size_t total = 0;
    for (std::size_t a = 0; a < n; ++a) {
        offset[a] = total;
        total += z.dims[a][a];
    }
    // f : a -> b acting on z in Z(a, b): f z in Z(b, b) against z f in Z(a, a).
    std::set<Exponents> rels;
    for (std::size_t f = 0; f < cat.num_morphisms(); ++f) {
        const std::size_t a = cat.morphism(f).source;
        const std::size_t b = cat.morphism(f).target;
        const IntMatrix& l = z.left[f][b];
        const IntMatrix& r = z.right[f][a];
        for (std::size_t j = 0; j < z.dims[a][b]; ++j) {
            Exponents rel(total, 0);
            for (std::size_t i = 0; i < z.dims[b][b]; ++i) rel[offset[b] + i] += l(i, j);
            for (std::size_t i = 0; i < z.dims[a][a]; ++i) rel[offset[a] + i] -= r(i, j);
            if (!is_zero(rel)) rels.insert(std::move(rel));
        }
    }
    return cokernel(total, {rels.begin(), rels.end()});
}

std::optional<AbelianInvariants> group_ring_shadow(const ShadowClassSet& classes) {
    const auto size = classes.size();
    if (!size) return std::nullopt;
    return AbelianInvariants{static_cast<std::size_t>(*size), {}};
}

// ---------------------------------------------------------------------------
// Duals

GroupRingElement determinant(const GroupRingMatrix& m) {
    if (m.rows() != m.cols()) throw_invalid(kModule, "determinant of a non-square matrix");
    const AbelianStructure& g = m.group();
    const std::size_t n = m.rows();
    if (n == 0) return GroupRingElement::monomial(g.identity());
    // Laplace expansion along the first row over the remaining columns.
    std::vector<std::size_t> cols(n);
    std::iota(cols.begin(), cols.end(), 0);
    auto rec = [&](auto&& self, std::size_t row, const std::vector<std::size_t>& free) -> GroupRingElement {
        if (row == n) return GroupRingElement::monomial(g.identity());
        GroupRingElement acc;
        for (std::size_t k = 0; k < free.size(); ++k) {
            if (m(row, free[k]).is_zero()) continue;
            std::vector<std::size_t> rest = free;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
            const GroupRingElement term = multiply(g, m(row, free[k]), self(self, row + 1, rest));
            if (k % 2 == 0)
                acc += term;
            else
                acc -= term;
        }
        return acc;
    };
    return rec(rec, 0, cols);
}

std::optional<GroupRingMatrix> inverse_matrix(const GroupRingMatrix& m) {
    const AbelianStructure& g = m.group();
    const GroupRingElement det = determinant(m);
    if (det.terms().size() != 1) return std::nullopt;
    const auto& [elem, coeff] = *det.terms().begin();
    if (coeff != 1 && coeff != -1) return std::nullopt;
    const GroupRingElement det_inv = GroupRingElement::monomial(g.reduce(scale(elem, -1)), coeff);
    const std::size_t n = m.rows();
    GroupRingMatrix inv(m.group_ptr(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // Cofactor of (j, i).
            GroupRingMatrix minor(m.group_ptr(), n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            GroupRingElement cof = multiply(g, det_inv, determinant(minor));
            inv(i, j) = (i + j) % 2 == 0 ? cof : -cof;
        }
    return inv;
}

DualData build_dual(const FreeModule& f) {
    const GroupRingMatrix& b = f.basis;
    if (b.rows() != b.cols()) throw_invalid(kModule, "chosen basis matrix is not square");
    const auto inv = inverse_matrix(b);
    if (!inv) throw_invalid(kModule, "chosen basis is not a basis: determinant is not a unit +-g");
    DualData d;
    d.dual_basis = *inv;
    d.coevaluation = b * d.dual_basis;
    d.evaluation = GroupRingMatrix::identity(f.group, b.rows());
    d.pairing = d.dual_basis * b;
    return d;
}

bool verify_snake(const FreeModule& f, const DualData& d) {
    const std::size_t n = f.basis.rows();
    for (const GroupRingMatrix* m : {&d.dual_basis, &d.coevaluation, &d.evaluation, &d.pairing})
        if (m->rows() != n || m->cols() != n) return false;
    // F -> F (x) F* (x) F -> F and F* -> F* (x) F (x) F* -> F*.
    return (d.coevaluation * d.evaluation).is_identity() && (d.evaluation * d.coevaluation).is_identity() &&
           d.pairing.is_identity();
}

std::pair<GroupRingMatrix, GroupRingMatrix> random_basis(GroupPtr group, std::size_t rank, std::mt19937_64& rng,
                                                         int factors) {
    const AbelianStructure& g = *group;
    GroupRingMatrix b = GroupRingMatrix::identity(group, rank);
    GroupRingMatrix inv = b;
    std::uniform_int_distribution<Int> exp(-2, 2);
    std::uniform_int_distribution<Int> coeff(-2, 2);
    auto random_element = [&]() {
        Exponents v(g.num_generators());
        for (auto& e : v) e = exp(rng);
        return g.reduce(v);
    };
    if (rank == 0) return {b, inv};
    std::uniform_int_distribution<std::size_t> idx(0, rank - 1);
    for (int step = 0; step < factors; ++step) {
        GroupRingMatrix e = GroupRingMatrix::identity(group, rank);
        GroupRingMatrix e_inv = e;
        const std::size_t i = idx(rng);
        const std::size_t j = idx(rng);
        if (i != j) {
            GroupRingElement r;
            for (int t = 0; t < 2; ++t) r.add_term(random_element(), coeff(rng));
            e(i, j) = r;
            e_inv(i, j) = -r;
        } else {
            const Exponents u = random_element();
            const Int sign = coeff(rng) < 0 ? -1 : 1;
            e(i, i) = GroupRingElement::monomial(u, sign);
            e_inv(i, i) = GroupRingElement::monomial(g.reduce(scale(u, -1)), sign);
        }
        b = b * e;
        inv = e_inv * inv;
    }
    return {b, inv};
}

std::vector<FreeModule> free_components(const EIModule& m) {
    if (m.free_ranks.size() != m.category->representatives().size())
        throw_invalid(kModule, "module was not built as a free module");
    std::vector<FreeModule> out;
    for (std::size_t cls = 0; cls < m.free_ranks.size(); ++cls) {
        GroupPtr g = m.category->automorphism_group(cls);
        out.push_back({g, GroupRingMatrix::identity(g, m.free_ranks[cls])});
    }
    return out;
}

EIModule dual_module(const EIModule& m) {
    if (m.free_ranks.size() != m.category->representatives().size())
        throw_invalid(kModule, "module was not built as a free module");
    return free_module(m.category,
                       m.variance == Variance::Covariant ? Variance::Contravariant : Variance::Covariant, m.free_ranks);
}

}  // namespace reltrace
