#include "reltrace/complexes.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace reltrace {

namespace {

constexpr const char* kModule = "complexes";

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

Simplex face(const Simplex& s, std::size_t i) {
    Simplex f;
    for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i) f.push_back(s[j]);
    return f;
}

// Groups `members` (vertex ids) into connected components along the given edges.
std::vector<std::vector<std::size_t>> group_components(const std::vector<std::size_t>& members,
                                                       const std::vector<Simplex>& edges, std::size_t n) {
    UnionFind uf(n);
    for (const auto& e : edges) uf.unite(e[0], e[1]);
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t v : members) by_root[uf.find(v)].push_back(v);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, vs] : by_root) {
        std::sort(vs.begin(), vs.end());
        out.push_back(std::move(vs));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

}  // namespace

// ---------------------------------------------------------------- SimplicialPair

SimplicialPair::SimplicialPair(std::vector<std::string> vertex_names,
                               const std::vector<std::vector<std::size_t>>& simplices,
                               const std::vector<std::vector<std::size_t>>& a_simplices)
    : names_(std::move(vertex_names)) {
    std::vector<std::set<Simplex>> by_dim(1);
    for (std::size_t v = 0; v < names_.size(); ++v) by_dim[0].insert(Simplex{v});

    auto normalize = [&](std::vector<std::size_t> s, const char* which) -> std::optional<Simplex> {
        if (s.empty()) {
            issues_.push_back({Severity::Error, kModule, std::string("empty ") + which + " simplex"});
            return std::nullopt;
        }
        for (std::size_t v : s)
            if (v >= names_.size()) {
                issues_.push_back({Severity::Error, kModule, std::string(which) + " simplex uses an unknown vertex"});
                return std::nullopt;
            }
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
            issues_.push_back({Severity::Error, kModule, std::string(which) + " simplex repeats a vertex"});
            return std::nullopt;
        }
        return s;
    };

    for (const auto& raw : simplices) {
        auto s = normalize(raw, "listed");
        if (!s) continue;
        if (by_dim.size() < s->size()) by_dim.resize(s->size());
        by_dim[s->size() - 1].insert(*s);
    }
    simplices_.resize(by_dim.size());
    index_.resize(by_dim.size());
    a_flags_.resize(by_dim.size());
    for (std::size_t k = 0; k < by_dim.size(); ++k) {
        simplices_[k].assign(by_dim[k].begin(), by_dim[k].end());
        for (std::size_t i = 0; i < simplices_[k].size(); ++i) index_[k][simplices_[k][i]] = i;
        a_flags_[k].assign(simplices_[k].size(), false);
    }
    for (const auto& raw : a_simplices) {
        auto s = normalize(raw, "A");
        if (!s) continue;
        const auto idx = index_of(*s);
        if (!idx) {
            issues_.push_back({Severity::Error, kModule, "A simplex " + format(*s) + " is not a simplex of B"});
            continue;
        }
        a_flags_[s->size() - 1][*idx] = true;
    }
    // Drop trailing empty dimensions.
    while (simplices_.size() > 1 && simplices_.back().empty()) {
        simplices_.pop_back();
        index_.pop_back();
        a_flags_.pop_back();
    }
    if (names_.empty()) {
        simplices_.clear();
        index_.clear();
        a_flags_.clear();
    }
}

int SimplicialPair::dimension_of_A() const {
    for (std::size_t k = simplices_.size(); k-- > 0;)
        if (std::find(a_flags_[k].begin(), a_flags_[k].end(), true) != a_flags_[k].end()) return static_cast<int>(k);
    return -1;
}

const std::vector<Simplex>& SimplicialPair::simplices(std::size_t k) const {
    static const std::vector<Simplex> kEmpty;
    return k < simplices_.size() ? simplices_[k] : kEmpty;
}

std::optional<std::size_t> SimplicialPair::index_of(const Simplex& s) const {
    if (s.empty() || s.size() > index_.size()) return std::nullopt;
    const auto& m = index_[s.size() - 1];
    const auto it = m.find(s);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

bool SimplicialPair::contains_in_A(const Simplex& s) const {
    const auto idx = index_of(s);
    return idx && a_flags_[s.size() - 1][*idx];
}

std::string SimplicialPair::format(const Simplex& s) const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << (s[i] < names_.size() ? names_[s[i]] : "?");
    os << "}";
    return os.str();
}

std::pair<Simplex, int> VertexSelfMap::apply(const Simplex& s) const {
    Simplex img;
    for (std::size_t v : s) img.push_back(image.at(v));
    // Sign of the sorting permutation by counting inversions.
    int sign = 1;
    for (std::size_t i = 0; i < img.size(); ++i)
        for (std::size_t j = i + 1; j < img.size(); ++j) {
            if (img[i] == img[j]) sign = 0;
            if (img[i] > img[j]) sign = -sign;
        }
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return {img, sign};
}

// ---------------------------------------------------------------- validation

Diagnostics validate_pair(const SimplicialPair& pair) {
    Diagnostics d = pair.construction_issues();
    if (pair.num_vertices() == 0) d.push_back({Severity::Error, kModule, "complex has no vertices"});
    for (int k = 1; k <= pair.dimension(); ++k) {
        const auto& list = pair.simplices(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < list.size(); ++i)
            for (std::size_t f = 0; f < list[i].size(); ++f) {
                const Simplex fc = face(list[i], f);
                if (!pair.contains(fc)) {
                    d.push_back({Severity::Error, kModule,
                                 "face-closure violated: face " + pair.format(fc) + " of " + pair.format(list[i]) +
                                     " is not listed"});
                } else if (pair.in_A(static_cast<std::size_t>(k), i) && !pair.contains_in_A(fc)) {
                    d.push_back({Severity::Error, kModule,
                                 "A is not a subcomplex: face " + pair.format(fc) + " of A-simplex " +
                                     pair.format(list[i]) + " is not in A"});
                }
            }
    }
    return d;
}

Diagnostics validate_map(const SimplicialPair& pair, const VertexSelfMap& f) {
    Diagnostics d;
    if (f.image.size() != pair.num_vertices()) {
        d.push_back({Severity::Error, kModule, "vertex map must assign an image to every vertex"});
        return d;
    }
    for (std::size_t v = 0; v < f.image.size(); ++v) {
        if (f.image[v] >= pair.num_vertices()) {
            d.push_back({Severity::Error, kModule, "vertex map sends a vertex outside the complex"});
            return d;
        }
    }
    for (int k = 0; k <= pair.dimension(); ++k) {
        const auto& list = pair.simplices(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < list.size(); ++i) {
            const Simplex img = f.apply(list[i]).first;
            if (!pair.contains(img)) {
                d.push_back({Severity::Error, kModule,
                             "not simplicial: image of " + pair.format(list[i]) + " is not a simplex"});
            } else if (pair.in_A(static_cast<std::size_t>(k), i) && !pair.contains_in_A(img)) {
                d.push_back({Severity::Error, kModule,
                             "not a relative map: A-simplex " + pair.format(list[i]) + " maps outside A"});
            }
        }
    }
    return d;
}

// ---------------------------------------------------------------- components

ComponentData components(const SimplicialPair& pair) {
    ComponentData c;
    const std::size_t n = pair.num_vertices();
    std::vector<std::size_t> all(n), a_vertices;
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t v = 0; v < n; ++v)
        if (pair.vertex_in_A(v)) a_vertices.push_back(v);
    const auto& edges = pair.simplices(1);
    std::vector<Simplex> a_edges;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (pair.in_A(1, i)) a_edges.push_back(edges[i]);

    c.b_components = group_components(all, edges, n);
    c.a_components = group_components(a_vertices, a_edges, n);
    c.b_of_vertex.assign(n, 0);
    c.a_of_vertex.assign(n, std::nullopt);
    for (std::size_t b = 0; b < c.b_components.size(); ++b)
        for (std::size_t v : c.b_components[b]) c.b_of_vertex[v] = b;
    for (std::size_t a = 0; a < c.a_components.size(); ++a) {
        for (std::size_t v : c.a_components[a]) c.a_of_vertex[v] = a;
        c.a_in_b.push_back(c.b_of_vertex[c.a_components[a].front()]);
    }
    c.b_has_complement.assign(c.b_components.size(), false);
    for (int k = 0; k <= pair.dimension(); ++k) {
        const auto& list = pair.simplices(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < list.size(); ++i)
            if (!pair.in_A(static_cast<std::size_t>(k), i)) c.b_has_complement[c.b_of_vertex[list[i].front()]] = true;
    }
    for (std::size_t a = 0; a < c.a_components.size(); ++a) c.skeleton.push_back({true, a});
    for (std::size_t b = 0; b < c.b_components.size(); ++b)
        if (c.b_has_complement[b]) c.skeleton.push_back({false, b});
    return c;
}

// ---------------------------------------------------------------- chain complexes

std::optional<std::size_t> ChainComplexZ::index_of(std::size_t k, const Simplex& s) const {
    if (k >= basis.size()) return std::nullopt;
    const auto it = std::lower_bound(basis[k].begin(), basis[k].end(), s);
    if (it == basis[k].end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - basis[k].begin());
}

bool ChainComplexZ::boundary_squares_to_zero() const {
    for (std::size_t k = 2; k < boundary.size(); ++k)
        if (!(boundary[k - 1] * boundary[k]).is_zero()) return false;
    return true;
}

namespace {

// Complex on the simplices accepted by `take`; faces outside it are dropped.
template <typename Pred>
ChainComplexZ build_complex(const SimplicialPair& pair, Pred take) {
    ChainComplexZ c;
    const int dim = pair.dimension();
    if (dim < 0) return c;
    c.basis.resize(static_cast<std::size_t>(dim) + 1);
    for (std::size_t k = 0; k < c.basis.size(); ++k) {
        const auto& list = pair.simplices(k);
        for (std::size_t i = 0; i < list.size(); ++i)
            if (take(k, i)) c.basis[k].push_back(list[i]);
    }
    c.boundary.resize(c.basis.size());
    c.boundary[0] = IntMatrix(0, c.basis[0].size());
    for (std::size_t k = 1; k < c.basis.size(); ++k) {
        IntMatrix d(c.basis[k - 1].size(), c.basis[k].size());
        for (std::size_t j = 0; j < c.basis[k].size(); ++j)
            for (std::size_t f = 0; f <= k; ++f) {
                const auto row = c.index_of(k - 1, face(c.basis[k][j], f));
                if (row) d(*row, j) += (f % 2 == 0) ? 1 : -1;
            }
        c.boundary[k] = std::move(d);
    }
    while (c.basis.size() > 1 && c.basis.back().empty()) {
        c.basis.pop_back();
        c.boundary.pop_back();
    }
    return c;
}

}  // namespace

RationalChainData rational_chain_data(const SimplicialPair& pair) {
    RationalChainData r;
    r.B = build_complex(pair, [](std::size_t, std::size_t) { return true; });
    r.A = build_complex(pair, [&](std::size_t k, std::size_t i) { return pair.in_A(k, i); });
    r.relative = build_complex(pair, [&](std::size_t k, std::size_t i) { return !pair.in_A(k, i); });
    return r;
}

std::vector<IntMatrix> simplicial_chain_map(const ChainComplexZ& complex, const VertexSelfMap& f) {
    std::vector<IntMatrix> out;
    for (std::size_t k = 0; k < complex.basis.size(); ++k) {
        IntMatrix m(complex.rank(k), complex.rank(k));
        for (std::size_t j = 0; j < complex.rank(k); ++j) {
            const auto [img, sign] = f.apply(complex.basis[k][j]);
            if (sign == 0) continue;
            const auto row = complex.index_of(k, img);
            if (row) m(*row, j) = sign;
        }
        out.push_back(std::move(m));
    }
    return out;
}

Int chain_lefschetz(const std::vector<IntMatrix>& map, const std::vector<std::vector<bool>>* keep) {
    Int total = 0;
    for (std::size_t k = 0; k < map.size(); ++k) {
        Int tr = 0;
        for (std::size_t i = 0; i < map[k].rows(); ++i)
            if (!keep || (*keep)[k][i]) tr = add_checked(tr, map[k](i, i));
        total = k % 2 == 0 ? add_checked(total, tr) : sub_checked(total, tr);
    }
    return total;
}

Int homology_lefschetz(const std::vector<IntMatrix>& boundary, const std::vector<IntMatrix>& map) {
    Rational total = 0;
    for (std::size_t k = 0; k < map.size(); ++k) {
        const std::size_t n = map[k].rows();
        if (n == 0) continue;
        std::vector<std::vector<Rational>> cycles;
        if (k < boundary.size() && boundary[k].rows() > 0) {
            cycles = kernel_basis(RationalMatrix(boundary[k]));
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<Rational> e(n);
                e[i] = 1;
                cycles.push_back(std::move(e));
            }
        }
        std::vector<std::vector<Rational>> columns;
        std::size_t num_boundary_cols = 0;
        if (k + 1 < boundary.size()) {
            const RationalMatrix up(boundary[k + 1]);
            for (std::size_t j = 0; j < up.cols(); ++j) columns.push_back(up.col(j));
            num_boundary_cols = columns.size();
        }
        columns.insert(columns.end(), cycles.begin(), cycles.end());
        // Pivot columns of [boundaries | cycles] give a basis of the cycles
        // extending one of the boundaries.
        const std::vector<std::size_t> chosen = pivot_columns(from_columns(n, columns));
        std::vector<std::vector<Rational>> basis;
        for (std::size_t j : chosen) basis.push_back(columns[j]);
        const RationalMatrix basis_matrix = from_columns(n, basis);
        const RationalMatrix f(map[k]);
        Rational tr = 0;
        for (std::size_t b = 0; b < chosen.size(); ++b) {
            if (chosen[b] < num_boundary_cols) continue;
            const auto coords = solve(basis_matrix, f.apply(basis[b]));
            if (!coords) throw_failure("invariants", "chain map does not preserve cycles");
            tr += (*coords)[b];
        }
        total += k % 2 == 0 ? tr : Rational(-tr);
    }
    if (denominator(total) != 1) throw_failure("invariants", "homology Lefschetz number is not an integer");
    return static_cast<Int>(numerator(total));
}

ChainComplexZ restrict_complex(const ChainComplexZ& complex, const std::vector<std::vector<bool>>& keep) {
    ChainComplexZ r;
    r.basis.resize(complex.basis.size());
    std::vector<std::vector<std::size_t>> kept(complex.basis.size());
    for (std::size_t k = 0; k < complex.basis.size(); ++k)
        for (std::size_t i = 0; i < complex.basis[k].size(); ++i)
            if (keep[k][i]) {
                kept[k].push_back(i);
                r.basis[k].push_back(complex.basis[k][i]);
            }
    r.boundary.resize(complex.basis.size());
    for (std::size_t k = 0; k < complex.basis.size(); ++k) {
        const std::size_t rows = k == 0 ? 0 : kept[k - 1].size();
        IntMatrix d(rows, kept[k].size());
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < kept[k].size(); ++j) d(i, j) = complex.boundary[k](kept[k - 1][i], kept[k][j]);
        r.boundary[k] = std::move(d);
    }
    return r;
}

std::vector<IntMatrix> restrict_map(const std::vector<IntMatrix>& map, const std::vector<std::vector<bool>>& keep) {
    std::vector<IntMatrix> out;
    for (std::size_t k = 0; k < map.size(); ++k) {
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < keep[k].size(); ++i)
            if (keep[k][i]) kept.push_back(i);
        IntMatrix m(kept.size(), kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i)
            for (std::size_t j = 0; j < kept.size(); ++j) m(i, j) = map[k](kept[i], kept[j]);
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace reltrace
