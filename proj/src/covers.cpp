#include "reltrace/covers.hpp"

#include <algorithm>

namespace reltrace {

namespace {

constexpr const char* kModule = "covers";

bool selected(const SimplicialPair& pair, std::size_t k, std::size_t i, CellSelection s) {
    switch (s) {
        case CellSelection::A: return pair.in_A(k, i);
        case CellSelection::Absolute: return true;
        case CellSelection::Relative: return !pair.in_A(k, i);
    }
    return false;
}

}  // namespace

int EquivariantChainComplex::top_degree() const {
    for (std::size_t k = cells.size(); k-- > 0;)
        if (!cells[k].empty()) return static_cast<int>(k);
    return -1;
}

bool EquivariantChainComplex::boundary_squares_to_zero() const {
    for (std::size_t k = 2; k < boundary.size(); ++k)
        if (!(boundary[k - 1] * boundary[k]).is_zero()) return false;
    return true;
}

std::vector<IntMatrix> EquivariantChainComplex::augmented_boundary() const {
    std::vector<IntMatrix> out;
    for (const auto& d : boundary) out.push_back(d.augmented());
    return out;
}

std::vector<IntMatrix> EquivariantChainMap::augmented() const {
    std::vector<IntMatrix> out;
    for (const auto& m : degree) out.push_back(m.augmented());
    return out;
}

std::optional<std::size_t> chain_map_defect(const EquivariantChainComplex& complex, const EquivariantChainMap& map) {
    if (map.degree.size() != complex.boundary.size())
        throw_invalid(kModule, "chain map and complex have different lengths");
    for (std::size_t k = 1; k < complex.boundary.size(); ++k) {
        const GroupRingMatrix lhs = complex.boundary[k] * map.degree[k];
        const GroupRingMatrix rhs = map.degree[k - 1] * complex.boundary[k];
        if (!(lhs == rhs)) return k;
    }
    return std::nullopt;
}

TraceVector reidemeister_trace(const EquivariantChainMap& map, const ShadowClassSet& classes) {
    TraceVector r;
    for (std::size_t k = 0; k < map.degree.size(); ++k) {
        const TraceVector t = stallings_trace(map.degree[k], classes);
        if (k % 2 == 0)
            r += t;
        else
            r -= t;
    }
    return r;
}

EquivariantChainComplex lift_chain_complex(const SimplicialPair& pair, const Frame& frame, CellSelection selection) {
    EquivariantChainComplex c;
    c.group = frame.group;
    const AbelianStructure& g = *frame.group;
    const int dim = pair.dimension();
    std::vector<std::vector<Simplex>> basis(dim < 0 ? 0 : static_cast<std::size_t>(dim) + 1);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const auto& list = pair.simplices(k);
        for (std::size_t i = 0; i < list.size(); ++i)
            if (frame.contains(list[i][0]) && selected(pair, k, i, selection)) basis[k].push_back(list[i]);
    }
    while (!basis.empty() && basis.back().empty()) basis.pop_back();
    if (basis.empty()) basis.resize(1);
    for (const auto& cells : basis) {
        std::vector<std::string> names;
        for (const auto& s : cells) names.push_back(pair.format(s));
        c.cells.push_back(std::move(names));
    }
    c.simplices = basis;
    auto index_in = [&](std::size_t k, const Simplex& s) -> std::optional<std::size_t> {
        const auto it = std::lower_bound(basis[k].begin(), basis[k].end(), s);
        if (it == basis[k].end() || *it != s) return std::nullopt;
        return static_cast<std::size_t>(it - basis[k].begin());
    };
    c.boundary.emplace_back(c.group, 0, basis[0].size());
    for (std::size_t k = 1; k < basis.size(); ++k) {
        GroupRingMatrix d(c.group, basis[k - 1].size(), basis[k].size());
        for (std::size_t j = 0; j < basis[k].size(); ++j) {
            const Simplex& s = basis[k][j];
            for (std::size_t f = 0; f <= k; ++f) {
                Simplex face;
                for (std::size_t t = 0; t <= k; ++t)
                    if (t != f) face.push_back(s[t]);
                const auto row = index_in(k - 1, face);
                if (!row) continue;
                const Exponents shift = f == 0 ? g.reduce(frame.edge_exponents(s[0], s[1])) : g.identity();
                d(*row, j).add_term(shift, f % 2 == 0 ? 1 : -1);
            }
        }
        c.boundary.push_back(std::move(d));
    }
    if (!c.boundary_squares_to_zero()) throw_failure(kModule, "lifted boundary does not square to zero");
    return c;
}

EquivariantChainMap lift_chain_map(const Frame& frame, const FrameMap& induced, const VertexSelfMap& f,
                                   const EquivariantChainComplex& complex) {
    EquivariantChainMap m;
    m.twist = induced.abelian;
    const AbelianStructure& g = *complex.group;
    const auto& basis = complex.simplices;
    if (basis.size() != complex.cells.size()) throw_invalid(kModule, "complex carries no simplices to map");
    for (std::size_t k = 0; k < basis.size(); ++k) {
        GroupRingMatrix mk(complex.group, basis[k].size(), basis[k].size(), m.twist);
        for (std::size_t j = 0; j < basis[k].size(); ++j) {
            const Simplex& s = basis[k][j];
            const auto [img, sign] = f.apply(s);
            if (sign == 0) continue;
            const auto it = std::lower_bound(basis[k].begin(), basis[k].end(), img);
            if (it == basis[k].end() || *it != img) continue;
            const std::size_t row = static_cast<std::size_t>(it - basis[k].begin());
            const Exponents shift =
                g.reduce(sub(induced.correction_exponents.at(s[0]), frame.edge_exponents(img[0], f(s[0]))));
            mk(row, j).add_term(shift, sign);
        }
        m.degree.push_back(std::move(mk));
    }
    if (const auto k = chain_map_defect(complex, m))
        throw_failure(kModule, "lifted map fails the twisted chain-map equation in degree " + std::to_string(*k));
    return m;
}

void solve_top_cells(const EquivariantChainComplex& complex, EquivariantChainMap& map,
                     const std::vector<bool>& derive_columns) {
    const int top = complex.top_degree();
    if (std::none_of(derive_columns.begin(), derive_columns.end(), [](bool b) { return b; })) return;
    if (top < 1) throw_invalid(kModule, "cell images can only be derived in a positive top degree");
    const std::size_t k = static_cast<std::size_t>(top);
    const GroupRingMatrix& d = complex.boundary[k];
    if (derive_columns.size() != d.cols()) throw_invalid(kModule, "derive flags do not match the top-degree cells");
    const InjectivityCertificate cert = certify_injective(d);
    if (!cert.certified)
        throw_failure(kModule, "non-unique solution: top-degree boundary not certified injective (" + cert.detail + ")");
    const GroupRingMatrix rhs = map.degree[k - 1] * d;
    for (std::size_t j = 0; j < d.cols(); ++j) {
        if (!derive_columns[j]) continue;
        const auto x = solve_linear(d, rhs.col(j));
        if (!x) throw_failure(kModule, "no solution for the image of top cell " + complex.cells[k][j]);
        map.degree[k].set_col(j, *x);
    }
}

}  // namespace reltrace
