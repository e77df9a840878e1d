#include "reltrace/cellular.hpp"

#include <algorithm>
#include <set>

namespace reltrace {

namespace {

constexpr const char* kModule = "complexes";

// Re-express a word over all generators in A-generator indices.
Word to_A_word(const Word& w, const std::vector<std::optional<std::size_t>>& a_index, const std::string& where) {
    std::vector<Letter> out;
    for (const auto& l : w.letters()) {
        if (l.generator >= a_index.size() || !a_index[l.generator])
            throw_invalid(kModule, where + " uses a generator outside A");
        out.push_back({*a_index[l.generator], l.exponent});
    }
    return Word(std::move(out));
}

GroupRingMatrix restrict_matrix(const GroupRingMatrix& m, const std::vector<bool>& rows, const std::vector<bool>& cols) {
    std::vector<std::size_t> r, c;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i]) r.push_back(i);
    for (std::size_t j = 0; j < cols.size(); ++j)
        if (cols[j]) c.push_back(j);
    GroupRingMatrix out(m.group_ptr(), r.size(), c.size(), m.twist());
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) out(i, j) = m(r[i], c[j]);
    return out;
}

}  // namespace

bool CellularPairData::has_A() const {
    if (vertex_in_A) return true;
    if (std::find(generator_in_A.begin(), generator_in_A.end(), true) != generator_in_A.end()) return true;
    for (const auto& [dim, list] : cells)
        for (const auto& c : list)
            if (c.in_A) return true;
    return false;
}

int CellularPairData::dimension() const {
    int d = generators.empty() ? 0 : 1;
    for (const auto& [dim, list] : cells)
        if (!list.empty()) d = std::max(d, static_cast<int>(dim));
    return d;
}

int CellularPairData::dimension_of_A() const {
    if (!has_A()) return -1;
    int d = std::find(generator_in_A.begin(), generator_in_A.end(), true) != generator_in_A.end() ? 1 : 0;
    for (const auto& [dim, list] : cells)
        for (const auto& c : list)
            if (c.in_A) d = std::max(d, static_cast<int>(dim));
    return d;
}

GroupRingMatrix fox_matrix(GroupPtr group, const std::vector<Word>& images, const IntMatrix& twist) {
    const std::size_t n = group->num_generators();
    if (images.size() != n) throw_invalid("covers", "one image word per generator is required");
    GroupRingMatrix m(group, n, n, twist);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) m(h, g) = fox_derivative(*group, images[g], h);
    return m;
}

EquivariantChainComplex presentation_complex(const Presentation& presentation, GroupPtr group,
                                             const std::vector<std::string>& relator_names) {
    EquivariantChainComplex c;
    c.group = group;
    const std::size_t n = presentation.generators.size();
    c.cells.push_back({"v"});
    c.cells.push_back(presentation.generators);
    c.boundary.emplace_back(group, 0, 1);
    GroupRingMatrix d1(group, 1, n);
    for (std::size_t g = 0; g < n; ++g) {
        d1(0, g).add_term(group->generator(g), 1);
        d1(0, g).add_term(group->identity(), -1);
    }
    c.boundary.push_back(std::move(d1));
    if (!presentation.relators.empty()) {
        std::vector<std::string> names = relator_names;
        for (std::size_t r = names.size(); r < presentation.relators.size(); ++r) names.push_back("r" + std::to_string(r));
        c.cells.push_back(names);
        GroupRingMatrix d2(group, n, presentation.relators.size());
        for (std::size_t r = 0; r < presentation.relators.size(); ++r)
            for (std::size_t g = 0; g < n; ++g) d2(g, r) = fox_derivative(*group, presentation.relators[r], g);
        c.boundary.push_back(std::move(d2));
    }
    return c;
}

EquivariantChainMap fox_chain_map(const EquivariantChainComplex& complex, const std::vector<Word>& images,
                                  const IntMatrix& twist) {
    EquivariantChainMap m;
    m.twist = twist;
    GroupRingMatrix d0(complex.group, 1, 1, twist);
    d0(0, 0).add_term(complex.group->identity(), 1);
    m.degree.push_back(std::move(d0));
    m.degree.push_back(fox_matrix(complex.group, images, twist));
    if (complex.cells.size() > 2) {
        m.degree.emplace_back(complex.group, complex.rank(2), complex.rank(2), twist);
        solve_top_cells(complex, m, std::vector<bool>(complex.rank(2), true));
    }
    if (const auto k = chain_map_defect(complex, m))
        throw_failure("covers", "Fox chain map fails the chain-map equation in degree " + std::to_string(*k));
    return m;
}

namespace {

// Shared construction of one complex (A over pi1 A, or all cells over pi1 B).
struct ComplexBuild {
    EquivariantChainComplex complex;
    std::vector<std::vector<const Cell*>> cell_of;  // indexed by degree; empty below 2
    std::map<std::string, std::pair<std::size_t, std::size_t>> position;
};

ComplexBuild build_complex(const CellularPairData& data, bool a_only, const Presentation& presentation, GroupPtr group,
                           const std::vector<std::optional<std::size_t>>& a_index) {
    ComplexBuild b;
    b.complex = presentation_complex(Presentation{presentation.generators, {}}, group);
    const std::size_t n = presentation.generators.size();
    for (std::size_t g = 0; g < n; ++g) b.position[presentation.generators[g]] = {1, g};
    b.cell_of.resize(2);
    const int top = a_only ? data.dimension_of_A() : data.dimension();
    for (std::size_t dim = 2; static_cast<int>(dim) <= top; ++dim) {
        std::vector<const Cell*> list;
        const auto it = data.cells.find(dim);
        if (it != data.cells.end())
            for (const auto& c : it->second)
                if (!a_only || c.in_A) list.push_back(&c);
        std::vector<std::string> names;
        for (const Cell* c : list) {
            b.position[c->name] = {dim, names.size()};
            names.push_back(c->name);
        }
        GroupRingMatrix d(group, b.complex.rank(dim - 1), list.size());
        for (std::size_t j = 0; j < list.size(); ++j) {
            const Cell& c = *list[j];
            if (dim == 2) {
                const Word r = a_only ? to_A_word(*c.relator, a_index, "relator of " + c.name) : *c.relator;
                for (std::size_t g = 0; g < n; ++g) d(g, j) = fox_derivative(*group, r, g);
                continue;
            }
            for (const auto& [face, terms] : c.boundary) {
                const auto pos = b.position.find(face);
                if (pos == b.position.end() || pos->second.first != dim - 1)
                    throw_invalid(kModule, "boundary of " + c.name + " refers to " + face +
                                               ", which is not a cell of dimension " + std::to_string(dim - 1) +
                                               (a_only ? " in A" : ""));
                for (const auto& t : terms) {
                    const Word w = a_only ? to_A_word(t.word, a_index, "boundary of " + c.name) : t.word;
                    d(pos->second.second, j).add_term(group->element(w), t.coefficient);
                }
            }
        }
        b.complex.cells.push_back(std::move(names));
        b.complex.boundary.push_back(std::move(d));
        b.cell_of.push_back(std::move(list));
    }
    while (b.complex.cells.size() > 1 && b.complex.cells.back().empty() && b.complex.top_degree() >= 0 &&
           static_cast<int>(b.complex.cells.size()) - 1 > b.complex.top_degree()) {
        b.complex.cells.pop_back();
        b.complex.boundary.pop_back();
        b.cell_of.pop_back();
    }
    if (!b.complex.boundary_squares_to_zero())
        throw_invalid(kModule, std::string("boundary does not square to zero in the ") + (a_only ? "A" : "B") + " complex");
    return b;
}

GroupRingElement chain_entry(const CellTerm& t, const AbelianStructure& group, const Word& w) {
    return GroupRingElement::monomial(group.element(w), t.coefficient);
}

}  // namespace

CellularModel build_cellular_model(const CellularPairData& data) {
    const std::size_t n = data.generators.size();
    if (data.generator_in_A.size() != n) throw_invalid(kModule, "generator A-flags do not match the generator list");
    if (data.phi.size() != n) throw_invalid("fundamental_group", "phi must give an image word for every generator");
    {
        std::set<std::string> names(data.generators.begin(), data.generators.end());
        if (names.size() != n) throw_invalid(kModule, "duplicate generator name");
        names.insert("v");
        for (const auto& [dim, list] : data.cells) {
            if (dim < 2) throw_invalid(kModule, "explicit cells must have dimension at least 2");
            for (const auto& c : list) {
                if (!names.insert(c.name).second) throw_invalid(kModule, "duplicate cell name '" + c.name + "'");
                if (dim == 2 && !c.relator) throw_invalid(kModule, "2-cell " + c.name + " needs a relator");
                if (dim > 2 && c.relator) throw_invalid(kModule, "cell " + c.name + " of dimension > 2 has a relator");
            }
        }
    }
    std::vector<std::optional<std::size_t>> a_index(n);
    std::vector<std::size_t> a_gens;
    for (std::size_t g = 0; g < n; ++g)
        if (data.generator_in_A[g]) {
            a_index[g] = a_gens.size();
            a_gens.push_back(g);
        }

    CellularModel m;
    m.presentation_B.generators = data.generators;
    for (std::size_t g : a_gens) m.presentation_A.generators.push_back(data.generators[g]);
    std::vector<std::string> relator_names_B;
    if (const auto it = data.cells.find(2); it != data.cells.end())
        for (const auto& c : it->second) {
            m.presentation_B.relators.push_back(*c.relator);
            if (c.in_A) m.presentation_A.relators.push_back(to_A_word(*c.relator, a_index, "A-relator " + c.name));
        }
    {
        const Diagnostics d = m.presentation_B.validate();
        if (has_errors(d)) throw_invalid("fundamental_group", d.front().message);
    }
    m.group_B = std::make_shared<const AbelianStructure>(m.presentation_B);
    m.group_A = std::make_shared<const AbelianStructure>(m.presentation_A);

    std::vector<Word> phi_A_words;
    for (std::size_t g : a_gens)
        phi_A_words.push_back(to_A_word(data.phi[g], a_index, "phi(" + data.generators[g] + ")"));
    m.phi_A = GroupHom{m.presentation_A, m.presentation_A, phi_A_words}.abelianized();
    m.phi_B = GroupHom{m.presentation_B, m.presentation_B, data.phi}.abelianized();
    m.iota = IntMatrix(n, a_gens.size());
    for (std::size_t j = 0; j < a_gens.size(); ++j) m.iota(a_gens[j], j) = 1;
    if (!m.group_A->preserves_relations(m.phi_A))
        throw_invalid("fundamental_group", "phi does not respect the A-relators (abelianized check)");
    if (!m.group_B->preserves_relations(m.phi_B))
        throw_invalid("fundamental_group", "phi does not respect the B-relators (abelianized check)");
    if (!m.group_A->is_hom_to(*m.group_B, m.iota))
        throw_invalid("fundamental_group", "inclusion does not respect the A-relators");

    // Images: every cell of dimension >= 2 needs one; derive only in a top degree.
    const int dim_A = data.dimension_of_A();
    const int dim_B = data.dimension();
    for (const auto& [dim, list] : data.cells)
        for (const auto& c : list) {
            const auto it = data.cell_images.find(c.name);
            if (it == data.cell_images.end()) throw_invalid(kModule, "no image given for cell " + c.name);
            if (it->second.derive && static_cast<int>(dim) != (c.in_A ? dim_A : dim_B))
                throw_invalid(kModule, "image of " + c.name + " can only be derived in the top degree of " +
                                           (c.in_A ? "A" : "B"));
        }
    for (const auto& [name, img] : data.cell_images) {
        bool known = false;
        for (const auto& [dim, list] : data.cells)
            for (const auto& c : list) known = known || c.name == name;
        if (!known) throw_invalid(kModule, "image given for unknown cell " + name);
    }

    // A complex and map.
    ComplexBuild a_build;
    if (data.has_A()) {
        a_build = build_complex(data, true, m.presentation_A, m.group_A, a_index);
        m.complex_A = a_build.complex;
        EquivariantChainMap& f = m.map_A;
        f.twist = m.phi_A;
        GroupRingMatrix d0(m.group_A, 1, 1, m.phi_A);
        d0(0, 0).add_term(m.group_A->identity(), 1);
        f.degree.push_back(std::move(d0));
        if (m.complex_A.cells.size() > 1) f.degree.push_back(fox_matrix(m.group_A, phi_A_words, m.phi_A));
        std::vector<bool> derive;
        for (std::size_t dim = 2; dim < m.complex_A.cells.size(); ++dim) {
            GroupRingMatrix md(m.group_A, m.complex_A.rank(dim), m.complex_A.rank(dim), m.phi_A);
            derive.assign(m.complex_A.rank(dim), false);
            for (std::size_t j = 0; j < a_build.cell_of[dim].size(); ++j) {
                const Cell& c = *a_build.cell_of[dim][j];
                const CellImage& img = data.cell_images.at(c.name);
                if (img.derive) {
                    derive[j] = true;
                    continue;
                }
                for (const auto& [target, terms] : img.chain) {
                    const auto pos = a_build.position.find(target);
                    if (pos == a_build.position.end() || pos->second.first != dim)
                        throw_invalid(kModule, "image of A-cell " + c.name + " involves " + target +
                                                   ", which is not an A-cell of the same dimension");
                    for (const auto& t : terms)
                        md(pos->second.second, j) +=
                            chain_entry(t, *m.group_A, to_A_word(t.word, a_index, "image of " + c.name));
                }
            }
            f.degree.push_back(std::move(md));
        }
        if (m.complex_A.top_degree() >= 2) solve_top_cells(m.complex_A, f, derive);
        if (const auto k = chain_map_defect(m.complex_A, f))
            throw_invalid("covers", "A-cell images violate the twisted chain-map equation in degree " + std::to_string(*k));
    }

    // Absolute B complex and map.
    ComplexBuild b_build = build_complex(data, false, m.presentation_B, m.group_B, a_index);
    m.absolute = b_build.complex;
    {
        EquivariantChainMap& f = m.absolute_map;
        f.twist = m.phi_B;
        GroupRingMatrix d0(m.group_B, 1, 1, m.phi_B);
        d0(0, 0).add_term(m.group_B->identity(), 1);
        f.degree.push_back(std::move(d0));
        if (m.absolute.cells.size() > 1) f.degree.push_back(fox_matrix(m.group_B, data.phi, m.phi_B));
        std::vector<bool> derive;
        for (std::size_t dim = 2; dim < m.absolute.cells.size(); ++dim) {
            GroupRingMatrix md(m.group_B, m.absolute.rank(dim), m.absolute.rank(dim), m.phi_B);
            derive.assign(m.absolute.rank(dim), false);
            for (std::size_t j = 0; j < b_build.cell_of[dim].size(); ++j) {
                const Cell& c = *b_build.cell_of[dim][j];
                if (c.in_A) {
                    // Column of an A-cell: the inclusion applied to its A-image.
                    const std::size_t aj = a_build.position.at(c.name).second;
                    for (std::size_t ai = 0; ai < m.complex_A.rank(dim); ++ai) {
                        const auto& entry = m.map_A.degree[dim](ai, aj);
                        if (entry.is_zero()) continue;
                        const std::size_t row = b_build.position.at(m.complex_A.cells[dim][ai]).second;
                        md(row, j) += map_elements(m.iota, *m.group_B, entry);
                    }
                    continue;
                }
                const CellImage& img = data.cell_images.at(c.name);
                if (img.derive) {
                    derive[j] = true;
                    continue;
                }
                for (const auto& [target, terms] : img.chain) {
                    const auto pos = b_build.position.find(target);
                    if (pos == b_build.position.end() || pos->second.first != dim)
                        throw_invalid(kModule, "image of " + c.name + " involves " + target +
                                                   ", which is not a cell of the same dimension");
                    for (const auto& t : terms) md(pos->second.second, j) += chain_entry(t, *m.group_B, t.word);
                }
            }
            f.degree.push_back(std::move(md));
        }
        if (m.absolute.top_degree() >= 2) solve_top_cells(m.absolute, f, derive);
        if (const auto k = chain_map_defect(m.absolute, f))
            throw_invalid("covers", "cell images violate the twisted chain-map equation in degree " + std::to_string(*k));
    }

    // Relative complex: cells outside A.
    m.relative_cells.resize(m.absolute.cells.size());
    m.relative_cells[0] = {!data.has_A()};
    m.relative_cells[1].resize(n);
    for (std::size_t g = 0; g < n; ++g) m.relative_cells[1][g] = !data.generator_in_A[g];
    for (std::size_t dim = 2; dim < m.absolute.cells.size(); ++dim)
        for (const Cell* c : b_build.cell_of[dim]) m.relative_cells[dim].push_back(!c->in_A);
    m.relative.group = m.group_B;
    m.relative_map.twist = m.phi_B;
    for (std::size_t dim = 0; dim < m.absolute.cells.size(); ++dim) {
        std::vector<std::string> names;
        for (std::size_t j = 0; j < m.absolute.rank(dim); ++j)
            if (m.relative_cells[dim][j]) names.push_back(m.absolute.cells[dim][j]);
        m.relative.cells.push_back(std::move(names));
        const std::vector<bool> rows = dim == 0 ? std::vector<bool>{} : m.relative_cells[dim - 1];
        m.relative.boundary.push_back(restrict_matrix(m.absolute.boundary[dim], rows, m.relative_cells[dim]));
        m.relative_map.degree.push_back(
            restrict_matrix(m.absolute_map.degree[dim], m.relative_cells[dim], m.relative_cells[dim]));
    }
    if (!m.relative.boundary_squares_to_zero()) throw_failure("covers", "relative boundary does not square to zero");
    if (const auto k = chain_map_defect(m.relative, m.relative_map))
        throw_failure("covers", "relative chain map fails the chain-map equation in degree " + std::to_string(*k));
    return m;
}

Diagnostics validate_cellular(const CellularPairData& data) {
    Diagnostics d;
    try {
        (void)build_cellular_model(data);
    } catch (const Error& e) {
        d.push_back({Severity::Error, e.module(), e.detail()});
    }
    return d;
}

}  // namespace reltrace
