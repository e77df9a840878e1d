#include "reltrace/edge_path.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace reltrace {

namespace {
constexpr const char* kModule = "fundamental_group";
}

bool Frame::contains(std::size_t v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }

Word Frame::edge_word(std::size_t u, std::size_t v) const {
    if (u == v) return {};
    const Simplex e{std::min(u, v), std::max(u, v)};
    const auto it = generator_index.find(e);
    if (it == generator_index.end()) return {};
    return Word::generator(it->second, u < v ? 1 : -1);
}

Exponents Frame::edge_exponents(std::size_t u, std::size_t v) const {
    return edge_word(u, v).exponent_sums(generators.size());
}

std::vector<std::size_t> Frame::tree_path(std::size_t x) const {
    std::vector<std::size_t> path{x};
    while (x != root) {
        x = parent.at(x);
        path.push_back(x);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

Frame make_frame(const SimplicialPair& pair, const std::vector<std::size_t>& component, bool a_only,
                 const std::vector<std::size_t>& priority) {
    if (component.empty()) throw_invalid(kModule, "empty component");
    std::vector<std::size_t> rank(pair.num_vertices());
    if (priority.empty()) {
        std::iota(rank.begin(), rank.end(), std::size_t{0});
    } else {
        if (priority.size() != pair.num_vertices()) throw_invalid(kModule, "tree priority must rank every vertex");
        rank = priority;
    }
    Frame f;
    f.vertices = component;
    std::sort(f.vertices.begin(), f.vertices.end());

    std::map<std::size_t, std::vector<std::size_t>> adjacency;
    const auto& edges = pair.simplices(1);
    std::vector<Simplex> comp_edges;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (a_only && !pair.in_A(1, i)) continue;
        if (!f.contains(edges[i][0])) continue;
        comp_edges.push_back(edges[i]);
        adjacency[edges[i][0]].push_back(edges[i][1]);
        adjacency[edges[i][1]].push_back(edges[i][0]);
    }
    auto by_rank = [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; };
    for (auto& [v, nbrs] : adjacency) std::sort(nbrs.begin(), nbrs.end(), by_rank);

    f.root = *std::min_element(f.vertices.begin(), f.vertices.end(), by_rank);
    std::set<std::size_t> seen{f.root};
    std::deque<std::size_t> queue{f.root};
    std::set<Simplex> tree_edges;
    while (!queue.empty()) {
        const std::size_t x = queue.front();
        queue.pop_front();
        f.bfs_order.push_back(x);
        for (std::size_t y : adjacency[x]) {
            if (!seen.insert(y).second) continue;
            f.parent[y] = x;
            tree_edges.insert(Simplex{std::min(x, y), std::max(x, y)});
            queue.push_back(y);
        }
    }
    if (seen.size() != f.vertices.size()) throw_invalid(kModule, "component is not connected");

    for (const auto& e : comp_edges) {
        if (tree_edges.count(e)) continue;
        f.generator_index[e] = f.generators.size();
        f.generators.push_back(e);
        f.presentation.generators.push_back("e(" + pair.vertex_names()[e[0]] + "," + pair.vertex_names()[e[1]] + ")");
    }
    const auto& tris = pair.simplices(2);
    for (std::size_t i = 0; i < tris.size(); ++i) {
        if (a_only && !pair.in_A(2, i)) continue;
        if (!f.contains(tris[i][0])) continue;
        const Simplex& t = tris[i];
        f.triangles.push_back(t);
        // Boundary loop v0 -> v1 -> v2 -> v0.
        f.presentation.relators.push_back(f.edge_word(t[0], t[1]) * f.edge_word(t[1], t[2]) * f.edge_word(t[2], t[0]));
    }
    f.group = std::make_shared<const AbelianStructure>(f.presentation);
    return f;
}

Presentation edge_path_presentation(const SimplicialPair& pair, const std::vector<std::size_t>& component,
                                    bool a_only, const std::vector<std::size_t>& priority) {
    return make_frame(pair, component, a_only, priority).presentation;
}

VertexSelfMap identity_map(std::size_t num_vertices) {
    VertexSelfMap m;
    m.image.resize(num_vertices);
    std::iota(m.image.begin(), m.image.end(), std::size_t{0});
    return m;
}

FrameMap frame_map(const Frame& src, const Frame& dst, const VertexSelfMap& h) {
    for (std::size_t v : src.vertices)
        if (!dst.contains(h(v))) throw_invalid("invariants", "component is not carried into the target component");
    FrameMap m;
    const std::size_t n = dst.generators.size();
    for (std::size_t x : src.bfs_order) {
        if (x == src.root) {
            m.correction[x] = Word{};
        } else {
            const std::size_t p = src.parent.at(x);
            m.correction[x] = m.correction.at(p) * dst.edge_word(h(p), h(x));
        }
        m.correction_exponents[x] = m.correction[x].exponent_sums(n);
    }
    m.hom.domain = src.presentation;
    m.hom.codomain = dst.presentation;
    for (const auto& e : src.generators) {
        const std::size_t u = e[0], v = e[1];
        m.hom.images.push_back(m.correction.at(u) * dst.edge_word(h(u), h(v)) * m.correction.at(v).inverse());
    }
    m.abelian = m.hom.abelianized();
    if (!src.group->is_hom_to(*dst.group, m.abelian))
        throw_failure(kModule, "induced map does not respect the edge-path relators");
    return m;
}

}  // namespace reltrace
