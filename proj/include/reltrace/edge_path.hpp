#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "reltrace/complexes.hpp"
#include "reltrace/group.hpp"

namespace reltrace {

/// Spanning tree of one connected component of B (or of A), rooted at the
/// basepoint, with the edge-path presentation of its fundamental group.
struct Frame {
    std::vector<std::size_t> vertices;  // sorted
    std::size_t root = 0;
    std::map<std::size_t, std::size_t> parent;  // every vertex except the root
    std::vector<std::size_t> bfs_order;         // root first
    std::vector<Simplex> generators;            // non-tree edges, lexicographic
    std::map<Simplex, std::size_t> generator_index;
    std::vector<Simplex> triangles;             // one relator each, same order
    Presentation presentation;
    GroupPtr group;

    bool contains(std::size_t v) const;
    /// Word of the oriented edge u -> v: empty for tree edges.
    Word edge_word(std::size_t u, std::size_t v) const;
    Exponents edge_exponents(std::size_t u, std::size_t v) const;
    /// Vertices of the tree path root -> x.
    std::vector<std::size_t> tree_path(std::size_t x) const;
};

/// BFS spanning tree of the component containing `component` (sorted vertex
/// list), restricted to A-simplices when a_only. Neighbours are visited in
/// `priority` order (position of each vertex id; empty = id order) and the
/// root is the component's first vertex in that order.
Frame make_frame(const SimplicialPair& pair, const std::vector<std::size_t>& component, bool a_only,
                 const std::vector<std::size_t>& priority = {});

/// Edge-path presentation: generators = non-tree edges, one relator per 2-simplex.
Presentation edge_path_presentation(const SimplicialPair& pair, const std::vector<std::size_t>& component,
                                    bool a_only, const std::vector<std::size_t>& priority = {});

/// Homomorphism of edge-path groups induced by a vertex map carrying the
/// source component into the target component, with the basepoint correction
/// c(x) = word of h(tree path root -> x) in the target frame.
struct FrameMap {
    GroupHom hom;
    IntMatrix abelian;                  // action on exponent vectors
    std::map<std::size_t, Word> correction;
    std::map<std::size_t, Exponents> correction_exponents;
};

/// Throws InvalidInput when h does not carry src into dst.
FrameMap frame_map(const Frame& src, const Frame& dst, const VertexSelfMap& h);

VertexSelfMap identity_map(std::size_t num_vertices);

}  // namespace reltrace
