#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "reltrace/complexes.hpp"
#include "reltrace/edge_path.hpp"
#include "reltrace/group_ring.hpp"

namespace reltrace {

/// Free Z[pi]-chain complex of a universal (or relative universal) cover:
/// boundary[k] : C_k -> C_{k-1}, boundary[0] has no rows.
struct EquivariantChainComplex {
    GroupPtr group;
    std::vector<std::vector<std::string>> cells;
    std::vector<GroupRingMatrix> boundary;
    std::vector<std::vector<Simplex>> simplices;  // simplicial tier only, parallel to cells

    std::size_t rank(std::size_t k) const { return k < cells.size() ? cells[k].size() : 0; }
    /// Highest degree with a cell, -1 when there are none.
    int top_degree() const;
    bool boundary_squares_to_zero() const;
    std::vector<IntMatrix> augmented_boundary() const;
};

/// phi-twisted chain self-map: degree[k] square over Z[pi] with twist phi.
struct EquivariantChainMap {
    IntMatrix twist;
    std::vector<GroupRingMatrix> degree;

    std::vector<IntMatrix> augmented() const;
};

/// First degree k >= 1 where D_k F_k != F_{k-1} phi(D_k), if any.
std::optional<std::size_t> chain_map_defect(const EquivariantChainComplex& complex, const EquivariantChainMap& map);

/// Sum over k of (-1)^k times the Stallings trace of degree[k].
TraceVector reidemeister_trace(const EquivariantChainMap& map, const ShadowClassSet& classes);

enum class CellSelection {
    A,         // simplices of A, over the edge-path group of the A-component
    Absolute,  // all simplices of B
    Relative,  // simplices of B not in A (faces in A dropped)
};

/// Lift of the cells of one component through its spanning-tree section:
/// the lift of (v0..vk) starts at the tree lift of v0, so face 0 carries the
/// deck element of the edge v0 v1 and every other face carries 1.
EquivariantChainComplex lift_chain_complex(const SimplicialPair& pair, const Frame& frame, CellSelection selection);

/// Lift of f on one f-invariant component. The lift of f fixes the tree lift
/// of f(root); the entry for sigma -> f(sigma) is the deck element
/// c(v0) - edge(t0, f(v0)) with t0 the first vertex of f(sigma). Degenerate
/// images give zero. The chain-map equation is verified before returning.
EquivariantChainMap lift_chain_map(const Frame& frame, const FrameMap& induced, const VertexSelfMap& f,
                                   const EquivariantChainComplex& complex);

/// Fills the flagged columns of the top-degree map from D X = F phi(D),
/// after certifying that D is injective in the top degree. Throws
/// ComputationFailure with "non-unique solution" or "no solution".
void solve_top_cells(const EquivariantChainComplex& complex, EquivariantChainMap& map,
                     const std::vector<bool>& derive_columns);

}  // namespace reltrace
