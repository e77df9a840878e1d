#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reltrace/error.hpp"
#include "reltrace/integer_matrix.hpp"
#include "reltrace/rational_matrix.hpp"

namespace reltrace {

/// Strictly increasing vertex ids.
using Simplex = std::vector<std::size_t>;

/// Finite simplicial complex B with a flagged subcomplex A. Vertex ids are
/// positions in `vertex_names`; the order of that list is the id order.
class SimplicialPair {
public:
    SimplicialPair() = default;
    /// Normalizes vertex order inside each simplex and adds every vertex as a
    /// 0-simplex. Malformed simplices are dropped and reported by validate_pair.
    SimplicialPair(std::vector<std::string> vertex_names, const std::vector<std::vector<std::size_t>>& simplices,
                   const std::vector<std::vector<std::size_t>>& a_simplices);

    const std::vector<std::string>& vertex_names() const noexcept { return names_; }
    std::size_t num_vertices() const noexcept { return names_.size(); }
    /// -1 for the empty complex.
    int dimension() const noexcept { return static_cast<int>(simplices_.size()) - 1; }
    int dimension_of_A() const;

    /// Simplices of dimension k in lexicographic order.
    const std::vector<Simplex>& simplices(std::size_t k) const;
    bool in_A(std::size_t k, std::size_t index) const { return a_flags_.at(k).at(index); }
    bool vertex_in_A(std::size_t v) const { return a_flags_.at(0).at(v); }
    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }
    bool contains_in_A(const Simplex& s) const;

    const Diagnostics& construction_issues() const noexcept { return issues_; }
    std::string format(const Simplex& s) const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<Simplex>> simplices_;
    std::vector<std::vector<bool>> a_flags_;
    std::vector<std::map<Simplex, std::size_t>> index_;
    Diagnostics issues_;
};

/// Vertex assignment v -> image[v].
struct VertexSelfMap {
    std::vector<std::size_t> image;

    std::size_t operator()(std::size_t v) const { return image.at(v); }
    /// Sorted image vertices and the sign of the sorting permutation; sign 0
    /// when the image is degenerate.
    std::pair<Simplex, int> apply(const Simplex& s) const;
};

Diagnostics validate_pair(const SimplicialPair& pair);
/// Simplicial and relative conditions for f on a valid pair.
Diagnostics validate_map(const SimplicialPair& pair, const VertexSelfMap& f);

/// Connected components of A and of B with their incidence.
struct ComponentData {
    std::vector<std::vector<std::size_t>> a_components;  // sorted vertex lists, ordered by least vertex
    std::vector<std::vector<std::size_t>> b_components;
    std::vector<std::size_t> a_in_b;                   // B-component containing each A-component
    std::vector<std::size_t> b_of_vertex;              // B-component of each vertex
    std::vector<std::optional<std::size_t>> a_of_vertex;
    std::vector<bool> b_has_complement;                // some simplex of the B-component lies outside A

    /// Objects of the skeleton of the relative component category: every
    /// A-component, then every B-component with nonempty complement of A.
    struct Object {
        bool in_A = false;
        std::size_t component = 0;
    };
    std::vector<Object> skeleton;
};

ComponentData components(const SimplicialPair& pair);

/// Integral (hence rational) oriented simplicial chain complex: basis[k]
/// lists simplices of dimension k, boundary[k] : C_k -> C_{k-1} (boundary[0]
/// has no rows).
struct ChainComplexZ {
    std::vector<std::vector<Simplex>> basis;
    std::vector<IntMatrix> boundary;

    std::size_t rank(std::size_t k) const { return k < basis.size() ? basis[k].size() : 0; }
    std::optional<std::size_t> index_of(std::size_t k, const Simplex& s) const;
    bool boundary_squares_to_zero() const;
};

struct RationalChainData {
    ChainComplexZ A;
    ChainComplexZ B;
    ChainComplexZ relative;  // basis: simplices of B not in A
};

RationalChainData rational_chain_data(const SimplicialPair& pair);

/// Chain map induced by f on a complex whose basis is closed under f modulo
/// simplices outside the basis (which count as zero, as in the relative complex).
std::vector<IntMatrix> simplicial_chain_map(const ChainComplexZ& complex, const VertexSelfMap& f);

/// Alternating sum of chain-level traces restricted to basis cells selected by `keep`.
Int chain_lefschetz(const std::vector<IntMatrix>& map, const std::vector<std::vector<bool>>* keep = nullptr);

/// Alternating sum of traces on rational homology, by extending a basis of
/// the boundaries to one of the cycles.
Int homology_lefschetz(const std::vector<IntMatrix>& boundary, const std::vector<IntMatrix>& map);

/// Sub-complex spanned by the basis cells selected per degree.
ChainComplexZ restrict_complex(const ChainComplexZ& complex, const std::vector<std::vector<bool>>& keep);
std::vector<IntMatrix> restrict_map(const std::vector<IntMatrix>& map, const std::vector<std::vector<bool>>& keep);

}  // namespace reltrace
