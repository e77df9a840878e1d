#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reltrace/covers.hpp"
#include "reltrace/group.hpp"

namespace reltrace {

/// Coefficient times group element, the element given as a word.
struct CellTerm {
    Int coefficient = 0;
    Word word;
};

/// Chain with group-ring coefficients, keyed by cell name.
using CellChain = std::map<std::string, std::vector<CellTerm>>;

struct Cell {
    std::string name;
    bool in_A = false;
    std::optional<Word> relator;  // 2-cells: attaching word; boundary by Fox calculus
    CellChain boundary;           // cells of dimension >= 3
};

struct CellImage {
    bool derive = false;
    CellChain chain;
};

/// CW pair with one vertex: 1-cells are the generators, 2-cells the
/// relators, higher cells carry explicit boundaries. pi1(A) is presented by
/// the A-generators and A-relators, pi1(B) by all of them; the inclusion
/// sends each A-generator to itself.
struct CellularPairData {
    std::vector<std::string> generators;
    std::vector<bool> generator_in_A;
    bool vertex_in_A = false;
    std::map<std::size_t, std::vector<Cell>> cells;  // dimension >= 2 -> cells
    std::vector<Word> phi;                            // image word per generator
    std::map<std::string, CellImage> cell_images;     // dimension >= 2

    bool has_A() const;
    int dimension() const;
    int dimension_of_A() const;
};

/// Chain-level data of both parts, built from CellularPairData.
struct CellularModel {
    Presentation presentation_A;
    Presentation presentation_B;
    GroupPtr group_A;
    GroupPtr group_B;
    IntMatrix phi_A;  // abelianized, on A-generator coordinates
    IntMatrix phi_B;
    IntMatrix iota;   // A-generator coordinates -> B-generator coordinates

    EquivariantChainComplex complex_A;
    EquivariantChainMap map_A;
    EquivariantChainComplex absolute;
    EquivariantChainMap absolute_map;
    EquivariantChainComplex relative;
    EquivariantChainMap relative_map;
    std::vector<std::vector<bool>> relative_cells;  // per degree: cell of `absolute` lies outside A
};

/// Structural checks plus every invariant verified while building the model.
Diagnostics validate_cellular(const CellularPairData& data);

/// Throws InvalidInput for malformed data and ComputationFailure when a
/// derived cell image cannot be solved for.
CellularModel build_cellular_model(const CellularPairData& data);

/// Degree-1 matrix of the chain map induced by a homomorphism on a
/// presentation complex: entry (h, g) = d phi(g) / d h.
GroupRingMatrix fox_matrix(GroupPtr group, const std::vector<Word>& images, const IntMatrix& twist);

/// Presentation complex chain map: identity in degree 0, Fox matrix in
/// degree 1, top-degree 2-cells solved from the chain-map equation.
EquivariantChainMap fox_chain_map(const EquivariantChainComplex& complex, const std::vector<Word>& images,
                                  const IntMatrix& twist);

/// Chain complex of the presentation 2-complex of `presentation`.
EquivariantChainComplex presentation_complex(const Presentation& presentation, GroupPtr group,
                                             const std::vector<std::string>& relator_names = {});

}  // namespace reltrace
