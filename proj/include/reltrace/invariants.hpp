#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reltrace/cellular.hpp"
#include "reltrace/complexes.hpp"
#include "reltrace/covers.hpp"
#include "reltrace/edge_path.hpp"
#include "reltrace/group_ring.hpp"

namespace reltrace {

struct ShadowInfo {
    std::shared_ptr<const ShadowClassSet> classes;
    bool exact = false;  // presentation recognized abelian, so the abelianized shadow is the shadow
    std::string reason;
};

/// Rational chain data of one component, for the Lefschetz numbers.
struct RationalPart {
    std::vector<IntMatrix> boundary;
    std::vector<IntMatrix> map;
};

/// One f-invariant component of A with its lifted complex and map.
struct APart {
    std::string label;
    Presentation presentation;
    ShadowInfo shadow;
    EquivariantChainComplex complex;
    EquivariantChainMap map;
    RationalPart rational;
    std::size_t b_part = 0;  // index of the B-part containing this component
    IntMatrix iota;          // abelianized inclusion into the B-part's group
    Exponents shift;         // basepoint correction of the class map
};

/// One f-invariant component of B: the relative complex (cells outside A)
/// and the absolute complex, both over the edge-path group of B.
struct BPart {
    std::string label;
    Presentation presentation;
    ShadowInfo shadow;
    EquivariantChainComplex relative;
    EquivariantChainMap relative_map;
    EquivariantChainComplex absolute;
    EquivariantChainMap absolute_map;
    RationalPart rational_relative;
    RationalPart rational_absolute;
    std::vector<std::size_t> a_parts;
};

struct PairModel {
    std::string tier;  // "simplicial" or "cw"
    int dim_A = -1;
    int dim_B = -1;
    std::vector<APart> a_parts;
    std::vector<BPart> b_parts;
    std::vector<std::string> excluded;  // components not carried into themselves
};

struct ModelOptions {
    std::vector<std::size_t> priority;  // spanning-tree vertex priority; empty = vertex id order
    int rewrite_rounds = 0;             // bounded relator rewriting for abelian recognition
};

PairModel build_simplicial_model(const SimplicialPair& pair, const VertexSelfMap& f, const ModelOptions& options = {});
PairModel build_cellular_pair_model(const CellularPairData& data, const ModelOptions& options = {});

/// Class map between the twisted class sets of two frames of the same
/// component (or of an A-component into its B-component): the inclusion on
/// groups and the translation c_dst(root_src) - d(f(root_src)).
ClassMap transport_classes(const Frame& src, const Frame& dst, std::shared_ptr<const ShadowClassSet> src_classes,
                           std::shared_ptr<const ShadowClassSet> dst_classes, const VertexSelfMap& f);

struct ComponentValue {
    std::string label;
    Int value = 0;
    std::optional<Int> homology_value;
};

struct RelativeLefschetz {
    std::vector<ComponentValue> A;
    std::vector<ComponentValue> B;         // on the relative complex
    std::vector<ComponentValue> absolute;  // on B itself
};

RelativeLefschetz relative_lefschetz(const PairModel& model, bool crosscheck);

struct PartTrace {
    std::string label;
    std::shared_ptr<const ShadowClassSet> classes;
    bool exact = false;
    TraceVector trace;
};

struct RelativeTrace {
    std::vector<PartTrace> A;
    std::vector<PartTrace> B;         // relative complexes
    std::vector<PartTrace> absolute;  // absolute complexes, same class sets as B
    std::vector<ClassMap> push;       // per A-part, into its B-part
    std::vector<std::size_t> a_to_b;
    bool abelianized = false;         // some shadow is coarsened

    bool is_zero() const;
};

RelativeTrace relative_reidemeister(const PairModel& model);

struct NielsenNumbers {
    Int N_A = 0;       // N(f|A)
    Int N_f = 0;       // N(f)
    Int N_common = 0;  // N(f, f|A)
    Int relative = 0;  // N(f|A) + N(f) - N(f, f|A)
};

NielsenNumbers relative_nielsen(const RelativeTrace& trace);

struct Assertions {
    bool manifold_A = false;  // A is a closed smooth manifold (or empty)
    bool manifold_B = false;
    std::optional<int> dim_A;
    std::optional<int> dim_B;
};

enum class Conclusion { Deformable, NotDeformable, TraceZeroHypothesesUnverified, InconclusiveAbelianized };
std::string to_string(Conclusion c);
std::optional<Conclusion> conclusion_from_string(const std::string& s);

struct DeformabilityVerdict {
    bool trace_zero = false;
    int dim_A = -1;
    int dim_B = -1;
    bool dim_A_ok = false;     // dim A >= 3 (vacuous for empty A)
    bool codim_ok = false;     // dim B - dim A >= 2 (dim B >= 3 for empty A)
    bool manifold_A = false;
    bool manifold_B = false;
    bool shadow_exact = false;
    Conclusion conclusion = Conclusion::NotDeformable;
};

DeformabilityVerdict deformability_verdict(const RelativeTrace& trace, const PairModel& model,
                                           const Assertions& assertions);

struct ConsistencyCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Augmentation identities, splitting of the absolute trace, chain versus
/// homology traces and the Nielsen/trace vanishing equivalence. Throws
/// ComputationFailure naming the first failed identity.
std::vector<ConsistencyCheck> consistency_report(const RelativeLefschetz& lefschetz, const RelativeTrace& trace,
                                                 const NielsenNumbers& nielsen);

}  // namespace reltrace
