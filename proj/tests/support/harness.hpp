#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "reltrace/complexes.hpp"
#include "reltrace/integer_matrix.hpp"
#include "reltrace/invariants.hpp"
#include "reltrace/run.hpp"

namespace reltrace::testing {

/// RELTRACE_SEED when set, otherwise a fixed default.
std::uint64_t test_seed();

std::string fixture_path(const std::string& name);
/// Every *.json under the fixture directory, sorted.
std::vector<std::string> fixture_files();

/// Random square or rectangular matrix with entries in [-bound, bound].
IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, Int bound);

using BigInt = boost::multiprecision::cpp_int;

/// Determinant in unbounded integers (Bareiss).
BigInt exact_determinant(const IntMatrix& m);
/// U M V == D evaluated in unbounded integers.
bool exact_factorization(const IntMatrix& U, const IntMatrix& M, const IntMatrix& V, const IntMatrix& D);

struct RandomInstance {
    std::string kind;  // "affine" or "collapse"
    std::string description;
    SimplicialPair pair;
    VertexSelfMap map;
};

/// Simplicial self-map of a pair on the vertex set Z/n.
/// affine: the complex is closed under x -> u x + t for u in the subgroup
/// generated by a and -1, f(x) = a x + k and A is a union of f-orbits.
/// collapse: f sends every vertex into one simplex sigma, and sigma lies in A
/// whenever A is nonempty.
RandomInstance random_instance(std::mt19937_64& rng, std::size_t index);

/// Rank vector listing the vertices in decreasing id order.
std::vector<std::size_t> reversed_priority(std::size_t num_vertices);

/// Traces computed with two spanning-tree priorities, the second carried
/// into the first's class sets part by part.
struct TreeComparison {
    bool distinct_trees = false;  // some frame differs in root or parent map
    bool identical = false;
    std::string detail;
};
TreeComparison compare_trees(const SimplicialPair& pair, const VertexSelfMap& f, const std::vector<std::size_t>& first,
                             const std::vector<std::size_t>& second);

/// Number of twisted classes of Phi on (Z/m)^n by enumerating the image of I - Phi.
Int brute_force_class_count(const IntMatrix& phi, Int m);

/// Presentation of (Z/m)^n with generators named x0, x1, ...
Presentation torsion_presentation(std::size_t n, Int m);

}  // namespace reltrace::testing
