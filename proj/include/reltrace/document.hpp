#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "reltrace/cellular.hpp"
#include "reltrace/complexes.hpp"
#include "reltrace/invariants.hpp"

namespace reltrace {

/// One problem: a pair (B, A) with a relative self-map, in one of two tiers.
struct InputDocument {
    std::string name;
    std::string tier;  // "simplicial" or "cw"

    SimplicialPair pair;  // simplicial tier
    VertexSelfMap map;
    CellularPairData cw;  // cw tier

    Assertions assertions;
};

/// Parses a document. A non-empty `tier_override` selects the payload to
/// read. Throws InvalidInput (module "cli") on schema violations; the
/// mathematical invariants are checked later by validation.
InputDocument parse_document(const nlohmann::json& j, const std::string& tier_override = "");
InputDocument read_document(const std::string& path, const std::string& tier_override = "");

/// Spanning-tree priority from a list of vertex names separated by commas
/// or spaces: listed vertices first, in order, then the rest by id. The
/// first vertex of each component in this order roots its tree.
std::vector<std::size_t> tree_priority(const SimplicialPair& pair, const std::string& spec);

/// [[gen, exp], ...] against a generator list.
Word parse_word(const nlohmann::json& j, const std::vector<std::string>& generators);
nlohmann::json word_to_json(const Word& w, const std::vector<std::string>& generators);

}  // namespace reltrace
