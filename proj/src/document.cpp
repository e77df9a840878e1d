#include "reltrace/document.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace reltrace {

namespace {

constexpr const char* kModule = "cli";

using nlohmann::json;

std::string scalar_name(const json& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw_invalid(kModule, where + ": expected a name (string or integer)");
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw_invalid(kModule, where + ": missing \"" + key + "\"");
    return obj.at(key);
}

bool optional_bool(const json& obj, const char* key, bool fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_boolean()) throw_invalid(kModule, where + ": \"" + key + "\" must be a boolean");
    return obj.at(key).get<bool>();
}

Int as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw_invalid(kModule, where + ": expected an integer");
    return j.get<Int>();
}

// Flat list of simplices, a list per dimension, or an object keyed by dimension.
std::vector<std::vector<std::string>> simplex_lists(const json& j, const std::string& where) {
    std::vector<const json*> groups;
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) groups.push_back(&value);
    } else if (j.is_array()) {
        const bool nested = !j.empty() && j.front().is_array() && !j.front().empty() && j.front().front().is_array();
        if (nested)
            for (const auto& g : j) groups.push_back(&g);
        else
            groups.push_back(&j);
    } else {
        throw_invalid(kModule, where + ": expected a list of simplices");
    }
    std::vector<std::vector<std::string>> out;
    for (const json* g : groups) {
        if (!g->is_array()) throw_invalid(kModule, where + ": expected a list of simplices");
        for (const auto& s : *g) {
            if (!s.is_array()) throw_invalid(kModule, where + ": a simplex must be a list of vertex names");
            std::vector<std::string> names;
            for (const auto& v : s) names.push_back(scalar_name(v, where));
            out.push_back(std::move(names));
        }
    }
    return out;
}

InputDocument parse_simplicial(const json& p, InputDocument doc) {
    const std::string where = "simplicial";
    std::vector<std::string> names;
    for (const auto& v : require(p, "vertices", where)) names.push_back(scalar_name(v, where + ".vertices"));
    std::map<std::string, std::size_t> id;
    for (std::size_t i = 0; i < names.size(); ++i)
        if (!id.emplace(names[i], i).second) throw_invalid(kModule, "duplicate vertex name '" + names[i] + "'");
    auto resolve = [&](const std::vector<std::vector<std::string>>& lists, const std::string& field) {
        std::vector<std::vector<std::size_t>> out;
        for (const auto& s : lists) {
            std::vector<std::size_t> ids;
            for (const auto& n : s) {
                const auto it = id.find(n);
                if (it == id.end()) throw_invalid(kModule, "unknown vertex '" + n + "' in " + field);
                ids.push_back(it->second);
            }
            out.push_back(std::move(ids));
        }
        return out;
    };
    const auto simplices = resolve(simplex_lists(require(p, "simplices", where), "simplices"), "simplices");
    std::vector<std::vector<std::size_t>> a_simplices;
    if (p.contains("A_simplices"))
        a_simplices = resolve(simplex_lists(p.at("A_simplices"), "A_simplices"), "A_simplices");
    doc.pair = SimplicialPair(names, simplices, a_simplices);

    const json& vm = require(p, "vertex_map", where);
    if (!vm.is_object()) throw_invalid(kModule, "vertex_map must map vertex names to vertex names");
    doc.map.image.assign(names.size(), 0);
    std::vector<bool> seen(names.size(), false);
    for (const auto& [key, value] : vm.items()) {
        const auto src = id.find(key);
        if (src == id.end()) throw_invalid(kModule, "unknown vertex '" + key + "' in vertex_map");
        const std::string target = scalar_name(value, "vertex_map");
        const auto dst = id.find(target);
        if (dst == id.end()) throw_invalid(kModule, "unknown vertex '" + target + "' in vertex_map");
        doc.map.image[src->second] = dst->second;
        seen[src->second] = true;
    }
    for (std::size_t v = 0; v < names.size(); ++v)
        if (!seen[v]) throw_invalid(kModule, "vertex_map has no image for vertex '" + names[v] + "'");
    return doc;
}

CellChain parse_chain(const json& j, const std::vector<std::string>& generators, const std::string& where) {
    if (!j.is_object()) throw_invalid(kModule, where + ": expected an object keyed by cell name");
    CellChain chain;
    for (const auto& [cell, terms] : j.items()) {
        if (!terms.is_array()) throw_invalid(kModule, where + "." + cell + ": expected [[coeff, word], ...]");
        auto& list = chain[cell];
        for (const auto& t : terms) {
            if (!t.is_array() || t.size() != 2) throw_invalid(kModule, where + "." + cell + ": expected [coeff, word]");
            list.push_back({as_int(t[0], where), parse_word(t[1], generators)});
        }
    }
    return chain;
}

InputDocument parse_cw(const json& p, InputDocument doc) {
    const std::string where = "cw";
    CellularPairData& d = doc.cw;
    for (const auto& g : require(p, "generators", where)) {
        if (g.is_string()) {
            d.generators.push_back(g.get<std::string>());
            d.generator_in_A.push_back(false);
            continue;
        }
        d.generators.push_back(scalar_name(require(g, "name", "cw.generators"), "cw.generators"));
        d.generator_in_A.push_back(optional_bool(g, "in_A", false, "cw.generators"));
    }
    {
        std::vector<std::string> sorted = d.generators;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw_invalid(kModule, "duplicate generator name");
    }
    bool any_A = std::find(d.generator_in_A.begin(), d.generator_in_A.end(), true) != d.generator_in_A.end();
    if (p.contains("cells")) {
        const json& cells = p.at("cells");
        if (!cells.is_object()) throw_invalid(kModule, "cw.cells must be an object keyed by dimension");
        for (const auto& [key, list] : cells.items()) {
            std::size_t dim = 0;
            try {
                std::size_t used = 0;
                dim = std::stoul(key, &used);
                if (used != key.size()) throw std::invalid_argument(key);
            } catch (const std::exception&) {
                throw_invalid(kModule, "cw.cells key '" + key + "' is not a dimension");
            }
            if (dim < 2) throw_invalid(kModule, "cw.cells lists cells of dimension >= 2 only");
            if (!list.is_array()) throw_invalid(kModule, "cw.cells." + key + " must be a list");
            for (const auto& c : list) {
                Cell cell;
                cell.name = scalar_name(require(c, "name", "cw.cells"), "cw.cells");
                cell.in_A = optional_bool(c, "in_A", false, "cw.cells");
                any_A = any_A || cell.in_A;
                if (c.contains("relator")) cell.relator = parse_word(c.at("relator"), d.generators);
                if (c.contains("boundary")) cell.boundary = parse_chain(c.at("boundary"), d.generators, "boundary of " + cell.name);
                if (dim == 2 && !cell.relator) throw_invalid(kModule, "2-cell " + cell.name + " needs a relator");
                if (dim > 2 && cell.relator) throw_invalid(kModule, "cell " + cell.name + " of dimension > 2 takes a boundary, not a relator");
                d.cells[dim].push_back(std::move(cell));
            }
        }
    }
    d.vertex_in_A = optional_bool(p, "vertex_in_A", any_A, where);

    const json& map = require(p, "map", where);
    const json& phi = require(map, "phi", "cw.map");
    if (!phi.is_object()) throw_invalid(kModule, "cw.map.phi must map generators to words");
    d.phi.assign(d.generators.size(), Word());
    std::vector<bool> seen(d.generators.size(), false);
    for (const auto& [gen, word] : phi.items()) {
        const auto it = std::find(d.generators.begin(), d.generators.end(), gen);
        if (it == d.generators.end()) throw_invalid(kModule, "cw.map.phi names unknown generator '" + gen + "'");
        const auto g = static_cast<std::size_t>(it - d.generators.begin());
        d.phi[g] = parse_word(word, d.generators);
        seen[g] = true;
    }
    for (std::size_t g = 0; g < seen.size(); ++g)
        if (!seen[g]) throw_invalid(kModule, "cw.map.phi has no image for generator '" + d.generators[g] + "'");
    if (map.contains("cell_images")) {
        const json& images = map.at("cell_images");
        if (!images.is_object()) throw_invalid(kModule, "cw.map.cell_images must be an object keyed by cell name");
        for (const auto& [cell, img] : images.items()) {
            CellImage ci;
            if (img.is_string()) {
                if (img.get<std::string>() != "derive")
                    throw_invalid(kModule, "cell image of " + cell + " must be a chain or \"derive\"");
                ci.derive = true;
            } else {
                ci.chain = parse_chain(img, d.generators, "image of " + cell);
            }
            d.cell_images[cell] = std::move(ci);
        }
    }
    return doc;
}

Assertions parse_assertions(const json& j) {
    Assertions a;
    if (!j.is_object()) throw_invalid(kModule, "assertions must be an object");
    if (j.contains("closed_smooth_manifold")) {
        const json& m = j.at("closed_smooth_manifold");
        a.manifold_A = optional_bool(m, "A", false, "assertions.closed_smooth_manifold");
        a.manifold_B = optional_bool(m, "B", false, "assertions.closed_smooth_manifold");
    }
    if (j.contains("dim_A")) a.dim_A = static_cast<int>(as_int(j.at("dim_A"), "assertions.dim_A"));
    if (j.contains("dim_B")) a.dim_B = static_cast<int>(as_int(j.at("dim_B"), "assertions.dim_B"));
    return a;
}

}  // namespace

Word parse_word(const json& j, const std::vector<std::string>& generators) {
    if (!j.is_array()) throw_invalid(kModule, "a word is a list of [generator, exponent] pairs");
    std::vector<Letter> letters;
    for (const auto& l : j) {
        if (!l.is_array() || l.size() != 2 || !l[0].is_string())
            throw_invalid(kModule, "a word letter is [generator, exponent]");
        const std::string g = l[0].get<std::string>();
        const auto it = std::find(generators.begin(), generators.end(), g);
        if (it == generators.end()) throw_invalid(kModule, "word uses unknown generator '" + g + "'");
        letters.push_back({static_cast<std::size_t>(it - generators.begin()), as_int(l[1], "word exponent")});
    }
    return Word(std::move(letters));
}

json word_to_json(const Word& w, const std::vector<std::string>& generators) {
    json out = json::array();
    for (const auto& l : w.letters()) out.push_back(json::array({generators.at(l.generator), l.exponent}));
    return out;
}

InputDocument parse_document(const json& j, const std::string& tier_override) {
    if (!j.is_object()) throw_invalid(kModule, "document must be a JSON object");
    InputDocument doc;
    if (j.contains("name")) doc.name = scalar_name(j.at("name"), "name");
    const bool has_s = j.contains("simplicial");
    const bool has_c = j.contains("cw");
    if (!tier_override.empty()) {
        doc.tier = tier_override;
    } else if (j.contains("tier")) {
        doc.tier = scalar_name(j.at("tier"), "tier");
    } else if (has_s != has_c) {
        doc.tier = has_s ? "simplicial" : "cw";
    } else {
        throw_invalid(kModule, "document must contain exactly one of \"simplicial\" and \"cw\"");
    }
    if (doc.tier != "simplicial" && doc.tier != "cw") throw_invalid(kModule, "unknown tier '" + doc.tier + "'");
    if (tier_override.empty() && has_s && has_c)
        throw_invalid(kModule, "document must contain exactly one of \"simplicial\" and \"cw\"");
    if (!j.contains(doc.tier)) throw_invalid(kModule, "document has no \"" + doc.tier + "\" payload");
    if (j.contains("assertions")) doc.assertions = parse_assertions(j.at("assertions"));
    return doc.tier == "simplicial" ? parse_simplicial(j.at("simplicial"), std::move(doc))
                                    : parse_cw(j.at("cw"), std::move(doc));
}

InputDocument read_document(const std::string& path, const std::string& tier_override) {
    std::ifstream in(path);
    if (!in) throw_invalid(kModule, "cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw_invalid(kModule, path + " is not valid JSON: " + e.what());
    }
    return parse_document(j, tier_override);
}

std::vector<std::size_t> tree_priority(const SimplicialPair& pair, const std::string& spec) {
    std::string s = spec;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<std::size_t> order;
    std::vector<bool> listed(pair.num_vertices(), false);
    const auto& names = pair.vertex_names();
    for (std::string tok; in >> tok;) {
        const auto it = std::find(names.begin(), names.end(), tok);
        if (it == names.end()) throw_invalid(kModule, "--tree names unknown vertex '" + tok + "'");
        const auto v = static_cast<std::size_t>(it - names.begin());
        if (listed[v]) throw_invalid(kModule, "--tree lists vertex '" + tok + "' twice");
        listed[v] = true;
        order.push_back(v);
    }
    for (std::size_t v = 0; v < names.size(); ++v)
        if (!listed[v]) order.push_back(v);
    std::vector<std::size_t> rank(names.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
    return rank;
}

}  // namespace reltrace
