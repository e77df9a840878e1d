#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "reltrace/integer_matrix.hpp"

namespace reltrace {

/// A twisted class named by its canonical representative.
struct ClassEntry {
    std::string name;                                 // "a^2b", "1"
    std::vector<std::pair<std::string, Int>> word;   // the representative as [[gen, exp], ...]
    friend bool operator==(const ClassEntry&, const ClassEntry&) = default;
};

struct ShadowEntry {
    std::string label;                    // "A0", "B0", "A", "B"
    std::vector<std::string> generators;  // of the presentation
    std::size_t relators = 0;
    std::string group;                    // abelianization, e.g. "Z^2"
    std::vector<std::vector<Int>> twist;  // Phi on generator coordinates
    std::string structure;                // coker(I - Phi)
    std::optional<Int> size;              // class count when finite
    bool exact = false;                   // false: abelianized shadow
    std::string note;
    std::vector<ClassEntry> classes;      // all classes, or those in use when infinite
    friend bool operator==(const ShadowEntry&, const ShadowEntry&) = default;
};

struct TraceTerm {
    std::string cls;
    Int coefficient = 0;
    friend bool operator==(const TraceTerm&, const TraceTerm&) = default;
};

struct TraceEntry {
    std::string label;
    std::string shadow;  // label of the ShadowEntry holding its classes
    std::vector<TraceTerm> terms;
    Int augmentation = 0;
    std::string text;
    friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct LefschetzEntry {
    std::string label;
    Int value = 0;
    std::optional<Int> homology;
    friend bool operator==(const LefschetzEntry&, const LefschetzEntry&) = default;
};

struct LefschetzSection {
    std::vector<LefschetzEntry> A;
    std::vector<LefschetzEntry> B;
    std::vector<LefschetzEntry> absolute;
    friend bool operator==(const LefschetzSection&, const LefschetzSection&) = default;
};

struct PushEntry {
    std::string from;
    std::string to;
    std::vector<std::pair<std::string, std::string>> classes;  // listed source classes -> target class
    friend bool operator==(const PushEntry&, const PushEntry&) = default;
};

struct TraceSection {
    std::vector<TraceEntry> A;
    std::vector<TraceEntry> B;
    std::vector<TraceEntry> absolute;
    std::vector<PushEntry> push;
    bool abelianized = false;
    friend bool operator==(const TraceSection&, const TraceSection&) = default;
};

struct NielsenSection {
    Int N_A = 0;
    Int N_f = 0;
    Int N_common = 0;
    Int relative = 0;
    friend bool operator==(const NielsenSection&, const NielsenSection&) = default;
};

struct VerdictSection {
    std::string conclusion;
    bool trace_zero = false;
    int dim_A = -1;
    int dim_B = -1;
    bool dim_A_ok = false;
    bool codim_ok = false;
    bool manifold_A = false;
    bool manifold_B = false;
    bool shadow_exact = false;
    friend bool operator==(const VerdictSection&, const VerdictSection&) = default;
};

struct CheckEntry {
    std::string name;
    bool ok = false;
    std::string detail;
    friend bool operator==(const CheckEntry&, const CheckEntry&) = default;
};

struct ErrorEntry {
    std::string kind;  // "invalid-input" or "computation-failure"
    std::string module;
    std::string message;
    friend bool operator==(const ErrorEntry&, const ErrorEntry&) = default;
};

struct InvariantReport {
    std::string name;
    std::string tier;
    std::string command;
    int dim_A = -1;
    int dim_B = -1;
    std::vector<std::string> diagnostics;
    std::vector<ShadowEntry> shadows;
    std::optional<LefschetzSection> lefschetz;
    std::optional<TraceSection> trace;
    std::optional<NielsenSection> nielsen;
    std::optional<VerdictSection> verdict;
    std::vector<CheckEntry> consistency;
    std::vector<std::string> excluded;
    std::vector<std::string> warnings;
    std::vector<std::pair<std::string, double>> timings;  // seconds, only when requested
    std::optional<ErrorEntry> error;

    friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

nlohmann::ordered_json to_json(const InvariantReport& r);
/// Inverse of to_json; throws InvalidInput on a malformed report.
InvariantReport report_from_json(const nlohmann::ordered_json& j);

/// Indented rendering of the JSON tree: the same data as the JSON report.
std::string render_text(const nlohmann::ordered_json& j);
std::string render_json(const nlohmann::ordered_json& j);

}  // namespace reltrace
