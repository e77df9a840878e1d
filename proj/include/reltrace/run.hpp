#pragma once

#include <string>
#include <vector>

#include "reltrace/document.hpp"
#include "reltrace/report.hpp"

namespace reltrace {

enum ExitCode : int {
    kExitOk = 0,
    kExitInvalid = 1,
    kExitFailure = 2,
    kExitInconclusive = 3,  // `deformable` reached no conclusion; the trace is still reported
};

struct RunOptions {
    std::string format = "text";  // "text" or "json"
    std::string tier;             // overrides the document's tier when set
    std::string tree;             // vertex priority for spanning trees (simplicial tier)
    bool crosscheck = true;       // homology-level Lefschetz verification
    int bounded_conjugacy = 0;    // bounded relator rewriting in abelian recognition
    bool timings = false;
};

struct RunResult {
    int exit_code = kExitOk;
    InvariantReport report;
};

/// check, lefschetz, reidemeister, nielsen, deformable, all.
const std::vector<std::string>& commands();

RunResult run(const std::string& command, const InputDocument& doc, const RunOptions& options);
/// Reads and parses `path` first; parse errors become an invalid-input report.
RunResult run_file(const std::string& command, const std::string& path, const RunOptions& options);

std::string format_report(const InvariantReport& report, const std::string& format);

}  // namespace reltrace
