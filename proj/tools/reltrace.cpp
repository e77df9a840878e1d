#include <iostream>

#include "CLI11.hpp"
#include "reltrace/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Relative Lefschetz numbers, Reidemeister traces and Nielsen numbers of relative self-maps"};
    app.require_subcommand(1, 1);

    reltrace::RunOptions options;
    std::string path;
    app.add_option("--format", options.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--tier", options.tier, "Read this tier's payload")->check(CLI::IsMember({"simplicial", "cw"}));
    app.add_option("--tree", options.tree,
                   "Vertex priority for spanning trees, e.g. \"2,0,1\"; the first vertex of each component is its root");
    app.add_flag("--no-crosscheck{false}", options.crosscheck, "Skip the homology-level Lefschetz cross-check");
    app.add_option("--bounded-conjugacy", options.bounded_conjugacy,
                   "Rounds of bounded relator rewriting when recognizing abelian groups (experimental)")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--timings", options.timings, "Include stage timings in the report");

    for (const std::string& name : reltrace::commands()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("input", path, "Input document (JSON)")->required()->check(CLI::ExistingFile);
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : reltrace::kExitInvalid;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const reltrace::RunResult result = reltrace::run_file(command, path, options);
    std::cout << reltrace::format_report(result.report, options.format);
    if (result.report.error)
        std::cerr << "reltrace: " << result.report.error->module << ": " << result.report.error->message << "\n";
    return result.exit_code;
}
