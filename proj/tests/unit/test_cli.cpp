#include "doctest.h"
#include "harness.hpp"
#include "reltrace/document.hpp"
#include "reltrace/run.hpp"

using namespace reltrace;
using nlohmann::json;
using reltrace::testing::fixture_path;

namespace {

json arc_document() {
    return json::parse(R"({
        "name": "arc",
        "simplicial": {
            "vertices": [0, 1, 2],
            "simplices": [[[0], [1], [2]], [[0, 1], [1, 2], [0, 2]]],
            "A_simplices": [[0], [1], [0, 1]],
            "vertex_map": {"0": 0, "1": 1, "2": 2}
        }
    })");
}

int exit_of(const std::string& command, const std::string& fixture) {
    return run_file(command, fixture_path(fixture), {}).exit_code;
}

}  // namespace

TEST_CASE("simplicial documents in all simplex layouts agree") {
    const InputDocument nested = parse_document(arc_document());
    CHECK(nested.tier == "simplicial");
    CHECK(nested.pair.num_vertices() == 3);
    CHECK(nested.pair.simplices(1).size() == 3);
    CHECK(nested.pair.dimension_of_A() == 1);

    json keyed = arc_document();
    keyed["simplicial"]["simplices"] = json::parse(R"({"1": [[0, 1], [1, 2], [0, 2]]})");
    const InputDocument by_dimension = parse_document(keyed);
    CHECK(by_dimension.pair.simplices(1) == nested.pair.simplices(1));

    const InputDocument from_file = read_document(fixture_path("circle_arc_identity.json"));
    CHECK(from_file.pair.simplices(1) == nested.pair.simplices(1));
    CHECK(from_file.map.image == nested.map.image);
}

TEST_CASE("schema violations are invalid input") {
    CHECK_THROWS_AS(parse_document(json::parse(R"({"name": "x"})")), Error);
    json partial = arc_document();
    partial["simplicial"]["vertex_map"].erase("2");
    CHECK_THROWS_AS(parse_document(partial), Error);
    json unknown = arc_document();
    unknown["simplicial"]["vertex_map"]["2"] = 7;
    CHECK_THROWS_AS(parse_document(unknown), Error);
    json both = arc_document();
    both["cw"] = json::parse(R"({"generators": ["b"], "map": {"phi": {"b": [["b", 3]]}}})");
    CHECK_THROWS_AS(parse_document(both), Error);
    CHECK(parse_document(both, "cw").tier == "cw");
    CHECK(parse_document(both, "simplicial").tier == "simplicial");
    try {
        parse_document(json::parse(R"({"name": "x"})"));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
        CHECK(e.module() == "cli");
    }
}

TEST_CASE("words in files") {
    const std::vector<std::string> gens{"a", "b"};
    const Word w = parse_word(json::parse(R"([["a", 1], ["b", -3]])"), gens);
    CHECK(w == Word({{0, 1}, {1, -3}}));
    CHECK(word_to_json(w, gens) == json::parse(R"([["a", 1], ["b", -3]])"));
    CHECK_THROWS_AS(parse_word(json::parse(R"([["c", 1]])"), gens), Error);
}

TEST_CASE("tree priority lists vertices first") {
    const InputDocument doc = parse_document(arc_document());
    CHECK(tree_priority(doc.pair, "2,0") == std::vector<std::size_t>{1, 2, 0});
    CHECK(tree_priority(doc.pair, "1 2") == std::vector<std::size_t>{2, 0, 1});
    CHECK_THROWS_AS(tree_priority(doc.pair, "9"), Error);
}

TEST_CASE("exit codes") {
    CHECK(exit_of("check", "bad_pair.json") == kExitInvalid);
    CHECK(exit_of("all", "no_such_file.json") == kExitInvalid);
    CHECK(exit_of("deformable", "fpf_rotation_c5.json") == kExitInconclusive);
    CHECK(exit_of("all", "fpf_rotation_c5.json") == kExitOk);
    CHECK(exit_of("deformable", "circle_deg3.json") == kExitOk);
    CHECK(exit_of("frobnicate", "circle_deg3.json") == kExitInvalid);
    for (const auto& command : commands()) CHECK(exit_of(command, "torus_circle.json") == kExitOk);
}

TEST_CASE("a map that is not a homomorphism is invalid input") {
    const InputDocument doc = parse_document(json::parse(R"({
        "name": "swap",
        "cw": {
            "generators": ["a", "b"],
            "cells": {"2": [{"name": "R", "relator": [["a", 2]]}]},
            "map": {"phi": {"a": [["b", 1]], "b": [["a", 1]]}, "cell_images": {"R": "derive"}}
        }
    })"));
    const RunResult r = run("all", doc, {});
    CHECK(r.exit_code == kExitInvalid);
    REQUIRE(r.report.error);
    CHECK(r.report.error->message.find("relators") != std::string::npos);
}

TEST_CASE("an ambiguous derived cell image is a computation failure") {
    const InputDocument doc = parse_document(json::parse(R"({
        "name": "duplicate cells",
        "cw": {
            "generators": ["a"],
            "cells": {"2": [{"name": "R", "relator": [["a", 1]]}, {"name": "S", "relator": [["a", 1]]}]},
            "map": {"phi": {"a": [["a", 1]]}, "cell_images": {"R": "derive", "S": "derive"}}
        }
    })"));
    const RunResult r = run("all", doc, {});
    CHECK(r.exit_code == kExitFailure);
    REQUIRE(r.report.error);
    CHECK(r.report.error->kind == "computation-failure");
    CHECK(r.report.error->message.find("non-unique solution") != std::string::npos);
}

TEST_CASE("bad pairs report the face-closure diagnostic") {
    const RunResult r = run_file("check", fixture_path("bad_pair.json"), {});
    REQUIRE(r.report.error);
    CHECK(r.report.error->kind == "invalid-input");
    CHECK(r.report.error->message.find("face-closure violated") != std::string::npos);
}

TEST_CASE("sections follow the command") {
    const auto section = [](const std::string& command) {
        return run_file(command, fixture_path("torus_circle.json"), {}).report;
    };
    const InvariantReport check = section("check");
    CHECK_FALSE(check.lefschetz);
    CHECK_FALSE(check.trace);
    CHECK(check.shadows.size() == 2);
    CHECK(section("lefschetz").lefschetz);
    CHECK(section("nielsen").nielsen);
    CHECK(section("deformable").verdict);
    const InvariantReport all = section("all");
    CHECK(all.lefschetz);
    CHECK(all.trace);
    CHECK(all.nielsen);
    CHECK(all.verdict);
    CHECK_FALSE(all.consistency.empty());
}

TEST_CASE("json reports round trip and are deterministic") {
    for (const auto& path : reltrace::testing::fixture_files()) {
        const RunResult first = run_file("all", path, {});
        const RunResult second = run_file("all", path, {});
        CHECK(format_report(first.report, "json") == format_report(second.report, "json"));
        CHECK(report_from_json(to_json(first.report)) == first.report);
        CHECK(report_from_json(nlohmann::ordered_json::parse(format_report(first.report, "json"))) == first.report);
    }
}

TEST_CASE("text reports carry the same data") {
    const std::string out = format_report(run_file("lefschetz", fixture_path("circle_arc_identity.json"), {}).report, "text");
    CHECK(out.find("lefschetz:") != std::string::npos);
    CHECK(out.find("value: -1") != std::string::npos);
    CHECK_THROWS_AS(format_report(InvariantReport{}, "xml"), Error);
}

TEST_CASE("options") {
    RunOptions timed;
    timed.timings = true;
    CHECK_FALSE(run_file("all", fixture_path("circle_deg3.json"), timed).report.timings.empty());
    CHECK(run_file("all", fixture_path("circle_deg3.json"), {}).report.timings.empty());

    RunOptions tree;
    tree.tree = "2,1";
    const RunResult r = run_file("all", fixture_path("circle_arc_identity.json"), tree);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.report.lefschetz->B[0].value == -1);

    RunOptions bounded;
    bounded.bounded_conjugacy = 2;
    CHECK_FALSE(run_file("all", fixture_path("circle_deg3.json"), bounded).report.warnings.empty());

    RunOptions quick;
    quick.crosscheck = false;
    CHECK_FALSE(run_file("lefschetz", fixture_path("torus_circle.json"), quick).report.lefschetz->B[0].homology.has_value());
}
