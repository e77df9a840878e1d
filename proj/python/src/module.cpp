#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"
#include "reltrace/document.hpp"
#include "reltrace/group.hpp"
#include "reltrace/integer_matrix.hpp"
#include "reltrace/run.hpp"

namespace py = pybind11;
using namespace reltrace;

namespace {

RunOptions make_options(const std::string& tier, const std::string& tree, bool crosscheck, int bounded_conjugacy,
                        bool timings) {
    RunOptions o;
    o.tier = tier;
    o.tree = tree;
    o.crosscheck = crosscheck;
    o.bounded_conjugacy = bounded_conjugacy;
    o.timings = timings;
    return o;
}

py::tuple result_tuple(const RunResult& r, const std::string& format) {
    return py::make_tuple(r.exit_code, format_report(r.report, format));
}

IntMatrix to_matrix(const std::vector<std::vector<Int>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (const auto& r : rows)
        if (r.size() != cols) throw py::value_error("rows of unequal length");
    return IntMatrix::from_rows(rows, cols);
}

std::vector<std::vector<Int>> to_rows(const IntMatrix& m) {
    std::vector<std::vector<Int>> out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Relative Lefschetz numbers, Reidemeister traces and Nielsen numbers";

    py::register_exception<Error>(m, "ReltraceError", PyExc_ValueError);

    m.def("commands", &commands);

    m.def(
        "run_file",
        [](const std::string& command, const std::string& path, const std::string& format, const std::string& tier,
           const std::string& tree, bool crosscheck, int bounded_conjugacy, bool timings) {
            const RunResult r = [&] {
                py::gil_scoped_release release;
                return run_file(command, path, make_options(tier, tree, crosscheck, bounded_conjugacy, timings));
            }();
            return result_tuple(r, format);
        },
        py::arg("command"), py::arg("path"), py::arg("format") = "json", py::arg("tier") = "", py::arg("tree") = "",
        py::arg("crosscheck") = true, py::arg("bounded_conjugacy") = 0, py::arg("timings") = false,
        "Evaluate a document file; returns (exit_code, report text).");

    m.def(
        "run_json",
        [](const std::string& command, const std::string& document, const std::string& format, const std::string& tier,
           const std::string& tree, bool crosscheck, int bounded_conjugacy, bool timings) {
            const RunOptions options = make_options(tier, tree, crosscheck, bounded_conjugacy, timings);
            RunResult r;
            try {
                const InputDocument doc = parse_document(nlohmann::json::parse(document), tier);
                py::gil_scoped_release release;
                r = run(command, doc, options);
            } catch (const nlohmann::json::parse_error& e) {
                r.exit_code = kExitInvalid;
                r.report.command = command;
                r.report.error = ErrorEntry{"invalid-input", "cli", e.what()};
            } catch (const Error& e) {
                r.exit_code = e.kind() == ErrorKind::InvalidInput ? kExitInvalid : kExitFailure;
                r.report.command = command;
                r.report.error = ErrorEntry{e.kind() == ErrorKind::InvalidInput ? "invalid-input" : "computation-failure",
                                            e.module(), e.detail()};
            }
            return result_tuple(r, format);
        },
        py::arg("command"), py::arg("document"), py::arg("format") = "json", py::arg("tier") = "",
        py::arg("tree") = "", py::arg("crosscheck") = true, py::arg("bounded_conjugacy") = 0,
        py::arg("timings") = false, "Evaluate a document given as a JSON string; returns (exit_code, report text).");

    m.def(
        "smith_normal_form",
        [](const std::vector<std::vector<Int>>& rows) {
            const SmithForm s = smith_normal_form(to_matrix(rows));
            py::dict out;
            out["U"] = to_rows(s.U);
            out["D"] = to_rows(s.D);
            out["V"] = to_rows(s.V);
            out["rank"] = s.rank;
            out["invariant_factors"] = s.invariant_factors;
            return out;
        },
        py::arg("matrix"), "U, D, V with U M V = D and D in divisibility-chain form.");

    m.def(
        "twisted_classes",
        [](const std::vector<std::vector<Int>>& phi, std::vector<std::string> names) {
            const IntMatrix twist = to_matrix(phi);
            if (names.empty())
                for (std::size_t i = 0; i < twist.rows(); ++i) names.push_back("x" + std::to_string(i));
            if (names.size() != twist.rows() || twist.rows() != twist.cols())
                throw py::value_error("phi must be square with one row per generator");
            const ShadowClassSet classes(
                std::make_shared<const AbelianStructure>(AbelianStructure::free_abelian(names)), twist);
            if (!classes.finite()) return py::object(py::none());
            std::vector<std::string> out;
            for (const auto& r : classes.representatives()) out.push_back(classes.format(r));
            return py::object(py::cast(out));
        },
        py::arg("phi"), py::arg("names") = std::vector<std::string>{},
        "Twisted conjugacy classes of phi on a free abelian group, or None when infinite.");
}
