#include "reltrace/run.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "reltrace/ei_category.hpp"

namespace reltrace {

namespace {

constexpr const char* kModule = "cli";

ClassEntry class_entry(const ShadowClassSet& classes, const Exponents& cls) {
    ClassEntry e;
    e.name = classes.format(cls);
    const auto& names = classes.group().generator_names();
    const Word word = classes.group().to_word(cls);
    for (const auto& l : word.letters()) e.word.emplace_back(names.at(l.generator), l.exponent);
    return e;
}

ShadowEntry shadow_entry(const std::string& label, const Presentation& presentation, const ShadowInfo& info,
                         const std::set<Exponents, ColexLess>& used) {
    const ShadowClassSet& classes = *info.classes;
    ShadowEntry s;
    s.label = label;
    s.generators = presentation.generators;
    s.relators = presentation.relators.size();
    s.group = AbelianInvariants{classes.group().free_rank(), classes.group().torsion()}.format();
    for (std::size_t i = 0; i < classes.twist().rows(); ++i) s.twist.push_back(classes.twist().row(i));
    s.structure = AbelianInvariants{classes.free_rank(), classes.torsion()}.format();
    s.size = classes.size();
    s.exact = info.exact;
    s.note = info.exact ? info.reason : "abelianized shadow: " + info.reason;
    if (classes.finite())
        for (const auto& rep : classes.representatives()) s.classes.push_back(class_entry(classes, rep));
    else
        for (const auto& rep : used) s.classes.push_back(class_entry(classes, rep));
    return s;
}

TraceEntry trace_entry(const PartTrace& t) {
    TraceEntry e;
    e.label = t.label;
    e.shadow = t.label;
    for (const auto& [cls, c] : t.trace.coefficients) e.terms.push_back({t.classes->format(cls), c});
    e.augmentation = augmentation(t.trace);
    e.text = format(*t.classes, t.trace);
    return e;
}

std::vector<LefschetzEntry> lefschetz_entries(const std::vector<ComponentValue>& values) {
    std::vector<LefschetzEntry> out;
    for (const auto& v : values) out.push_back({v.label, v.value, v.homology_value});
    return out;
}

ErrorEntry error_entry(const Error& e) {
    return {e.kind() == ErrorKind::InvalidInput ? "invalid-input" : "computation-failure", e.module(), e.detail()};
}

class Stopwatch {
public:
    explicit Stopwatch(InvariantReport& report, bool enabled) : report_(report), enabled_(enabled) {}
    void lap(const std::string& stage) {
        const auto now = std::chrono::steady_clock::now();
        if (enabled_) report_.timings.emplace_back(stage, std::chrono::duration<double>(now - last_).count());
        last_ = now;
    }

private:
    InvariantReport& report_;
    bool enabled_;
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

void compute(const std::string& command, const InputDocument& doc, const RunOptions& options, RunResult& result) {
    InvariantReport& r = result.report;
    Stopwatch clock(r, options.timings);

    ModelOptions mo;
    mo.rewrite_rounds = options.bounded_conjugacy;
    if (options.bounded_conjugacy > 0)
        r.warnings.push_back("bounded relator rewriting (" + std::to_string(options.bounded_conjugacy) +
                             " rounds) is experimental; its abelian recognitions are not authoritative");

    PairModel model;
    if (doc.tier == "simplicial") {
        Diagnostics d = validate_pair(doc.pair);
        if (!has_errors(d)) {
            const Diagnostics m = validate_map(doc.pair, doc.map);
            d.insert(d.end(), m.begin(), m.end());
        }
        for (const auto& diag : d) r.diagnostics.push_back(diag.module + ": " + diag.message);
        if (has_errors(d)) {
            const auto first = std::find_if(d.begin(), d.end(), [](const Diagnostic& x) { return x.severity == Severity::Error; });
            throw Error(ErrorKind::InvalidInput, first->module, first->message);
        }
        if (!options.tree.empty()) mo.priority = tree_priority(doc.pair, options.tree);
        r.dim_A = doc.pair.dimension_of_A();
        r.dim_B = doc.pair.dimension();
        model = build_simplicial_model(doc.pair, doc.map, mo);
    } else {
        if (!options.tree.empty()) r.warnings.push_back("--tree has no effect on the cw tier");
        r.dim_A = doc.cw.dimension_of_A();
        r.dim_B = doc.cw.dimension();
        model = build_cellular_pair_model(doc.cw, mo);
    }
    r.excluded = model.excluded;
    clock.lap("model");

    const RelativeLefschetz lefschetz = relative_lefschetz(model, options.crosscheck);
    clock.lap("lefschetz");
    const RelativeTrace trace = relative_reidemeister(model);
    clock.lap("reidemeister");
    const NielsenNumbers nielsen = relative_nielsen(trace);
    const DeformabilityVerdict verdict = deformability_verdict(trace, model, doc.assertions);
    const std::vector<ConsistencyCheck> checks = consistency_report(lefschetz, trace, nielsen);
    clock.lap("consistency");

    // Shadows, listing the classes in use when a class set is infinite.
    std::vector<std::set<Exponents, ColexLess>> used_A(model.a_parts.size()), used_B(model.b_parts.size());
    for (std::size_t i = 0; i < trace.A.size(); ++i)
        for (const auto& [cls, c] : trace.A[i].trace.coefficients) {
            used_A[i].insert(cls);
            used_B[trace.a_to_b[i]].insert(trace.push[i](cls));
        }
    for (std::size_t j = 0; j < trace.B.size(); ++j) {
        for (const auto& [cls, c] : trace.B[j].trace.coefficients) used_B[j].insert(cls);
        for (const auto& [cls, c] : trace.absolute[j].trace.coefficients) used_B[j].insert(cls);
    }
    for (std::size_t i = 0; i < model.a_parts.size(); ++i) {
        const APart& a = model.a_parts[i];
        r.shadows.push_back(shadow_entry(a.label, a.presentation, a.shadow, used_A[i]));
    }
    for (std::size_t j = 0; j < model.b_parts.size(); ++j) {
        const BPart& b = model.b_parts[j];
        r.shadows.push_back(shadow_entry(b.label, b.presentation, b.shadow, used_B[j]));
    }
    for (const auto& s : r.shadows)
        if (!s.exact) r.warnings.push_back(s.label + ": " + s.note);

    const bool all = command == "all";
    if (all || command == "lefschetz")
        r.lefschetz = LefschetzSection{lefschetz_entries(lefschetz.A), lefschetz_entries(lefschetz.B),
                                       lefschetz_entries(lefschetz.absolute)};
    if (all || command == "reidemeister" || command == "nielsen" || command == "deformable") {
        TraceSection t;
        for (const auto& p : trace.A) t.A.push_back(trace_entry(p));
        for (const auto& p : trace.B) t.B.push_back(trace_entry(p));
        for (const auto& p : trace.absolute) t.absolute.push_back(trace_entry(p));
        for (std::size_t i = 0; i < trace.push.size(); ++i) {
            const ClassMap& push = trace.push[i];
            PushEntry e{trace.A[i].label, trace.B[trace.a_to_b[i]].label, {}};
            for (const auto& cls : push.source().finite() ? push.source().representatives()
                                                          : std::vector<Exponents>(used_A[i].begin(), used_A[i].end()))
                e.classes.emplace_back(push.source().format(cls), push.target().format(push(cls)));
            t.push.push_back(std::move(e));
        }
        t.abelianized = trace.abelianized;
        r.trace = std::move(t);
    }
    if (all || command == "nielsen") r.nielsen = NielsenSection{nielsen.N_A, nielsen.N_f, nielsen.N_common, nielsen.relative};
    if (all || command == "deformable") {
        r.verdict = VerdictSection{to_string(verdict.conclusion), verdict.trace_zero, verdict.dim_A,
                                   verdict.dim_B,                 verdict.dim_A_ok,   verdict.codim_ok,
                                   verdict.manifold_A,            verdict.manifold_B, verdict.shadow_exact};
        if (command == "deformable" && verdict.conclusion != Conclusion::Deformable &&
            verdict.conclusion != Conclusion::NotDeformable)
            result.exit_code = kExitInconclusive;
    }
    if (all)
        for (const auto& c : checks) r.consistency.push_back({c.name, c.ok, c.detail});
    clock.lap("report");
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> list = {"check", "lefschetz", "reidemeister", "nielsen", "deformable", "all"};
    return list;
}

RunResult run(const std::string& command, const InputDocument& doc, const RunOptions& options) {
    RunResult result;
    InvariantReport& r = result.report;
    r.name = doc.name;
    r.tier = doc.tier;
    r.command = command;
    try {
        if (std::find(commands().begin(), commands().end(), command) == commands().end())
            throw_invalid(kModule, "unknown command '" + command + "'");
        compute(command, doc, options, result);
    } catch (const Error& e) {
        r.error = error_entry(e);
        result.exit_code = e.kind() == ErrorKind::InvalidInput ? kExitInvalid : kExitFailure;
    } catch (const std::exception& e) {
        r.error = ErrorEntry{"computation-failure", "internal", e.what()};
        result.exit_code = kExitFailure;
    }
    return result;
}

RunResult run_file(const std::string& command, const std::string& path, const RunOptions& options) {
    InputDocument doc;
    try {
        doc = read_document(path, options.tier);
    } catch (const Error& e) {
        RunResult result;
        result.report.command = command;
        result.report.error = error_entry(e);
        result.exit_code = e.kind() == ErrorKind::InvalidInput ? kExitInvalid : kExitFailure;
        return result;
    }
    return run(command, doc, options);
}

std::string format_report(const InvariantReport& report, const std::string& format) {
    const auto j = to_json(report);
    if (format == "json") return render_json(j);
    if (format == "text") return render_text(j);
    throw_invalid(kModule, "unknown format '" + format + "'");
}

}  // namespace reltrace
