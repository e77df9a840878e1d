#include "reltrace/report.hpp"

#include <sstream>

#include "reltrace/error.hpp"

namespace reltrace {

namespace {

constexpr const char* kModule = "cli";

using ojson = nlohmann::ordered_json;

template <typename T>
ojson optional_int(const std::optional<T>& v) {
    return v ? ojson(*v) : ojson(nullptr);
}

template <typename T>
std::optional<T> read_optional(const ojson& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

ojson class_json(const ClassEntry& c) {
    ojson word = ojson::array();
    for (const auto& [g, e] : c.word) word.push_back(ojson::array({g, e}));
    return ojson{{"name", c.name}, {"word", word}};
}

ClassEntry class_from(const ojson& j) {
    ClassEntry c;
    c.name = j.at("name").get<std::string>();
    for (const auto& l : j.at("word")) c.word.emplace_back(l.at(0).get<std::string>(), l.at(1).get<Int>());
    return c;
}

ojson shadow_json(const ShadowEntry& s) {
    ojson classes = ojson::array();
    for (const auto& c : s.classes) classes.push_back(class_json(c));
    return ojson{{"label", s.label},   {"generators", s.generators}, {"relators", s.relators},
                 {"group", s.group},   {"twist", s.twist},           {"structure", s.structure},
                 {"size", optional_int(s.size)}, {"exact", s.exact}, {"note", s.note},
                 {"classes", classes}};
}

ShadowEntry shadow_from(const ojson& j) {
    ShadowEntry s;
    s.label = j.at("label").get<std::string>();
    s.generators = j.at("generators").get<std::vector<std::string>>();
    s.relators = j.at("relators").get<std::size_t>();
    s.group = j.at("group").get<std::string>();
    s.twist = j.at("twist").get<std::vector<std::vector<Int>>>();
    s.structure = j.at("structure").get<std::string>();
    s.size = read_optional<Int>(j.at("size"));
    s.exact = j.at("exact").get<bool>();
    s.note = j.at("note").get<std::string>();
    for (const auto& c : j.at("classes")) s.classes.push_back(class_from(c));
    return s;
}

ojson trace_json(const TraceEntry& t) {
    ojson terms = ojson::array();
    for (const auto& term : t.terms) terms.push_back(ojson{{"class", term.cls}, {"coefficient", term.coefficient}});
    return ojson{{"label", t.label}, {"shadow", t.shadow}, {"value", t.text}, {"terms", terms},
                 {"augmentation", t.augmentation}};
}

TraceEntry trace_from(const ojson& j) {
    TraceEntry t;
    t.label = j.at("label").get<std::string>();
    t.shadow = j.at("shadow").get<std::string>();
    t.text = j.at("value").get<std::string>();
    for (const auto& term : j.at("terms"))
        t.terms.push_back({term.at("class").get<std::string>(), term.at("coefficient").get<Int>()});
    t.augmentation = j.at("augmentation").get<Int>();
    return t;
}

ojson lefschetz_list(const std::vector<LefschetzEntry>& v) {
    ojson out = ojson::array();
    for (const auto& e : v)
        out.push_back(ojson{{"label", e.label}, {"value", e.value}, {"homology", optional_int(e.homology)}});
    return out;
}

std::vector<LefschetzEntry> lefschetz_from(const ojson& j) {
    std::vector<LefschetzEntry> out;
    for (const auto& e : j)
        out.push_back({e.at("label").get<std::string>(), e.at("value").get<Int>(), read_optional<Int>(e.at("homology"))});
    return out;
}

ojson trace_list(const std::vector<TraceEntry>& v) {
    ojson out = ojson::array();
    for (const auto& t : v) out.push_back(trace_json(t));
    return out;
}

std::vector<TraceEntry> traces_from(const ojson& j) {
    std::vector<TraceEntry> out;
    for (const auto& t : j) out.push_back(trace_from(t));
    return out;
}

bool is_scalar(const ojson& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const ojson& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_null()) return "none";
    return j.dump();
}

bool inline_array(const ojson& j) {
    if (!j.is_array()) return false;
    for (const auto& e : j)
        if (!is_scalar(e) && !(e.is_array() && inline_array(e))) return false;
    return true;
}

std::string inline_text(const ojson& j) {
    if (!j.is_array()) return scalar_text(j);
    std::string out = "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + inline_text(j[i]);
    return out + "]";
}

void render(const ojson& j, const std::string& indent, std::ostringstream& os);

void render_value(const std::string& head, const ojson& v, const std::string& indent, std::ostringstream& os) {
    if (is_scalar(v) || inline_array(v)) {
        os << indent << head << inline_text(v) << "\n";
    } else {
        os << indent << head.substr(0, head.size() - 1) << "\n";
        render(v, indent + "  ", os);
    }
}

void render(const ojson& j, const std::string& indent, std::ostringstream& os) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) render_value(key + ": ", value, indent, os);
        return;
    }
    if (j.is_array()) {
        for (const auto& e : j) {
            if (e.is_object() && !e.empty()) {
                std::ostringstream item;
                render(e, indent + "  ", item);
                std::string text = item.str();
                text.replace(indent.size(), 2, "- ");
                os << text;
            } else {
                render_value("- ", e, indent, os);
            }
        }
        return;
    }
    os << indent << scalar_text(j) << "\n";
}

}  // namespace

ojson to_json(const InvariantReport& r) {
    ojson j;
    j["name"] = r.name;
    j["tier"] = r.tier;
    j["command"] = r.command;
    j["dimensions"] = ojson{{"A", r.dim_A}, {"B", r.dim_B}};
    j["diagnostics"] = r.diagnostics;
    ojson shadows = ojson::array();
    for (const auto& s : r.shadows) shadows.push_back(shadow_json(s));
    j["shadows"] = shadows;
    if (r.lefschetz)
        j["lefschetz"] = ojson{{"A", lefschetz_list(r.lefschetz->A)},
                               {"B", lefschetz_list(r.lefschetz->B)},
                               {"absolute", lefschetz_list(r.lefschetz->absolute)}};
    if (r.trace) {
        ojson push = ojson::array();
        for (const auto& p : r.trace->push) {
            ojson classes = ojson::array();
            for (const auto& [a, b] : p.classes) classes.push_back(ojson::array({a, b}));
            push.push_back(ojson{{"from", p.from}, {"to", p.to}, {"classes", classes}});
        }
        j["reidemeister"] = ojson{{"A", trace_list(r.trace->A)},
                                  {"B", trace_list(r.trace->B)},
                                  {"absolute", trace_list(r.trace->absolute)},
                                  {"push", push},
                                  {"abelianized", r.trace->abelianized}};
    }
    if (r.nielsen)
        j["nielsen"] = ojson{{"N_A", r.nielsen->N_A},
                             {"N_f", r.nielsen->N_f},
                             {"N_common", r.nielsen->N_common},
                             {"relative", r.nielsen->relative}};
    if (r.verdict) {
        const VerdictSection& v = *r.verdict;
        j["verdict"] = ojson{{"conclusion", v.conclusion}, {"trace_zero", v.trace_zero},
                             {"dim_A", v.dim_A},           {"dim_B", v.dim_B},
                             {"dim_A_ok", v.dim_A_ok},     {"codim_ok", v.codim_ok},
                             {"manifold_A", v.manifold_A}, {"manifold_B", v.manifold_B},
                             {"shadow_exact", v.shadow_exact}};
    }
    ojson checks = ojson::array();
    for (const auto& c : r.consistency) checks.push_back(ojson{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    j["consistency"] = checks;
    j["excluded"] = r.excluded;
    j["warnings"] = r.warnings;
    if (!r.timings.empty()) {
        ojson t = ojson::array();
        for (const auto& [stage, secs] : r.timings) t.push_back(ojson{{"stage", stage}, {"seconds", secs}});
        j["timings"] = t;
    }
    if (r.error) j["error"] = ojson{{"kind", r.error->kind}, {"module", r.error->module}, {"message", r.error->message}};
    return j;
}

InvariantReport report_from_json(const ojson& j) {
    try {
        InvariantReport r;
        r.name = j.at("name").get<std::string>();
        r.tier = j.at("tier").get<std::string>();
        r.command = j.at("command").get<std::string>();
        r.dim_A = j.at("dimensions").at("A").get<int>();
        r.dim_B = j.at("dimensions").at("B").get<int>();
        r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
        for (const auto& s : j.at("shadows")) r.shadows.push_back(shadow_from(s));
        if (j.contains("lefschetz")) {
            const ojson& l = j.at("lefschetz");
            r.lefschetz = LefschetzSection{lefschetz_from(l.at("A")), lefschetz_from(l.at("B")),
                                           lefschetz_from(l.at("absolute"))};
        }
        if (j.contains("reidemeister")) {
            const ojson& t = j.at("reidemeister");
            TraceSection s;
            s.A = traces_from(t.at("A"));
            s.B = traces_from(t.at("B"));
            s.absolute = traces_from(t.at("absolute"));
            for (const auto& p : t.at("push")) {
                PushEntry e{p.at("from").get<std::string>(), p.at("to").get<std::string>(), {}};
                for (const auto& c : p.at("classes"))
                    e.classes.emplace_back(c.at(0).get<std::string>(), c.at(1).get<std::string>());
                s.push.push_back(std::move(e));
            }
            s.abelianized = t.at("abelianized").get<bool>();
            r.trace = std::move(s);
        }
        if (j.contains("nielsen")) {
            const ojson& n = j.at("nielsen");
            r.nielsen = NielsenSection{n.at("N_A").get<Int>(), n.at("N_f").get<Int>(), n.at("N_common").get<Int>(),
                                       n.at("relative").get<Int>()};
        }
        if (j.contains("verdict")) {
            const ojson& v = j.at("verdict");
            VerdictSection s;
            s.conclusion = v.at("conclusion").get<std::string>();
            s.trace_zero = v.at("trace_zero").get<bool>();
            s.dim_A = v.at("dim_A").get<int>();
            s.dim_B = v.at("dim_B").get<int>();
            s.dim_A_ok = v.at("dim_A_ok").get<bool>();
            s.codim_ok = v.at("codim_ok").get<bool>();
            s.manifold_A = v.at("manifold_A").get<bool>();
            s.manifold_B = v.at("manifold_B").get<bool>();
            s.shadow_exact = v.at("shadow_exact").get<bool>();
            r.verdict = s;
        }
        for (const auto& c : j.at("consistency"))
            r.consistency.push_back({c.at("name").get<std::string>(), c.at("ok").get<bool>(),
                                     c.at("detail").get<std::string>()});
        r.excluded = j.at("excluded").get<std::vector<std::string>>();
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        if (j.contains("timings"))
            for (const auto& t : j.at("timings"))
                r.timings.emplace_back(t.at("stage").get<std::string>(), t.at("seconds").get<double>());
        if (j.contains("error")) {
            const ojson& e = j.at("error");
            r.error = ErrorEntry{e.at("kind").get<std::string>(), e.at("module").get<std::string>(),
                                 e.at("message").get<std::string>()};
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw_invalid(kModule, std::string("malformed report: ") + e.what());
    }
}

std::string render_text(const ojson& j) {
    std::ostringstream os;
    render(j, "", os);
    return os.str();
}

std::string render_json(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace reltrace
