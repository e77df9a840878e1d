#include "reltrace/invariants.hpp"

#include <set>
#include <sstream>

namespace reltrace {

namespace {

constexpr const char* kModule = "invariants";

ShadowInfo make_shadow(const Presentation& presentation, GroupPtr group, const IntMatrix& twist, int rewrite_rounds) {
    ShadowInfo s;
    s.classes = std::make_shared<const ShadowClassSet>(std::move(group), twist);
    const AbelianRecognition r = recognize_abelian(presentation, rewrite_rounds);
    s.exact = r.abelian;
    s.reason = r.reason;
    return s;
}

std::vector<std::vector<bool>> component_mask(const ChainComplexZ& c, const std::vector<std::size_t>& vertices) {
    const std::set<std::size_t> vs(vertices.begin(), vertices.end());
    std::vector<std::vector<bool>> keep(c.basis.size());
    for (std::size_t k = 0; k < c.basis.size(); ++k)
        for (const auto& s : c.basis[k]) keep[k].push_back(vs.count(s.front()) > 0);
    return keep;
}

RationalPart rational_part(const ChainComplexZ& c, const std::vector<IntMatrix>& full_map,
                           const std::vector<std::size_t>& vertices) {
    const auto keep = component_mask(c, vertices);
    RationalPart r;
    r.boundary = restrict_complex(c, keep).boundary;
    r.map = restrict_map(full_map, keep);
    return r;
}

std::string vertex_list(const SimplicialPair& pair, const std::vector<std::size_t>& vs) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << pair.vertex_names()[vs[i]];
    os << "}";
    return os.str();
}

RationalPart augmented_part(const EquivariantChainComplex& c, const EquivariantChainMap& m) {
    return RationalPart{c.augmented_boundary(), m.augmented()};
}

}  // namespace

ClassMap transport_classes(const Frame& src, const Frame& dst, std::shared_ptr<const ShadowClassSet> src_classes,
                           std::shared_ptr<const ShadowClassSet> dst_classes, const VertexSelfMap& f) {
    const FrameMap inclusion = frame_map(src, dst, identity_map(f.image.size()));
    const FrameMap lift = frame_map(dst, dst, f);
    const Exponents shift =
        sub(lift.correction_exponents.at(src.root), inclusion.correction_exponents.at(f(src.root)));
    return pushforward_classes(inclusion.abelian, std::move(src_classes), std::move(dst_classes),
                               dst.group->reduce(shift));
}

PairModel build_simplicial_model(const SimplicialPair& pair, const VertexSelfMap& f, const ModelOptions& options) {
    {
        const Diagnostics d = validate_pair(pair);
        if (has_errors(d)) throw_invalid("complexes", d.front().message);
        const Diagnostics m = validate_map(pair, f);
        if (has_errors(m)) throw_invalid("complexes", m.front().message);
    }
    PairModel model;
    model.tier = "simplicial";
    model.dim_A = pair.dimension_of_A();
    model.dim_B = pair.dimension();
    const ComponentData comps = components(pair);
    const RationalChainData rcd = rational_chain_data(pair);
    const auto map_A = simplicial_chain_map(rcd.A, f);
    const auto map_B = simplicial_chain_map(rcd.B, f);
    const auto map_rel = simplicial_chain_map(rcd.relative, f);

    std::vector<std::optional<std::size_t>> b_part_of(comps.b_components.size());
    std::vector<Frame> b_frames;
    for (std::size_t j = 0; j < comps.b_components.size(); ++j) {
        const auto& vs = comps.b_components[j];
        Frame frame = make_frame(pair, vs, false, options.priority);
        if (comps.b_of_vertex[f(frame.root)] != j) {
            model.excluded.push_back("B-component " + vertex_list(pair, vs) + " is not carried into itself");
            b_frames.push_back(std::move(frame));
            continue;
        }
        BPart b;
        b.label = "B" + std::to_string(j);
        b.presentation = frame.presentation;
        const FrameMap induced = frame_map(frame, frame, f);
        b.shadow = make_shadow(frame.presentation, frame.group, induced.abelian, options.rewrite_rounds);
        b.relative = lift_chain_complex(pair, frame, CellSelection::Relative);
        b.relative_map = lift_chain_map(frame, induced, f, b.relative);
        b.absolute = lift_chain_complex(pair, frame, CellSelection::Absolute);
        b.absolute_map = lift_chain_map(frame, induced, f, b.absolute);
        b.rational_relative = rational_part(rcd.relative, map_rel, vs);
        b.rational_absolute = rational_part(rcd.B, map_B, vs);
        b_part_of[j] = model.b_parts.size();
        model.b_parts.push_back(std::move(b));
        b_frames.push_back(std::move(frame));
    }

    for (std::size_t i = 0; i < comps.a_components.size(); ++i) {
        const auto& vs = comps.a_components[i];
        const Frame frame = make_frame(pair, vs, true, options.priority);
        if (comps.a_of_vertex[f(frame.root)] != i) {
            model.excluded.push_back("A-component " + vertex_list(pair, vs) + " is not carried into itself");
            continue;
        }
        const std::size_t j = comps.a_in_b[i];
        if (!b_part_of[j]) throw_failure(kModule, "invariant A-component inside a non-invariant B-component");
        APart a;
        a.label = "A" + std::to_string(i);
        a.presentation = frame.presentation;
        const FrameMap induced = frame_map(frame, frame, f);
        a.shadow = make_shadow(frame.presentation, frame.group, induced.abelian, options.rewrite_rounds);
        a.complex = lift_chain_complex(pair, frame, CellSelection::A);
        a.map = lift_chain_map(frame, induced, f, a.complex);
        a.rational = rational_part(rcd.A, map_A, vs);
        a.b_part = *b_part_of[j];
        const ClassMap push =
            transport_classes(frame, b_frames[j], a.shadow.classes, model.b_parts[a.b_part].shadow.classes, f);
        a.iota = push.hom();
        a.shift = push.shift();
        model.b_parts[a.b_part].a_parts.push_back(model.a_parts.size());
        model.a_parts.push_back(std::move(a));
    }
    return model;
}

PairModel build_cellular_pair_model(const CellularPairData& data, const ModelOptions& options) {
    const CellularModel cw = build_cellular_model(data);
    PairModel model;
    model.tier = "cw";
    model.dim_A = data.dimension_of_A();
    model.dim_B = data.dimension();
    BPart b;
    b.label = "B";
    b.presentation = cw.presentation_B;
    b.shadow = make_shadow(cw.presentation_B, cw.group_B, cw.phi_B, options.rewrite_rounds);
    b.relative = cw.relative;
    b.relative_map = cw.relative_map;
    b.absolute = cw.absolute;
    b.absolute_map = cw.absolute_map;
    b.rational_relative = augmented_part(cw.relative, cw.relative_map);
    b.rational_absolute = augmented_part(cw.absolute, cw.absolute_map);
    if (data.has_A()) {
        APart a;
        a.label = "A";
        a.presentation = cw.presentation_A;
        a.shadow = make_shadow(cw.presentation_A, cw.group_A, cw.phi_A, options.rewrite_rounds);
        a.complex = cw.complex_A;
        a.map = cw.map_A;
        a.rational = augmented_part(cw.complex_A, cw.map_A);
        a.b_part = 0;
        a.iota = cw.iota;
        a.shift = cw.group_B->identity();
        b.a_parts.push_back(0);
        model.a_parts.push_back(std::move(a));
    }
    model.b_parts.push_back(std::move(b));
    return model;
}

// ---------------------------------------------------------------- Lefschetz

RelativeLefschetz relative_lefschetz(const PairModel& model, bool crosscheck) {
    RelativeLefschetz l;
    auto value = [&](const std::string& label, const RationalPart& r) {
        ComponentValue v{label, chain_lefschetz(r.map), std::nullopt};
        if (crosscheck) v.homology_value = homology_lefschetz(r.boundary, r.map);
        return v;
    };
    for (const auto& a : model.a_parts) l.A.push_back(value(a.label, a.rational));
    for (const auto& b : model.b_parts) {
        l.B.push_back(value(b.label, b.rational_relative));
        l.absolute.push_back(value(b.label, b.rational_absolute));
    }
    return l;
}

// ---------------------------------------------------------------- Reidemeister

bool RelativeTrace::is_zero() const {
    for (const auto& p : A)
        if (!p.trace.is_zero()) return false;
    for (const auto& p : B)
        if (!p.trace.is_zero()) return false;
    return true;
}

RelativeTrace relative_reidemeister(const PairModel& model) {
    RelativeTrace r;
    for (const auto& b : model.b_parts) {
        r.B.push_back({b.label, b.shadow.classes, b.shadow.exact, reidemeister_trace(b.relative_map, *b.shadow.classes)});
        r.absolute.push_back(
            {b.label, b.shadow.classes, b.shadow.exact, reidemeister_trace(b.absolute_map, *b.shadow.classes)});
        r.abelianized = r.abelianized || !b.shadow.exact;
    }
    for (const auto& a : model.a_parts) {
        r.A.push_back({a.label, a.shadow.classes, a.shadow.exact, reidemeister_trace(a.map, *a.shadow.classes)});
        r.push.push_back(pushforward_classes(a.iota, a.shadow.classes, model.b_parts[a.b_part].shadow.classes, a.shift));
        r.a_to_b.push_back(a.b_part);
        r.abelianized = r.abelianized || !a.shadow.exact;
    }
    return r;
}

// ---------------------------------------------------------------- Nielsen

NielsenNumbers relative_nielsen(const RelativeTrace& trace) {
    NielsenNumbers n;
    for (const auto& a : trace.A) n.N_A += static_cast<Int>(a.trace.support_size());
    for (std::size_t j = 0; j < trace.absolute.size(); ++j) {
        const TraceVector& abs = trace.absolute[j].trace;
        n.N_f += static_cast<Int>(abs.support_size());
        std::set<Exponents> hit;
        for (std::size_t i = 0; i < trace.A.size(); ++i) {
            if (trace.a_to_b[i] != j) continue;
            for (const auto& [cls, c] : trace.A[i].trace.coefficients) {
                const Exponents image = trace.push[i](cls);
                if (abs.coefficient(image) != 0) hit.insert(image);
            }
        }
        n.N_common += static_cast<Int>(hit.size());
    }
    n.relative = n.N_A + n.N_f - n.N_common;
    return n;
}

// ---------------------------------------------------------------- verdict

std::string to_string(Conclusion c) {
    switch (c) {
        case Conclusion::Deformable: return "deformable";
        case Conclusion::NotDeformable: return "not-deformable";
        case Conclusion::TraceZeroHypothesesUnverified: return "trace-zero-but-hypotheses-unverified";
        case Conclusion::InconclusiveAbelianized: return "inconclusive-abelianized";
    }
    return "not-deformable";
}

std::optional<Conclusion> conclusion_from_string(const std::string& s) {
    for (Conclusion c : {Conclusion::Deformable, Conclusion::NotDeformable, Conclusion::TraceZeroHypothesesUnverified,
                         Conclusion::InconclusiveAbelianized})
        if (to_string(c) == s) return c;
    return std::nullopt;
}

DeformabilityVerdict deformability_verdict(const RelativeTrace& trace, const PairModel& model,
                                           const Assertions& assertions) {
    DeformabilityVerdict v;
    v.trace_zero = trace.is_zero();
    v.dim_A = assertions.dim_A.value_or(model.dim_A);
    v.dim_B = assertions.dim_B.value_or(model.dim_B);
    const bool empty_A = model.a_parts.empty() && model.dim_A < 0;
    v.dim_A_ok = empty_A || v.dim_A >= 3;
    v.codim_ok = empty_A ? v.dim_B >= 3 : v.dim_B - v.dim_A >= 2;
    v.manifold_A = empty_A || assertions.manifold_A;
    v.manifold_B = assertions.manifold_B;
    v.shadow_exact = !trace.abelianized;
    if (!v.trace_zero)
        v.conclusion = Conclusion::NotDeformable;
    else if (!v.shadow_exact)
        v.conclusion = Conclusion::InconclusiveAbelianized;
    else if (v.dim_A_ok && v.codim_ok && v.manifold_A && v.manifold_B)
        v.conclusion = Conclusion::Deformable;
    else
        v.conclusion = Conclusion::TraceZeroHypothesesUnverified;
    return v;
}

// ---------------------------------------------------------------- consistency

std::vector<ConsistencyCheck> consistency_report(const RelativeLefschetz& lefschetz, const RelativeTrace& trace,
                                                 const NielsenNumbers& nielsen) {
    std::vector<ConsistencyCheck> checks;
    auto add = [&](std::string name, bool ok, std::string detail) {
        checks.push_back({std::move(name), ok, std::move(detail)});
        if (!ok) throw_failure(kModule, "consistency check failed: " + checks.back().name + " (" + checks.back().detail + ")");
    };
    auto aug_check = [&](const std::string& what, const PartTrace& t, const ComponentValue& l) {
        const Int aug = augmentation(t.trace);
        add("augmentation " + what + " " + t.label, aug == l.value,
            "aug(R) = " + std::to_string(aug) + ", L = " + std::to_string(l.value));
        if (l.homology_value)
            add("chain vs homology " + what + " " + t.label, *l.homology_value == l.value,
                "chain " + std::to_string(l.value) + ", homology " + std::to_string(*l.homology_value));
    };
    for (std::size_t i = 0; i < trace.A.size(); ++i) aug_check("A", trace.A[i], lefschetz.A.at(i));
    for (std::size_t j = 0; j < trace.B.size(); ++j) {
        aug_check("B/A", trace.B[j], lefschetz.B.at(j));
        aug_check("B", trace.absolute[j], lefschetz.absolute.at(j));
        TraceVector split = trace.B[j].trace;
        for (std::size_t i = 0; i < trace.A.size(); ++i)
            if (trace.a_to_b[i] == j) split += push_forward(trace.A[i].trace, trace.push[i]);
        add("splitting " + trace.B[j].label, split == trace.absolute[j].trace,
            "push(R_A) + R_rel = " + format(*trace.B[j].classes, split) + ", R = " +
                format(*trace.B[j].classes, trace.absolute[j].trace));
    }
    add("Nielsen vanishing", (nielsen.relative == 0) == trace.is_zero(),
        "N = " + std::to_string(nielsen.relative) + ", trace " + (trace.is_zero() ? "zero" : "nonzero"));
    return checks;
}

}  // namespace reltrace
