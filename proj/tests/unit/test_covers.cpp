#include "doctest.h"
#include "reltrace/cellular.hpp"
#include "reltrace/covers.hpp"

using namespace reltrace;

namespace {

std::vector<std::size_t> all_vertices(const SimplicialPair& p) {
    std::vector<std::size_t> v(p.num_vertices());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

GroupRingElement poly(const AbelianStructure& g, std::vector<std::pair<Int, Exponents>> terms) {
    GroupRingElement x;
    for (const auto& [c, e] : terms) x.add_term(g.reduce(e), c);
    return x;
}

SimplicialPair circle() { return SimplicialPair({"0", "1", "2"}, {{0, 1}, {1, 2}, {0, 2}}, {}); }

SimplicialPair seven_vertex_torus() {
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> simplices;
    for (std::size_t i = 0; i < 7; ++i) {
        names.push_back(std::to_string(i));
        for (const auto& t : {std::vector<std::size_t>{i, (i + 1) % 7, (i + 3) % 7},
                              std::vector<std::size_t>{i, (i + 2) % 7, (i + 3) % 7}}) {
            simplices.push_back(t);
            simplices.push_back({t[0], t[1]});
            simplices.push_back({t[1], t[2]});
            simplices.push_back({t[0], t[2]});
        }
    }
    return SimplicialPair(names, simplices, {});
}

struct TorusComplex {
    Presentation presentation{{"a", "b"}, {Word({{0, 1}, {1, 1}, {0, -1}, {1, -1}})}};
    GroupPtr group = std::make_shared<const AbelianStructure>(presentation);
    EquivariantChainComplex complex = presentation_complex(presentation, group);
};

}  // namespace

TEST_CASE("lifted circle: one edge carries the deck generator") {
    const SimplicialPair p = circle();
    const Frame frame = make_frame(p, all_vertices(p), false);
    const EquivariantChainComplex c = lift_chain_complex(p, frame, CellSelection::Absolute);
    CHECK(c.boundary_squares_to_zero());
    std::size_t twisted_columns = 0;
    for (std::size_t j = 0; j < c.rank(1); ++j) {
        Int aug = 0;
        bool twisted = false;
        for (std::size_t i = 0; i < c.rank(0); ++i) {
            aug += augmentation(c.boundary[1](i, j));
            for (const auto& [g, k] : c.boundary[1](i, j).terms())
                if (!is_zero(g)) twisted = true;
        }
        CHECK(aug == 0);
        twisted_columns += twisted;
    }
    CHECK(twisted_columns == 1);
    const auto augmented = c.augmented_boundary();
    CHECK(smith_normal_form(augmented[1]).rank == 2);
}

TEST_CASE("lifted filled triangle is acyclic above degree 0") {
    const SimplicialPair p({"0", "1", "2"}, {{0, 1, 2}, {0, 1}, {1, 2}, {0, 2}}, {});
    const Frame frame = make_frame(p, all_vertices(p), false);
    const EquivariantChainComplex c = lift_chain_complex(p, frame, CellSelection::Absolute);
    CHECK(c.boundary_squares_to_zero());
    const auto augmented = c.augmented_boundary();
    CHECK(smith_normal_form(augmented[1]).rank == 2);
    CHECK(smith_normal_form(augmented[2]).rank == 1);
}

TEST_CASE("relative lift of a circle modulo an arc") {
    const SimplicialPair p({"0", "1", "2"}, {{0, 1}, {1, 2}, {0, 2}}, {{0}, {1}, {0, 1}});
    const Frame frame = make_frame(p, all_vertices(p), false);
    const EquivariantChainComplex c = lift_chain_complex(p, frame, CellSelection::Relative);
    CHECK(c.rank(0) == 1);
    CHECK(c.rank(1) == 2);
    CHECK(c.boundary_squares_to_zero());
}

TEST_CASE("the identity lifts to identity matrices") {
    const SimplicialPair t = seven_vertex_torus();
    const Frame frame = make_frame(t, all_vertices(t), false);
    const EquivariantChainComplex c = lift_chain_complex(t, frame, CellSelection::Absolute);
    const EquivariantChainMap m = lift_chain_map(frame, frame_map(frame, frame, identity_map(7)), identity_map(7), c);
    for (const auto& d : m.degree) CHECK(d.is_identity());
}

TEST_CASE("reflection of the circle has Lefschetz number 2") {
    const SimplicialPair p = circle();
    const VertexSelfMap f{{0, 2, 1}};
    const Frame frame = make_frame(p, all_vertices(p), false);
    const EquivariantChainComplex c = lift_chain_complex(p, frame, CellSelection::Absolute);
    const EquivariantChainMap m = lift_chain_map(frame, frame_map(frame, frame, f), f, c);
    CHECK_FALSE(chain_map_defect(c, m).has_value());
    CHECK(chain_lefschetz(m.augmented()) == 2);
    const ShadowClassSet classes(frame.group, m.twist);
    CHECK(augmentation(reidemeister_trace(m, classes)) == 2);
    CHECK(classes.size() == 2);
}

TEST_CASE("augmented lifts equal the simplicial chain maps") {
    const SimplicialPair t = seven_vertex_torus();
    VertexSelfMap f;
    for (std::size_t i = 0; i < 7; ++i) f.image.push_back((3 * i + 1) % 7);
    REQUIRE_FALSE(has_errors(validate_map(t, f)));
    const Frame frame = make_frame(t, all_vertices(t), false);
    const EquivariantChainComplex c = lift_chain_complex(t, frame, CellSelection::Absolute);
    const EquivariantChainMap m = lift_chain_map(frame, frame_map(frame, frame, f), f, c);
    const RationalChainData d = rational_chain_data(t);
    const auto expected = simplicial_chain_map(d.B, f);
    const auto augmented = m.augmented();
    REQUIRE(augmented.size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
        CHECK(c.simplices[k] == d.B.basis[k]);
        CHECK(augmented[k] == expected[k]);
    }
    CHECK(chain_lefschetz(expected) == homology_lefschetz(d.B.boundary, expected));
}

TEST_CASE("fox chain map of the torus map a -> a^4, b -> b^3") {
    const TorusComplex t;
    const auto& g = *t.group;
    const EquivariantChainMap m =
        fox_chain_map(t.complex, {Word::generator(0, 4), Word::generator(1, 3)}, IntMatrix::diagonal({4, 3}));
    CHECK(m.degree[0].is_identity());
    CHECK(m.degree[1](0, 0) == poly(g, {{1, {0, 0}}, {1, {1, 0}}, {1, {2, 0}}, {1, {3, 0}}}));
    CHECK(m.degree[1](1, 1) == poly(g, {{1, {0, 0}}, {1, {0, 1}}, {1, {0, 2}}}));
    CHECK(m.degree[1](0, 1).is_zero());
    CHECK(m.degree[1](1, 0).is_zero());
    const GroupRingElement x = multiply(g, poly(g, {{1, {0, 0}}, {1, {0, 1}}, {1, {0, 2}}}),
                                        poly(g, {{1, {0, 0}}, {1, {1, 0}}, {1, {2, 0}}, {1, {3, 0}}}));
    CHECK(m.degree[2](0, 0) == x);
    CHECK_FALSE(chain_map_defect(t.complex, m).has_value());
}

TEST_CASE("fox chain map of the torus map a -> a^-1, b -> b^3") {
    const TorusComplex t;
    const auto& g = *t.group;
    const EquivariantChainMap m =
        fox_chain_map(t.complex, {Word::generator(0, -1), Word::generator(1, 3)}, IntMatrix::diagonal({-1, 3}));
    CHECK(m.degree[1](0, 0) == poly(g, {{-1, {-1, 0}}}));
    CHECK(m.degree[1](1, 1) == poly(g, {{1, {0, 0}}, {1, {0, 1}}, {1, {0, 2}}}));
    CHECK(m.degree[2](0, 0) == poly(g, {{-1, {-1, 0}}, {-1, {-1, 1}}, {-1, {-1, 2}}}));
    const ShadowClassSet classes(t.group, m.twist);
    const TraceVector r = reidemeister_trace(m, classes);
    CHECK(r.support_size() == 4);
    for (const auto& cls : classes.representatives()) CHECK(r.coefficient(cls) == -1);
}

TEST_CASE("the identity homomorphism gives the identity chain map") {
    const TorusComplex t;
    const EquivariantChainMap m = fox_chain_map(t.complex, {Word::generator(0), Word::generator(1)}, IntMatrix::identity(2));
    for (const auto& d : m.degree) CHECK(d.is_identity());
}

TEST_CASE("solving the top cell of the torus") {
    const TorusComplex t;
    EquivariantChainMap m =
        fox_chain_map(t.complex, {Word::generator(0, 4), Word::generator(1, 3)}, IntMatrix::diagonal({4, 3}));
    const GroupRingElement expected = m.degree[2](0, 0);
    m.degree[2](0, 0) = GroupRingElement();
    solve_top_cells(t.complex, m, {true});
    CHECK(m.degree[2](0, 0) == expected);
}

TEST_CASE("degree-3 map of the circle") {
    const Presentation p{{"b"}, {}};
    const auto g = std::make_shared<const AbelianStructure>(p);
    const EquivariantChainComplex c = presentation_complex(p, g);
    const EquivariantChainMap m = fox_chain_map(c, {Word::generator(0, 3)}, IntMatrix::from_rows({{3}}));
    const ShadowClassSet classes(g, m.twist);
    const TraceVector r = reidemeister_trace(m, classes);
    CHECK(r.coefficient({0}) == -1);
    CHECK(r.coefficient({1}) == -1);
    CHECK(r.support_size() == 2);
}
