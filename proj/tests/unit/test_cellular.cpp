#include "doctest.h"
#include "harness.hpp"
#include "reltrace/cellular.hpp"
#include "reltrace/document.hpp"

using namespace reltrace;

namespace {

Word commutator() { return Word({{0, 1}, {1, 1}, {0, -1}, {1, -1}}); }

CellularPairData torus(std::vector<Word> phi) {
    CellularPairData d;
    d.generators = {"a", "b"};
    d.generator_in_A = {true, false};
    d.vertex_in_A = true;
    d.cells[2] = {Cell{"T", false, commutator(), {}}};
    d.phi = std::move(phi);
    d.cell_images["T"] = CellImage{true, {}};
    return d;
}

}  // namespace

TEST_CASE("the torus with a circle as A is valid") {
    const CellularPairData d = torus({Word::generator(0, 4), Word::generator(1, 3)});
    CHECK_FALSE(has_errors(validate_cellular(d)));
    CHECK(d.dimension() == 2);
    CHECK(d.dimension_of_A() == 1);
    const CellularModel m = build_cellular_model(d);
    CHECK(m.phi_B == IntMatrix::diagonal({4, 3}));
    CHECK(m.phi_A == IntMatrix::from_rows({{4}}));
    CHECK(m.iota == IntMatrix::from_rows({{1}, {0}}));
    CHECK(m.absolute.boundary_squares_to_zero());
    CHECK(m.relative.rank(0) == 0);
    CHECK(m.relative.rank(1) == 1);
    CHECK(m.relative.rank(2) == 1);
}

TEST_CASE("the torus boundary is given by fox derivatives") {
    const CellularModel m = build_cellular_model(torus({Word::generator(0), Word::generator(1)}));
    const auto& g = *m.group_B;
    GroupRingElement one_minus_b, a_minus_one;
    one_minus_b.add_term({0, 0}, 1).add_term({0, 1}, -1);
    a_minus_one.add_term({1, 0}, 1).add_term({0, 0}, -1);
    CHECK(m.absolute.boundary[2](0, 0) == one_minus_b);
    CHECK(m.absolute.boundary[2](1, 0) == a_minus_one);
    CHECK(g.free_rank() == 2);
}

TEST_CASE("A-generators must map into A") {
    const CellularPairData d = torus({Word::generator(1), Word::generator(1, 3)});
    CHECK(has_errors(validate_cellular(d)));
    CHECK_THROWS_AS(build_cellular_model(d), Error);
}

TEST_CASE("a map that does not respect the relators cannot be completed") {
    CellularPairData d;
    d.generators = {"a", "b"};
    d.generator_in_A = {false, false};
    d.cells[2] = {Cell{"R", false, Word::generator(0, 2), {}}};
    d.phi = {Word::generator(1), Word::generator(0)};
    d.cell_images["R"] = CellImage{true, {}};
    CHECK(has_errors(validate_cellular(d)));
}

TEST_CASE("the solid torus fixture builds with its explicit 3-cell") {
    const InputDocument doc = read_document(reltrace::testing::fixture_path("solid_torus_boundary.json"));
    CHECK(doc.tier == "cw");
    CHECK_FALSE(has_errors(validate_cellular(doc.cw)));
    const CellularModel m = build_cellular_model(doc.cw);
    CHECK(m.phi_A == IntMatrix::diagonal({-1, 3}));
    CHECK(m.absolute.boundary_squares_to_zero());
    CHECK_FALSE(chain_map_defect(m.absolute, m.absolute_map).has_value());
    CHECK(m.absolute.top_degree() == 3);
    CHECK(doc.cw.dimension() == 3);
    CHECK(doc.cw.dimension_of_A() == 2);
}
