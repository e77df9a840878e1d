#include "doctest.h"
#include "harness.hpp"
#include "reltrace/ei_category.hpp"

using namespace reltrace;

namespace {

EICategoryPtr two_objects() {
    // Trivial automorphisms and one morphism 0 -> 1.
    return std::make_shared<const EICategory>(make_ei_category({{1, 1}, {0, 1}, {{false, true}, {false, false}}}));
}

EICategoryPtr group_category(Int order) {
    return std::make_shared<const EICategory>(EICategory::from_group(AbelianStructure::cyclic(order, "t")));
}

GroupRingMatrix monomial_matrix(GroupPtr g, const std::vector<std::vector<std::optional<Exponents>>>& rows) {
    GroupRingMatrix m(g, rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            if (rows[i][j]) m(i, j) = GroupRingElement::monomial(*rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("abelian invariants of cokernels") {
    CHECK(cokernel(2, {{2, 0}, {0, 3}}).format() == "Z/6");
    CHECK(cokernel(3, {{1, 1, 0}}).format() == "Z^2");
    CHECK(cokernel(1, {{1}}).format() == "0");
    CHECK(direct_sum({cokernel(1, {}), cokernel(1, {{2}})}) == AbelianInvariants{1, {2}});
}

TEST_CASE("categories built from groups and blueprints satisfy the EI condition") {
    CHECK(group_category(3)->validate().empty());
    CHECK(two_objects()->validate().empty());
    const auto cat = two_objects();
    CHECK(cat->hom(0, 1).size() == 1);
    CHECK(cat->hom(1, 0).empty());
    CHECK_FALSE(cat->is_isomorphism(cat->hom(0, 1)[0]));
    CHECK(cat->representatives().size() == 2);
}

TEST_CASE("a non-invertible idempotent violates the EI condition") {
    const std::vector<Morphism> morphisms{{0, 0, "id"}, {0, 0, "e"}};
    const std::vector<std::vector<std::optional<std::size_t>>> table{{0, 1}, {1, 1}};
    CHECK_FALSE(EICategory(1, morphisms, table).validate().empty());
}

TEST_CASE("isomorphic objects share a class and a transport") {
    // Two isomorphic objects with Z/2 automorphisms, below a third object.
    const auto cat = std::make_shared<const EICategory>(
        make_ei_category({{2, 1}, {0, 0, 1}, {{false, true}, {false, false}}}));
    CHECK(cat->validate().empty());
    CHECK(cat->iso_class()[0] == cat->iso_class()[1]);
    CHECK(cat->representatives().size() == 2);
    CHECK(cat->is_isomorphism(cat->transport(1)));
    CHECK(cat->automorphism_group(cat->iso_class()[0])->order() == 2);
}

TEST_CASE("composing over two objects with one connecting morphism") {
    const auto cat = two_objects();
    const TensorResult t =
        eimodule_compose(free_module(cat, Variance::Contravariant, {1, 1}), free_module(cat, Variance::Covariant, {1, 1}));
    CHECK(t.direct_sum.format() == "Z^2");
    CHECK(t.coequalizer.format() == "Z^2");
    CHECK(t.agrees);
}

TEST_CASE("composing with the zero module") {
    const auto cat = two_objects();
    const TensorResult t =
        eimodule_compose(free_module(cat, Variance::Contravariant, {0, 0}), free_module(cat, Variance::Covariant, {1, 1}));
    CHECK(t.coequalizer.format() == "0");
    CHECK(t.agrees);
}

TEST_CASE("random EI-categories with Z/2 automorphisms") {
    std::mt19937_64 rng(reltrace::testing::test_seed());
    for (int k = 0; k < 20; ++k) {
        const auto cat = std::make_shared<const EICategory>(make_ei_category(random_blueprint(rng, 3, {2})));
        REQUIRE(cat->validate().empty());
        std::vector<std::size_t> rx, ry;
        for (std::size_t c = 0; c < cat->representatives().size(); ++c) {
            rx.push_back(rng() % 4);
            ry.push_back(rng() % 4);
        }
        CHECK(eimodule_compose(free_module(cat, Variance::Contravariant, rx), free_module(cat, Variance::Covariant, ry))
                  .agrees);
    }
}

TEST_CASE("compose requires modules supported on isomorphisms") {
    const auto cat = two_objects();
    EIModule y = free_module(cat, Variance::Covariant, {1, 1});
    y.supported_on_isomorphisms = false;
    CHECK_THROWS_AS(eimodule_compose(free_module(cat, Variance::Contravariant, {1, 1}), y), Error);
}

TEST_CASE("module validation catches a non-isomorphism acting nontrivially") {
    const auto cat = two_objects();
    EIModule y = free_module(cat, Variance::Covariant, {1, 1});
    CHECK(y.validate().empty());
    y.action[cat->hom(0, 1)[0]] = IntMatrix::identity(1);
    CHECK_FALSE(y.validate().empty());
}

TEST_CASE("shadow of the hom bimodule of Z/3") {
    const auto z = hom_bimodule(group_category(3));
    CHECK(z.validate().empty());
    CHECK(eimodule_shadow(z).format() == "Z^3");
}

TEST_CASE("shadow of Z/3 twisted by inversion") {
    const auto cat = group_category(3);
    std::vector<std::size_t> phi(3);
    for (std::size_t f = 0; f < 3; ++f) phi[f] = *cat->inverse(f);
    CHECK(eimodule_shadow(twisted_bimodule(cat, phi)).format() == "Z");
}

TEST_CASE("shadow of Z[Z] twisted by 3") {
    const ShadowClassSet s(std::make_shared<const AbelianStructure>(AbelianStructure::free_abelian({"b"})),
                           IntMatrix::from_rows({{3}}));
    CHECK(group_ring_shadow(s)->format() == "Z^2");
    const ShadowClassSet identity(s.group_ptr(), IntMatrix::identity(1));
    CHECK_FALSE(group_ring_shadow(identity).has_value());
}

TEST_CASE("shadow of the zero bimodule") {
    const auto cat = group_category(2);
    EIBimodule z{cat, {{0}}, {}, {}};
    for (std::size_t f = 0; f < cat->num_morphisms(); ++f) {
        z.left.push_back({IntMatrix(0, 0)});
        z.right.push_back({IntMatrix(0, 0)});
    }
    CHECK(eimodule_shadow(z).format() == "0");
}

TEST_CASE("dual of a rank-1 free module over Z[Z]") {
    const auto g = std::make_shared<const AbelianStructure>(AbelianStructure::free_abelian({"t"}));
    const FreeModule f{g, monomial_matrix(g, {{Exponents{1}}})};
    const DualData d = build_dual(f);
    CHECK(d.dual_basis == monomial_matrix(g, {{Exponents{-1}}}));
    CHECK(d.coevaluation.is_identity());
    CHECK(d.evaluation.is_identity());
    CHECK(d.pairing.is_identity());
    CHECK(verify_snake(f, d));
}

TEST_CASE("dual of a rank-2 free module over Z[Z/2]") {
    const auto g = std::make_shared<const AbelianStructure>(AbelianStructure::cyclic(2, "g"));
    const FreeModule f{g, monomial_matrix(g, {{Exponents{0}, Exponents{1}}, {std::nullopt, Exponents{0}}})};
    const DualData d = build_dual(f);
    GroupRingMatrix expected = monomial_matrix(g, {{Exponents{0}, std::nullopt}, {std::nullopt, Exponents{0}}});
    expected(0, 1) = GroupRingElement::monomial({1}, -1);
    CHECK(d.dual_basis == expected);
    CHECK(verify_snake(f, d));

    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k) {
        const auto [basis, inverse] = random_basis(g, 2, rng);
        const FreeModule r{g, basis};
        const DualData dr = build_dual(r);
        CHECK(dr.dual_basis == inverse);
        CHECK(verify_snake(r, dr));
    }
}

TEST_CASE("a singular basis has no dual") {
    const auto g = std::make_shared<const AbelianStructure>(AbelianStructure::cyclic(2, "g"));
    GroupRingMatrix m(g, 1, 1);
    m(0, 0) = GroupRingElement::monomial({0}) + GroupRingElement::monomial({1});
    CHECK_THROWS_AS(build_dual(FreeModule{g, m}), Error);
    CHECK_FALSE(verify_snake(FreeModule{g, m}, DualData{m, m, m, m}));
}

TEST_CASE("componentwise duals of the two-object example") {
    const auto cat = two_objects();
    const EIModule y = free_module(cat, Variance::Covariant, {2, 1});
    const EIModule x = dual_module(y);
    CHECK(x.variance == Variance::Contravariant);
    CHECK(x.free_ranks == y.free_ranks);
    CHECK(eimodule_compose(x, y).coequalizer.format() == "Z^5");
    for (const auto& component : free_components(y)) CHECK(verify_snake(component, build_dual(component)));
}
