#include "doctest.h"
#include "reltrace/group_ring.hpp"

using namespace reltrace;

namespace {

GroupPtr free_abelian(std::vector<std::string> names) {
    return std::make_shared<const AbelianStructure>(AbelianStructure::free_abelian(std::move(names)));
}

GroupRingElement element(const AbelianStructure& g, std::vector<std::pair<Int, Exponents>> terms) {
    GroupRingElement x;
    for (const auto& [c, e] : terms) x.add_term(g.reduce(e), c);
    return x;
}

}  // namespace

TEST_CASE("stallings trace of the identity") {
    const auto g = free_abelian({"a", "b"});
    const ShadowClassSet s(g, IntMatrix::diagonal({-1, 3}));
    const TraceVector t = stallings_trace(GroupRingMatrix::identity(g, 3).with_twist(s.twist()), s);
    CHECK(t.coefficient({0, 0}) == 3);
    CHECK(t.support_size() == 1);
}

TEST_CASE("stallings trace of a 1x1 matrix is its class") {
    const auto g = free_abelian({"a", "b"});
    const ShadowClassSet s(g, IntMatrix::diagonal({-1, 3}));
    GroupRingMatrix m(g, 1, 1, s.twist());
    m(0, 0) = GroupRingElement::monomial({1, 1});
    const TraceVector t = stallings_trace(m, s);
    CHECK(t.coefficient({1, 1}) == 1);
    CHECK(format(s, t) == "[ab]");
}

TEST_CASE("stallings trace reduces b^2 to 1 under the degree-3 twist") {
    const auto g = free_abelian({"b"});
    const ShadowClassSet s(g, IntMatrix::from_rows({{3}}));
    GroupRingMatrix m(g, 1, 1, s.twist());
    m(0, 0) = element(*g, {{1, {0}}, {1, {1}}, {1, {2}}});
    const TraceVector t = stallings_trace(m, s);
    CHECK(t.coefficient({0}) == 2);
    CHECK(t.coefficient({1}) == 1);
    CHECK(t.support_size() == 2);
}

TEST_CASE("stallings trace rejects a twist mismatch") {
    const auto g = free_abelian({"b"});
    const ShadowClassSet s(g, IntMatrix::from_rows({{3}}));
    GroupRingMatrix m(g, 1, 1, IntMatrix::from_rows({{2}}));
    CHECK_THROWS_AS(stallings_trace(m, s), Error);
}

TEST_CASE("fox derivatives") {
    const auto g = free_abelian({"a", "b"});
    CHECK(fox_derivative(*g, Word::generator(1, 3), 1) == element(*g, {{1, {0, 0}}, {1, {0, 1}}, {1, {0, 2}}}));
    CHECK(fox_derivative(*g, Word::generator(0), 1).is_zero());
    const Word commutator({{0, 1}, {1, 1}, {0, -1}, {1, -1}});
    CHECK(fox_derivative(*g, commutator, 0) == element(*g, {{1, {0, 0}}, {-1, {0, 1}}}));
    CHECK(fox_derivative(*g, Word::generator(0, -1), 0) == element(*g, {{-1, {-1, 0}}}));
}

TEST_CASE("fox derivative product rule") {
    const auto g = free_abelian({"a", "b"});
    const Word u({{0, 2}, {1, -1}});
    const Word v({{1, 3}, {0, 1}});
    for (std::size_t gen = 0; gen < 2; ++gen) {
        const GroupRingElement lhs = fox_derivative(*g, u * v, gen);
        const GroupRingElement rhs =
            fox_derivative(*g, u, gen) +
            multiply(*g, GroupRingElement::monomial(g->element(u)), fox_derivative(*g, v, gen));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("augmentation") {
    const auto g = free_abelian({"a", "b"});
    TraceVector t;
    t.add({0, 0}, 1);
    t.add({1, 0}, 1);
    t.add({0, 1}, -2);
    CHECK(augmentation(t) == 0);
    CHECK(augmentation(element(*g, {{1, {0, 0}}, {1, {0, 1}}, {1, {0, 2}}})) == 3);
    TraceVector r;
    r.add({0}, -1);
    r.add({1}, -1);
    CHECK(augmentation(r) == -2);
}

TEST_CASE("trace vectors drop zero coefficients") {
    TraceVector t;
    t.add({1}, 2);
    t.add({1}, -2);
    CHECK(t.is_zero());
}

TEST_CASE("group ring multiplication and formatting") {
    const auto g = free_abelian({"b"});
    const GroupRingElement one_minus_b = element(*g, {{1, {0}}, {-1, {1}}});
    const GroupRingElement sum = element(*g, {{1, {0}}, {1, {1}}, {1, {2}}});
    CHECK(multiply(*g, one_minus_b, sum) == element(*g, {{1, {0}}, {-1, {3}}}));
    CHECK(format(*g, sum) == "1 + b + b^2");
    CHECK(format(*g, -one_minus_b) == "-1 + b");
}

TEST_CASE("twisted matrix product passes the right factor through the twist") {
    const auto g = free_abelian({"b"});
    const IntMatrix three = IntMatrix::from_rows({{3}});
    GroupRingMatrix m(g, 1, 1, three), n(g, 1, 1, three);
    m(0, 0) = GroupRingElement::monomial({1});
    n(0, 0) = GroupRingElement::monomial({1});
    const GroupRingMatrix p = m * n;
    CHECK(p(0, 0) == GroupRingElement::monomial({4}));
    CHECK(p.twist() == IntMatrix::from_rows({{9}}));
}

TEST_CASE("pushing a trace along a class map") {
    const auto ga = free_abelian({"a", "b"});
    const auto gb = free_abelian({"b"});
    auto a = std::make_shared<const ShadowClassSet>(ga, IntMatrix::diagonal({-1, 3}));
    auto b = std::make_shared<const ShadowClassSet>(gb, IntMatrix::from_rows({{3}}));
    const ClassMap push = pushforward_classes(IntMatrix::from_rows({{0, 1}}), a, b);
    TraceVector t;
    for (const auto& r : a->representatives()) t.add(r, -1);
    const TraceVector pushed = push_forward(t, push);
    CHECK(pushed.coefficient({0}) == -2);
    CHECK(pushed.coefficient({1}) == -2);
}
