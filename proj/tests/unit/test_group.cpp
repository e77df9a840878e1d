#include "doctest.h"
#include "harness.hpp"
#include "reltrace/group.hpp"

using namespace reltrace;

namespace {

GroupPtr free_abelian(std::vector<std::string> names) {
    return std::make_shared<const AbelianStructure>(AbelianStructure::free_abelian(std::move(names)));
}

std::vector<std::string> names_of(const ShadowClassSet& s) {
    std::vector<std::string> out;
    for (const auto& r : s.representatives()) out.push_back(s.format(r));
    return out;
}

Word commutator(std::size_t a, std::size_t b) { return Word({{a, 1}, {b, 1}, {a, -1}, {b, -1}}); }

}  // namespace

TEST_CASE("twisted classes of diag(-1, 3) on Z^2") {
    const ShadowClassSet s(free_abelian({"a", "b"}), IntMatrix::diagonal({-1, 3}));
    CHECK(s.size() == 4);
    CHECK(names_of(s) == std::vector<std::string>{"1", "a", "b", "ab"});
}

TEST_CASE("twisted classes of 3 on Z") {
    const ShadowClassSet s(free_abelian({"b"}), IntMatrix::from_rows({{3}}));
    CHECK(names_of(s) == std::vector<std::string>{"1", "b"});
}

TEST_CASE("twisted classes of diag(4, 3) on Z^2") {
    const ShadowClassSet s(free_abelian({"a", "b"}), IntMatrix::diagonal({4, 3}));
    CHECK(names_of(s) == std::vector<std::string>{"1", "a", "a^2", "b", "ab", "a^2b"});
    CHECK(s.torsion() == std::vector<Int>{6});
}

TEST_CASE("the identity twist has infinitely many classes") {
    const ShadowClassSet s(free_abelian({"a"}), IntMatrix::identity(1));
    CHECK_FALSE(s.finite());
    CHECK(s.free_rank() == 1);
    CHECK(s.class_of({5}) == Exponents{5});
}

TEST_CASE("class counts match brute-force enumeration on finite quotients") {
    std::mt19937_64 rng(reltrace::testing::test_seed());
    for (int k = 0; k < 40; ++k) {
        const std::size_t n = 1 + rng() % 3;
        const Int m = 2 + static_cast<Int>(rng() % 4);
        const IntMatrix phi = reltrace::testing::random_matrix(rng, n, n, 3);
        const auto group =
            std::make_shared<const AbelianStructure>(reltrace::testing::torsion_presentation(n, m));
        const ShadowClassSet s(group, phi);
        CHECK(s.size() == reltrace::testing::brute_force_class_count(phi, m));
    }
}

TEST_CASE("class counts equal |det(I - Phi)| when nonzero") {
    std::mt19937_64 rng(reltrace::testing::test_seed() + 7);
    for (int k = 0; k < 60; ++k) {
        const std::size_t n = 1 + rng() % 3;
        const IntMatrix phi = reltrace::testing::random_matrix(rng, n, n, 3);
        const Int det = determinant(IntMatrix::identity(n) - phi);
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
        const ShadowClassSet s(free_abelian(names), phi);
        if (det != 0)
            CHECK(s.size() == std::abs(det));
        else
            CHECK_FALSE(s.finite());
    }
}

TEST_CASE("cyclicity: gh and h phi(g) lie in one class") {
    const IntMatrix phi = IntMatrix::from_rows({{2, 1}, {0, -1}});
    const ShadowClassSet s(free_abelian({"a", "b"}), phi);
    std::mt19937_64 rng(3);
    for (int k = 0; k < 30; ++k) {
        const Exponents g{static_cast<Int>(rng() % 7) - 3, static_cast<Int>(rng() % 7) - 3};
        const Exponents h{static_cast<Int>(rng() % 7) - 3, static_cast<Int>(rng() % 7) - 3};
        CHECK(s.class_of(add(g, h)) == s.class_of(add(h, phi.apply(g))));
    }
}

TEST_CASE("pushforward from the solid torus boundary") {
    auto a = std::make_shared<const ShadowClassSet>(free_abelian({"a", "b"}), IntMatrix::diagonal({-1, 3}));
    auto b = std::make_shared<const ShadowClassSet>(free_abelian({"b"}), IntMatrix::from_rows({{3}}));
    const ClassMap push = pushforward_classes(IntMatrix::from_rows({{0, 1}}), a, b);
    CHECK(push({0, 0}) == Exponents{0});
    CHECK(push({1, 0}) == Exponents{0});
    CHECK(push({0, 1}) == Exponents{1});
    CHECK(push({1, 1}) == Exponents{1});
}

TEST_CASE("pushforward into the torus is injective") {
    auto a = std::make_shared<const ShadowClassSet>(free_abelian({"a"}), IntMatrix::from_rows({{4}}));
    auto b = std::make_shared<const ShadowClassSet>(free_abelian({"a", "b"}), IntMatrix::diagonal({4, 3}));
    const ClassMap push = pushforward_classes(IntMatrix::from_rows({{1}, {0}}), a, b);
    CHECK(push({0}) == Exponents{0, 0});
    CHECK(push({1}) == Exponents{1, 0});
    CHECK(push({2}) == Exponents{2, 0});
}

TEST_CASE("pushforward along the identity") {
    auto s = std::make_shared<const ShadowClassSet>(free_abelian({"a", "b"}), IntMatrix::diagonal({4, 3}));
    const ClassMap push = pushforward_classes(IntMatrix::identity(2), s, s);
    for (const auto& r : s->representatives()) CHECK(push(r) == r);
}

TEST_CASE("pushforward is functorial") {
    auto x = std::make_shared<const ShadowClassSet>(free_abelian({"a"}), IntMatrix::from_rows({{4}}));
    auto y = std::make_shared<const ShadowClassSet>(free_abelian({"a", "b"}), IntMatrix::diagonal({4, 3}));
    auto z = std::make_shared<const ShadowClassSet>(free_abelian({"a"}), IntMatrix::from_rows({{4}}));
    const ClassMap first = pushforward_classes(IntMatrix::from_rows({{1}, {0}}), x, y);
    const ClassMap second = pushforward_classes(IntMatrix::from_rows({{1, 0}}), y, z);
    const ClassMap direct = pushforward_classes(IntMatrix::identity(1), x, z);
    const ClassMap composite = second.after(first);
    for (const auto& r : x->representatives()) CHECK(composite(r) == direct(r));
}

TEST_CASE("pushforward rejects incompatible twists") {
    auto a = std::make_shared<const ShadowClassSet>(free_abelian({"a"}), IntMatrix::from_rows({{2}}));
    auto b = std::make_shared<const ShadowClassSet>(free_abelian({"a"}), IntMatrix::from_rows({{3}}));
    CHECK_THROWS_AS(pushforward_classes(IntMatrix::identity(1), a, b), Error);
}

TEST_CASE("abelianization of presentations") {
    Presentation torus{{"a", "b"}, {commutator(0, 1)}};
    const AbelianStructure t(torus);
    CHECK(t.free_rank() == 2);
    CHECK(t.torsion().empty());

    Presentation klein{{"a", "b"}, {Word({{0, 1}, {1, 1}, {0, 1}, {1, -1}})}};
    const AbelianStructure k(klein);
    CHECK(k.free_rank() == 1);
    CHECK(k.torsion() == std::vector<Int>{2});

    const AbelianStructure c = AbelianStructure::cyclic(6, "t");
    CHECK(c.order() == 6);
    CHECK(c.elements().size() == 6);
    CHECK(c.format(c.generator(0)) == "t");
}

TEST_CASE("words reduce freely and format multiplicatively") {
    const Word w({{0, 2}, {0, -1}, {1, 3}, {1, -3}, {0, 1}});
    CHECK(w == Word::generator(0, 2));
    const Presentation p{{"a", "b"}, {}};
    CHECK(p.format(Word({{0, 1}, {1, -2}})) == "a*b^-2");
    CHECK((Word::generator(0) * Word::generator(0).inverse()).empty());
    const AbelianStructure free = AbelianStructure::free_abelian({"a", "b"});
    CHECK(free.format({2, 1}) == "a^2b");
    CHECK(free.format({-1, 0}) == "a^-1");
}

TEST_CASE("abelian recognition") {
    CHECK(recognize_abelian({{"a", "b"}, {commutator(0, 1)}}).abelian);
    CHECK(recognize_abelian({{"a"}, {}}).abelian);
    CHECK_FALSE(recognize_abelian({{"a", "b"}, {}}).abelian);
    CHECK(recognize_abelian({{"a", "b"}, {Word::generator(1)}}).abelian);
}
