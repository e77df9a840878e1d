#include <limits>

#include "doctest.h"
#include "harness.hpp"
#include "reltrace/integer_matrix.hpp"

using namespace reltrace;

namespace {

void check_smith(const IntMatrix& m) {
    const SmithForm s = smith_normal_form(m);
    CHECK(reltrace::testing::exact_factorization(s.U, m, s.V, s.D));
    CHECK(abs(reltrace::testing::exact_determinant(s.U)) == 1);
    CHECK(abs(reltrace::testing::exact_determinant(s.V)) == 1);
    for (std::size_t i = 0; i + 1 < s.rank; ++i) CHECK(s.D(i + 1, i + 1) % s.D(i, i) == 0);
}

}  // namespace

TEST_CASE("smith form of the identity is trivial") {
    const SmithForm s = smith_normal_form(IntMatrix::identity(3));
    CHECK(s.U.is_identity());
    CHECK(s.D.is_identity());
    CHECK(s.V.is_identity());
    CHECK(s.rank == 3);
}

TEST_CASE("smith form normalizes signs") {
    const SmithForm s = smith_normal_form(IntMatrix::diagonal({2, -2}));
    CHECK(s.D == IntMatrix::diagonal({2, 2}));
    check_smith(IntMatrix::diagonal({2, -2}));
}

TEST_CASE("smith form builds the divisibility chain") {
    const SmithForm s = smith_normal_form(IntMatrix::diagonal({-3, -2}));
    CHECK(s.D == IntMatrix::diagonal({1, 6}));
    CHECK(s.invariant_factors == std::vector<Int>{1, 6});
    CHECK(std::abs(determinant(IntMatrix::diagonal({-3, -2}))) == 6);
}

TEST_CASE("smith form of rectangular and zero matrices") {
    check_smith(IntMatrix::from_rows({{2, 4, 6}, {1, 2, 3}}));
    const SmithForm z = smith_normal_form(IntMatrix(2, 3));
    CHECK(z.rank == 0);
    CHECK(z.D.is_zero());
    CHECK(smith_normal_form(IntMatrix::from_rows({{2, 4, 6}, {1, 2, 3}})).rank == 1);
}

TEST_CASE("random smith forms") {
    std::mt19937_64 rng(reltrace::testing::test_seed());
    for (int k = 0; k < 100; ++k) check_smith(reltrace::testing::random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6, 9));
}

TEST_CASE("smith transforms of full-rank 8x8 matrices stay in range") {
    std::mt19937_64 rng(reltrace::testing::test_seed());
    for (int k = 0; k < 50; ++k) check_smith(reltrace::testing::random_matrix(rng, 8, 8, 6));
}

TEST_CASE("determinant") {
    CHECK(determinant(IntMatrix::from_rows({{1, 2}, {3, 4}})) == -2);
    CHECK(determinant(IntMatrix::from_rows({{2, 0, 1}, {1, 3, 2}, {1, 1, 1}})) == 0);
    CHECK(determinant(IntMatrix::identity(4)) == 1);
}

TEST_CASE("torsion normalization") {
    CHECK(normalize_torsion({2, 3}) == std::vector<Int>{6});
    CHECK(normalize_torsion({2, 2, 1}) == std::vector<Int>{2, 2});
    CHECK(normalize_torsion({4, 6}) == std::vector<Int>{2, 12});
}

TEST_CASE("lattice reduction gives canonical coset representatives") {
    const Lattice l(2, {{2, 0}, {0, 3}});
    CHECK(l.index() == 6);
    CHECK(l.reduce({5, -1}) == Exponents{1, 2});
    CHECK(l.contains({4, 9}));
    CHECK_FALSE(l.contains({1, 0}));
    const Lattice partial(2, {{1, 1}});
    CHECK_FALSE(partial.index().has_value());
    CHECK(partial.reduce({3, 5}) == partial.reduce({0, 2}));
}

TEST_CASE("colex order puts the last coordinate first") {
    ColexLess less;
    CHECK(less({2, 0}, {0, 1}));
    CHECK(less({0, 1}, {1, 1}));
}

TEST_CASE("checked arithmetic reports overflow") {
    const Int big = std::numeric_limits<Int>::max();
    CHECK_THROWS_AS(add_checked(big, 1), Error);
    CHECK_THROWS_AS(mul_checked(big / 2, 3), Error);
    CHECK(floor_mod(-7, 3) == 2);
    CHECK(floor_div(-7, 3) == -3);
}
