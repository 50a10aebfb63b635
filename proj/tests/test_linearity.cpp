#include <catch_amalgamated.hpp>

#include "polyenum/linearity.hpp"
#include "polyenum/shapes.hpp"
#include "support/instances.hpp"

using namespace polyenum;

TEST_CASE("no linearity rows is the identity reduction", "[linearity]") {
    Representation r = fixture::clipped_square();
    LinearityReduction red = eliminate_linearities(r);
    CHECK(red.reduced.rows == r.rows);
    CHECK(red.reduced.dim() == 2);
    Vec<BigRat> y{BigRat(1), BigRat(2)};
    CHECK(red.lift.lift(y) == y);
}

TEST_CASE("single equality drops one dimension", "[linearity]") {
    // x + y = 1 with 0 <= x <= 1.
    Representation r = fixture::h_rep(
        {{-1, 1, 1}, {0, 1, 0}, {1, -1, 0}}, "segment", {1});
    LinearityReduction red = eliminate_linearities(r);
    CHECK(red.reduced.dim() == 1);
    CHECK(red.reduced.m() == 2);
    // Lifted points satisfy the equality.
    for (int t : {0, 1, 2}) {
        Vec<BigRat> p = red.lift.lift({BigRat(t, 2)});
        REQUIRE(p.size() == 2);
        CHECK(p[0] + p[1] == 1);
    }
}

TEST_CASE("permutahedron(3) reduces to the plane and keeps its vertices", "[linearity]") {
    Representation perm = permutahedron(3);
    LinearityReduction red = eliminate_linearities(perm);
    CHECK(red.reduced.dim() == 2);

    // All six permutations of (1,2,3) must lie in the reduced polytope's lift.
    // Check the lift solves the equality exactly.
    Vec<BigRat> probe = red.lift.lift(Vec<BigRat>(2, BigRat(0)));
    BigRat s = 0;
    for (const BigRat& x : probe) s += x;
    CHECK(s == 6); // x1+x2+x3 = 6
}

TEST_CASE("fully determined system leaves dimension zero", "[linearity]") {
    // x = 2, y = 3 as equalities, plus a slack inequality.
    Representation r = fixture::h_rep(
        {{-2, 1, 0}, {-3, 0, 1}, {10, -1, -1}}, "point", {1, 2});
    LinearityReduction red = eliminate_linearities(r);
    CHECK(red.reduced.dim() == 0);
    Vec<BigRat> p = red.lift.lift({});
    REQUIRE(p.size() == 2);
    CHECK(p[0] == 2);
    CHECK(p[1] == 3);
    // Remaining inequality became a constant row: 10 - 2 - 3 = 5 >= 0.
    REQUIRE(red.reduced.m() == 1);
    CHECK(red.reduced.rows(0, 0) == 5);
}

TEST_CASE("inconsistent equalities throw InfeasibleError", "[linearity]") {
    Representation r = fixture::h_rep(
        {{-1, 1, 1}, {-2, 1, 1}, {0, 1, 0}}, "bad", {1, 2});
    CHECK_THROWS_AS(eliminate_linearities(r), InfeasibleError);
}

TEST_CASE("dependent equalities are dropped with a note", "[linearity]") {
    Representation r = fixture::h_rep(
        {{-1, 1, 1}, {-2, 2, 2}, {0, 1, 0}, {1, -1, 0}}, "dep", {1, 2});
    LinearityReduction red = eliminate_linearities(r);
    CHECK(red.reduced.dim() == 1);
    CHECK_FALSE(red.notes.warnings.empty());
}
