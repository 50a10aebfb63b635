#include <catch_amalgamated.hpp>

#include "polyenum/double_description.hpp"
#include "polyenum/shapes.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

using namespace polyenum;

namespace {

std::vector<Vec<BigRat>> sorted_vertices(const DDResult<BigRat>& r) {
    auto v = r.vertices;
    std::sort(v.begin(), v.end(), oracle::vec_less);
    return v;
}

DDState full_state(const Matrix<BigRat>& hrows) {
    std::vector<std::size_t> perm(hrows.rows());
    std::iota(perm.begin(), perm.end(), std::size_t(0));
    std::vector<std::size_t> used;
    DDState S = dd_init(hrows, perm, used);
    std::vector<bool> done(hrows.rows(), false);
    for (std::size_t idx : used) done[idx] = true;
    for (std::size_t idx : perm)
        if (!done[idx]) insert_halfspace(S, hrows.row(idx));
    return S;
}

/** Combinatorial adjacency: no third generator covers the shared tight set. */
bool adjacent_oracle(const DDState& S, std::size_t i, std::size_t j) {
    const auto common = S.gens[i].incidence & S.gens[j].incidence;
    for (std::size_t k = 0; k < S.gens.size(); ++k) {
        if (k == i || k == j) continue;
        if ((S.gens[k].incidence & common) == common) return false;
    }
    return true;
}

} // namespace

TEST_CASE("seeding a square yields one vertex and two rays", "[dd]") {
    Matrix<BigRat> rows = hypercube(2).rows;
    std::vector<std::size_t> perm = {0, 1, 2, 3};
    std::vector<std::size_t> used;
    DDState S = dd_init(rows, perm, used);
    CHECK(used == std::vector<std::size_t>{0, 1});
    CHECK(S.d == 2);
    REQUIRE(S.gens.size() == 3);
    REQUIRE(S.processed.size() == 3);
    CHECK(S.processed[0] == Vec<BigRat>{1, 0, 0});
    std::size_t points = 0, rays = 0;
    for (const auto& g : S.gens) (sign_of(g.coords[0]) != 0 ? points : rays)++;
    CHECK(points == 1);
    CHECK(rays == 2);
}

TEST_CASE("double description matches brute force on fixtures", "[dd]") {
    for (const Representation& rep :
         {hypercube(3), fixture::clipped_square(), fixture::pyramid(), fixture::octahedron_h()}) {
        CAPTURE(rep.name);
        DDResult<BigRat> res = dd_enumerate(rep.rows);
        CHECK(sorted_vertices(res) == oracle::brute_force_vertices(rep.rows));
        CHECK(res.peakGenerators >= res.vertices.size());
    }
}

TEST_CASE("insertion order never changes the vertex set", "[dd]") {
    std::vector<Representation> reps = {fixture::clipped_square(), fixture::pyramid(),
                                        fixture::octahedron_h(), hypercube(3)};
    for (std::uint64_t seed = 500; seed < 508; ++seed)
        reps.push_back(fixture::random_polytope(seed, 3, 5));

    std::vector<InsertionOrder> orders = {
        {InsertionOrder::Kind::AsGiven, 0},   {InsertionOrder::Kind::LexMin, 0},
        {InsertionOrder::Kind::MaxCutoff, 0}, {InsertionOrder::Kind::Random, 1},
        {InsertionOrder::Kind::Random, 2},    {InsertionOrder::Kind::Random, 99},
    };
    for (const Representation& rep : reps) {
        CAPTURE(rep.name);
        auto reference = sorted_vertices(dd_enumerate(rep.rows, orders.front()));
        CHECK(reference == oracle::brute_force_vertices(rep.rows));
        for (std::size_t o = 1; o < orders.size(); ++o)
            CHECK(sorted_vertices(dd_enumerate(rep.rows, orders[o])) == reference);
    }
}

TEST_CASE("redundant and duplicate rows are harmless", "[dd]") {
    auto rows = fixture::collect_rows(hypercube(2));
    rows.push_back({5, -1, -1}); // redundant
    rows.push_back(rows[2]);     // duplicate
    Representation rep = fixture::h_rep(std::move(rows), "square_red");
    DDResult<BigRat> res = dd_enumerate(rep.rows);
    CHECK(sorted_vertices(res) == oracle::brute_force_vertices(hypercube(2).rows));
}

TEST_CASE("infeasible systems throw InfeasibleError", "[dd]") {
    Matrix<BigRat> rows(2, 2);
    rows.set_row(0, {-1, 1});
    rows.set_row(1, {0, -1});
    CHECK_THROWS_AS(dd_enumerate(rows), InfeasibleError);
}

TEST_CASE("unbounded systems throw UnboundedError", "[dd]") {
    // Positive quadrant: rays survive to the end.
    Matrix<BigRat> quad(2, 3);
    quad.set_row(0, {0, 1, 0});
    quad.set_row(1, {0, 0, 1});
    CHECK_THROWS_AS(dd_enumerate(quad), UnboundedError);

    // A strip contains a line: rank deficiency detected at seeding.
    Matrix<BigRat> strip(2, 3);
    strip.set_row(0, {0, 0, 1});
    strip.set_row(1, {1, 0, -1});
    CHECK_THROWS_AS(dd_enumerate(strip), UnboundedError);
}

TEST_CASE("algebraic adjacency equals combinatorial adjacency", "[dd]") {
    for (const Representation& rep :
         {hypercube(3), fixture::pyramid(), fixture::octahedron_h()}) {
        CAPTURE(rep.name);
        DDState S = full_state(rep.rows);
        for (std::size_t i = 0; i < S.gens.size(); ++i)
            for (std::size_t j = i + 1; j < S.gens.size(); ++j)
                CHECK(adjacency_test(S, i, j) == adjacent_oracle(S, i, j));
    }
    DDState S = full_state(hypercube(3).rows);
    CHECK_THROWS_AS(adjacency_test(S, 1, 1), std::invalid_argument);
}

TEST_CASE("cube vertex adjacency is the cube graph", "[dd]") {
    DDState S = full_state(hypercube(3).rows);
    REQUIRE(S.gens.size() == 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = i + 1; j < 8; ++j) {
            int hamming = 0;
            for (std::size_t c = 1; c <= 3; ++c)
                hamming += S.gens[i].coords[c] != S.gens[j].coords[c];
            CHECK(adjacency_test(S, i, j) == (hamming == 1));
        }
}

TEST_CASE("incidence bits are exact", "[dd]") {
    for (const Representation& rep : {fixture::pyramid(), fixture::octahedron_h()}) {
        DDState S = full_state(rep.rows);
        for (const auto& g : S.gens) {
            REQUIRE(g.incidence.size() == S.processed.size());
            for (std::size_t t = 0; t < S.processed.size(); ++t)
                CHECK(g.incidence.test(t) == (sign_of(detail::dot(S.processed[t], g.coords)) == 0));
        }
    }
}

TEST_CASE("generator cap aborts oversized intermediate cones", "[dd]") {
    CHECK_THROWS_AS(dd_enumerate(fixture::octahedron_h().rows, {}, 3), ResourceCapError);
    // A generous cap lets the same run finish.
    CHECK(dd_enumerate(fixture::octahedron_h().rows, {}, 64).vertices.size() == 6);
}

TEST_CASE("deadline cancels a run", "[dd]") {
    RunLimits past;
    past.deadline = std::chrono::steady_clock::now() - std::chrono::milliseconds(1);
    CHECK_THROWS_AS(dd_enumerate(fixture::octahedron_h().rows, {}, 0, &past), TimeoutError);
}

TEST_CASE("greedy max-cutoff order on a hand-checked fixture", "[dd]") {
    // Triangle 0/1/2 with one deeper cut (5) and two redundant rows (3, 4):
    // after seeding on rows 0 and 1, row 2 cuts two generators, then row 5
    // cuts two, leaving rows 3 and 4 cutting nothing (tie broken by index).
    Representation rep = fixture::h_rep({{0, 1, 0},
                                         {0, 0, 1},
                                         {2, -1, -1},
                                         {3, -1, -1},
                                         {1, -1, 0},
                                         {fixture::frac(3, 4), -1, -1}},
                                        "maxcut_fixture");
    auto order = choose_order(rep.rows, {InsertionOrder::Kind::MaxCutoff, 0});
    CHECK(order == std::vector<std::size_t>{0, 1, 2, 5, 3, 4});

    auto verts = sorted_vertices(dd_enumerate(rep.rows, {InsertionOrder::Kind::MaxCutoff, 0}));
    std::vector<Vec<BigRat>> expected = {
        {0, 0}, {0, fixture::frac(3, 4)}, {fixture::frac(3, 4), 0}};
    std::sort(expected.begin(), expected.end(), oracle::vec_less);
    CHECK(verts == expected);
}

TEST_CASE("choose_order yields permutations", "[dd]") {
    Matrix<BigRat> rows = fixture::octahedron_h().rows;
    for (auto kind : {InsertionOrder::Kind::AsGiven, InsertionOrder::Kind::LexMin,
                      InsertionOrder::Kind::MaxCutoff, InsertionOrder::Kind::Random}) {
        auto order = choose_order(rows, {kind, 17});
        std::vector<std::size_t> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::size_t> expect(rows.rows());
        std::iota(expect.begin(), expect.end(), std::size_t(0));
        CHECK(sorted == expect);
    }
    auto r17a = choose_order(rows, {InsertionOrder::Kind::Random, 17});
    auto r17b = choose_order(rows, {InsertionOrder::Kind::Random, 17});
    CHECK(r17a == r17b);
}
