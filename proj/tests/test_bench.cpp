#include <catch_amalgamated.hpp>

#include "polyenum/bench.hpp"
#include "polyenum/shapes.hpp"
#include "support/instances.hpp"

#include <cstdio>
#include <fstream>

using namespace polyenum;

namespace {

/** Write a representation to a temp file and return its path. */
std::string temp_instance(const Representation& rep, const std::string& tag) {
    std::string path = "bench_tmp_" + tag + ".ine";
    std::ofstream out(path);
    serialize(rep, out);
    return path;
}

} // namespace

TEST_CASE("bench matrix runs engines on instances", "[bench]") {
    const std::string cube = temp_instance(hypercube(3), "cube3");
    const std::string square = temp_instance(fixture::clipped_square(), "clipsq");

    BenchSpec spec;
    spec.instancePaths = {cube, square};
    spec.engines = {{Engine::ReverseSearch, 1}, {Engine::DoubleDescription, 1}};
    auto rows = run_bench(spec);

    REQUIRE(rows.size() == 4);
    CHECK(rows[0].instance == "cube3");
    CHECK(rows[0].engine == "rs");
    CHECK(rows[1].engine == "dd");
    CHECK(rows[2].instance == "clipped_square");
    for (const BenchRow& r : rows) {
        CHECK(r.status == BenchStatus::Ok);
        REQUIRE(r.outputs.has_value());
        CHECK(r.seconds >= 0);
        REQUIRE(r.outputBytes.has_value());
        CHECK(*r.outputBytes > 0);
    }
    CHECK(*rows[0].outputs == 8);
    CHECK(*rows[1].outputs == 8);
    CHECK(*rows[2].outputs == 5);
    CHECK(*rows[0].bases == 8);
    CHECK(*rows[1].bases == 0); // double description reports no pivots

    std::remove(cube.c_str());
    std::remove(square.c_str());
}

TEST_CASE("bench statuses for resource limits", "[bench]") {
    const std::string oct = temp_instance(fixture::octahedron_h(), "oct");

    BenchSpec capped;
    capped.instancePaths = {oct};
    capped.engines = {{Engine::DoubleDescription, 1}};
    capped.generatorCap = 3;
    auto rows = run_bench(capped);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].status == BenchStatus::Memcap);
    CHECK_FALSE(rows[0].outputs.has_value());
    CHECK_FALSE(rows[0].bases.has_value());

    BenchSpec timed;
    timed.instancePaths = {oct};
    timed.engines = {{Engine::ReverseSearch, 1}};
    timed.timeoutSec = 1e-9;
    rows = run_bench(timed);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].status == BenchStatus::Timeout);

    std::remove(oct.c_str());

    const std::string ovf = temp_instance(
        fixture::h_rep({{0, 1, 0},
                        {0, 0, 1},
                        {BigRat(BigInt(1) << 62), -BigRat((BigInt(1) << 40) + 9), -1},
                        {BigRat(BigInt(1) << 62), -1, -BigRat((BigInt(1) << 40) + 9)}},
                       "ovf"),
        "ovf");
    BenchSpec fixed;
    fixed.instancePaths = {ovf};
    fixed.engines = {{Engine::ReverseSearch, 1}};
    fixed.arith = ArithmeticMode::Fixed64Checked;
    rows = run_bench(fixed);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].status == BenchStatus::Overflow);
    std::remove(ovf.c_str());
}

TEST_CASE("bench aborts on unusable instance files", "[bench]") {
    BenchSpec spec;
    spec.instancePaths = {"no_such_file_here.ine"};
    spec.engines = {{Engine::ReverseSearch, 1}};
    CHECK_THROWS_AS(run_bench(spec), Error);
}

TEST_CASE("csv format is stable", "[bench]") {
    std::vector<BenchRow> rows;
    BenchRow a;
    a.instance = "cube3";
    a.engine = "rs";
    a.workers = 1;
    a.seconds = 0.1234;
    a.outputs = 8;
    a.bases = 8;
    a.status = BenchStatus::Ok;
    rows.push_back(a);
    BenchRow b;
    b.instance = "cube3";
    b.engine = "ddx4";
    b.workers = 4;
    b.seconds = 2.0;
    b.status = BenchStatus::Timeout;
    rows.push_back(b);

    const std::string csv = to_csv(rows);
    CHECK(csv ==
          "instance,engine,workers,seconds,outputs,bases,status\n"
          "cube3,rs,1,0.123,8,8,ok\n"
          "cube3,ddx4,4,2.000,,,timeout\n");
}

TEST_CASE("table format includes speedups", "[bench]") {
    std::vector<BenchRow> rows;
    BenchRow a;
    a.instance = "perm4";
    a.engine = "rs";
    a.seconds = 1.0;
    a.outputs = 24;
    a.bases = 24;
    a.outputBytes = 480;
    rows.push_back(a);
    BenchRow b;
    b.instance = "perm4";
    b.engine = "rsx2";
    b.workers = 2;
    b.seconds = 0.5;
    b.outputs = 24;
    b.bases = 24;
    b.outputBytes = 480;
    rows.push_back(b);
    BenchRow c;
    c.instance = "perm4";
    c.engine = "dd";
    c.seconds = 0;
    c.status = BenchStatus::Memcap;
    rows.push_back(c);

    const std::string table = to_table(rows, "rs");
    CHECK(table.find("speedup") != std::string::npos);
    CHECK(table.find("2.00x") != std::string::npos);
    CHECK(table.find("memcap") != std::string::npos);
    CHECK(table.find("1.00x") != std::string::npos);
}

TEST_CASE("engine labels", "[bench]") {
    CHECK(EngineSel{Engine::ReverseSearch, 1}.label() == "rs");
    CHECK(EngineSel{Engine::ReverseSearch, 8}.label() == "rsx8");
    CHECK(EngineSel{Engine::DoubleDescription, 1}.label() == "dd");
}
