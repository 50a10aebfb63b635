// End-to-end tests of the command line tool, run as subprocesses.
//
// POLYENUM_BIN is injected by the build and points at the real binary.
// Each invocation goes through /bin/sh with stdin/stdout/stderr redirected
// to scratch files in the working directory.

#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "polyenum/io.hpp"
#include "polyenum/shapes.hpp"

#include "support/instances.hpp"

namespace {

using namespace polyenum;

struct CliResult {
    int exit = -1;
    std::string out;
    std::string err;
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    REQUIRE(f.good());
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

/**
 * Run the binary with `args` appended, feeding `stdinText` on stdin.
 * `envPrefix` lets a test override environment variables; by default the
 * arithmetic override variable is scrubbed so tests are hermetic.
 */
CliResult run_cli(const std::string& args, const std::string& stdinText = "",
                  const std::string& envPrefix = "env -u POLYENUM_ARITH") {
    static int counter = 0;
    const std::string tag = "cli_tmp_" + std::to_string(counter++);
    const std::string inPath = tag + ".in";
    const std::string outPath = tag + ".out";
    const std::string errPath = tag + ".err";
    write_file(inPath, stdinText);
    const std::string cmd = envPrefix + " \"" + POLYENUM_BIN + "\" " + args + " < " + inPath +
                            " > " + outPath + " 2> " + errPath;
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(outPath);
    r.err = read_file(errPath);
    std::remove(inPath.c_str());
    std::remove(outPath.c_str());
    std::remove(errPath.c_str());
    return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

/** Write a generated instance to `path` through the CLI and return the path. */
std::string generate_to(const std::string& familyAndArgs, const std::string& path) {
    const CliResult r = run_cli("generate " + familyAndArgs + " -o " + path);
    REQUIRE(r.exit == 0);
    return path;
}

} // namespace

TEST_CASE("cli: generate emits the same text as the library serializer") {
    const CliResult r = run_cli("generate cube 3");
    REQUIRE(r.exit == 0);
    CHECK(r.out == serialize(hypercube(3)));

    const CliResult cyc = run_cli("generate cyclic 6 3");
    REQUIRE(cyc.exit == 0);
    CHECK(cyc.out == serialize(cyclic(6, 3)));

    const CliResult toFile = run_cli("generate cross 2 -o cli_gen_cross2.ine");
    REQUIRE(toFile.exit == 0);
    CHECK(toFile.out.empty());
    CHECK(read_file("cli_gen_cross2.ine") == serialize(cross_polytope(2)));
    std::remove("cli_gen_cross2.ine");
}

TEST_CASE("cli: generate rejects unknown families and bad arity") {
    CHECK(run_cli("generate dodecahedron").exit == 1);
    CHECK(run_cli("generate cube 3 4").exit == 1);
    CHECK(run_cli("generate cyclic 6").exit == 1);
}

TEST_CASE("cli: enumerate converts a generated cube and reports a summary") {
    const std::string path = generate_to("cube 3", "cli_cube3.ine");
    const CliResult r = run_cli("enumerate " + path + " --sorted");
    REQUIRE(r.exit == 0);

    std::istringstream in(r.out);
    const Representation rep = parse(in);
    CHECK(rep.kind == ReprKind::V);
    CHECK(rep.m() == 8);
    CHECK(rep.dim() == 3);
    for (std::size_t i = 0; i < rep.m(); ++i) {
        CHECK(rep.rows(i, 0) == BigRat(1));
        for (std::size_t j = 1; j < rep.n(); ++j) {
            const bool zeroOrOne = rep.rows(i, j) == BigRat(0) || rep.rows(i, j) == BigRat(1);
            CHECK(zeroOrOne);
        }
    }

    CHECK(contains(r.err, "outputs=8"));
    CHECK(contains(r.err, "bases=8"));
    CHECK(contains(r.err, "engine=rs"));
    // Hybrid reports the arithmetic that actually ran; cube3 fits in fixed64.
    CHECK(contains(r.err, "arith=fixed"));
    CHECK(contains(r.err, "workers=1"));
    std::remove(path.c_str());
}

TEST_CASE("cli: both engines agree byte for byte under --sorted") {
    const std::string path = generate_to("perm 3", "cli_perm3.ine");
    const CliResult rs = run_cli("enumerate " + path + " --engine rs --sorted");
    const CliResult dd = run_cli("enumerate " + path + " --engine dd --sorted");
    REQUIRE(rs.exit == 0);
    REQUIRE(dd.exit == 0);
    CHECK(rs.out == dd.out);
    CHECK(contains(rs.err, "outputs=6"));
    CHECK(contains(dd.err, "engine=dd"));

    // A second identical run reproduces the bytes exactly.
    const CliResult again = run_cli("enumerate " + path + " --engine rs --sorted");
    REQUIRE(again.exit == 0);
    CHECK(again.out == rs.out);
    std::remove(path.c_str());
}

TEST_CASE("cli: facet direction via stdin and -o output file") {
    const std::string text = serialize(cyclic(7, 3));
    const CliResult r = run_cli("enumerate - --sorted -o cli_cyc73.out", text);
    REQUIRE(r.exit == 0);
    CHECK(r.out.empty());
    CHECK(contains(r.err, "outputs=10")); // cyclic polytope facet count in 3d

    std::istringstream in(read_file("cli_cyc73.out"));
    const Representation rep = parse(in);
    CHECK(rep.kind == ReprKind::H);
    CHECK(rep.m() == 10);
    std::remove("cli_cyc73.out");
}

TEST_CASE("cli: parallel workers produce the same sorted output") {
    const std::string path = generate_to("perm 4", "cli_perm4.ine");
    const CliResult one = run_cli("enumerate " + path + " --sorted");
    const CliResult four = run_cli("enumerate " + path + " --sorted --workers 4 --initdepth 2");
    REQUIRE(one.exit == 0);
    REQUIRE(four.exit == 0);
    CHECK(contains(one.err, "outputs=24"));
    CHECK(contains(four.err, "workers=4"));
    CHECK(one.out == four.out);
    std::remove(path.c_str());
}

TEST_CASE("cli: usage errors exit with code 1") {
    const std::string path = generate_to("cube 2", "cli_cube2.ine");
    CHECK(run_cli("").exit == 1);                 // missing subcommand
    CHECK(run_cli("frobnicate").exit == 1);       // unknown subcommand
    CHECK(run_cli("enumerate " + path + " --engine bogus").exit == 1);
    CHECK(run_cli("enumerate " + path + " --arith decimal").exit == 1);
    CHECK(run_cli("enumerate " + path + " --engine dd --workers 2").exit == 1);
    CHECK(run_cli("enumerate " + path + " --order sideways").exit == 1);
    std::remove(path.c_str());
}

TEST_CASE("cli: unreadable or malformed input exits with code 2") {
    CHECK(run_cli("enumerate /no/such/file.ine").exit == 2);
    CHECK(run_cli("enumerate -", "utter nonsense\n").exit == 2);

    const std::string truncated = "H-representation\nbegin\n4 3 rational\n1 0 0\n";
    CHECK(run_cli("enumerate -", truncated).exit == 2);

    // Structurally valid file that fails validation: a vertex-format row
    // whose leading entry is neither 0 nor 1.
    const std::string badLead = "V-representation\nbegin\n1 3 rational\n2 0 0\nend\n";
    CHECK(run_cli("enumerate -", badLead).exit == 2);
}

TEST_CASE("cli: infeasible and unbounded instances exit with code 3") {
    const std::string infeasible = "H-representation\nbegin\n2 2 rational\n-1 1\n0 -1\nend\n";
    CHECK(run_cli("enumerate -", infeasible).exit == 3);

    const std::string halfLine = "H-representation\nbegin\n1 2 rational\n0 1\nend\n";
    CHECK(run_cli("enumerate -", halfLine).exit == 3);

    const std::string wholeLine = "H-representation\nbegin\n1 3 rational\n1 0 1\nend\n";
    const CliResult r = run_cli("enumerate -", wholeLine);
    CHECK(r.exit == 3);
    CHECK(contains(r.err, "error:"));
}

TEST_CASE("cli: expired timeout exits with code 4") {
    const std::string path = generate_to("perm 5", "cli_perm5.ine");
    const CliResult r = run_cli("enumerate " + path + " --timeout 0.000000001");
    CHECK(r.exit == 4);
    std::remove(path.c_str());
}

TEST_CASE("cli: generator cap and fixed overflow exit with code 5") {
    const std::string oct = serialize(cross_polytope(3));
    CHECK(run_cli("enumerate - --engine dd --gencap 3", oct).exit == 5);

    // Moment curve coordinates near 30^15 exceed the 64-bit range, so the
    // checked fixed-width mode must refuse rather than wrap.
    const std::string path = generate_to("cyclic 30 15", "cli_cyc3015.ine");
    const CliResult fixed = run_cli("enumerate " + path + " --arith fixed");
    CHECK(fixed.exit == 5);
    std::remove(path.c_str());
}

TEST_CASE("cli: POLYENUM_ARITH overrides the --arith flag") {
    const std::string path = generate_to("cyclic 30 15", "cli_cyc3015b.ine");

    // Flag says big, environment forces fixed: the overflow fires.
    const CliResult forcedFixed =
        run_cli("estimate " + path + " --probes 2 --arith big", "", "env POLYENUM_ARITH=fixed");
    CHECK(forcedFixed.exit == 5);

    // Flag says fixed, environment forces big: the run succeeds.
    const CliResult forcedBig =
        run_cli("estimate " + path + " --probes 2 --arith fixed", "", "env POLYENUM_ARITH=big");
    REQUIRE(forcedBig.exit == 0);
    CHECK(contains(forcedBig.out, "probes=2"));

    // Hybrid falls back to big arithmetic on its own.
    const CliResult hybrid = run_cli("estimate " + path + " --probes 2 --arith hybrid");
    REQUIRE(hybrid.exit == 0);
    CHECK(contains(hybrid.out, "probes=2"));

    // The override is also visible in the enumerate summary line.
    const std::string cube = generate_to("cube 2", "cli_cube2b.ine");
    const CliResult summary =
        run_cli("enumerate " + cube + " --arith fixed", "", "env POLYENUM_ARITH=big");
    REQUIRE(summary.exit == 0);
    CHECK(contains(summary.err, "arith=big"));
    std::remove(path.c_str());
    std::remove(cube.c_str());
}

TEST_CASE("cli: estimate is deterministic for a fixed seed") {
    const std::string path = generate_to("cube 3", "cli_cube3e.ine");
    const CliResult a = run_cli("estimate " + path + " --probes 50 --seed 5");
    const CliResult b = run_cli("estimate " + path + " --probes 50 --seed 5");
    REQUIRE(a.exit == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "estBases="));
    CHECK(contains(a.out, "sampleVariance="));
    CHECK(contains(a.out, "probes=50"));
    std::remove(path.c_str());
}

TEST_CASE("cli: degeneracy reports the bases-per-output ratio") {
    const std::string cube = generate_to("cube 3", "cli_cube3d.ine");
    const CliResult r = run_cli("degeneracy " + cube);
    REQUIRE(r.exit == 0);
    CHECK(contains(r.out, "basesSeen=8"));
    CHECK(contains(r.out, "outputsSeen=8"));
    CHECK(contains(r.out, "ratio=1.00"));
    std::remove(cube.c_str());

    // Octahedron halfspaces: every vertex lies on four facets, so the
    // perturbed search visits two dictionaries per vertex.
    const CliResult deg = run_cli("degeneracy -", serialize(fixture::octahedron_h()));
    REQUIRE(deg.exit == 0);
    CHECK(contains(deg.out, "basesSeen=12"));
    CHECK(contains(deg.out, "outputsSeen=6"));
    CHECK(contains(deg.out, "ratio=2.00"));
}

TEST_CASE("cli: bench emits CSV rows for every instance x engine cell") {
    const std::string cube = generate_to("cube 3", "cli_cube3bench.ine");
    const std::string square = generate_to("cube 2", "cli_cube2bench.ine");
    const CliResult r =
        run_cli("bench --instances " + cube + " " + square + " --engines rs dd rsx2 --csv");
    REQUIRE(r.exit == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "instance,engine,workers,seconds,outputs,bases,status");
    int count = 0;
    std::string line;
    while (std::getline(lines, line)) ++count;
    CHECK(count == 6);
    CHECK(contains(r.out, "cube3,rs,1,"));
    CHECK(contains(r.out, "cube3,dd,1,"));
    CHECK(contains(r.out, "cube3,rsx2,2,"));
    CHECK(contains(r.out, "cube2,rs,1,"));
    CHECK(contains(r.out, ",8,8,ok"));
    CHECK(contains(r.out, ",4,4,ok"));
    std::remove(cube.c_str());
    std::remove(square.c_str());
}

TEST_CASE("cli: bench table shows statuses and a speedup column") {
    const std::string oct = generate_to("cross 3", "cli_cross3bench.ine");
    const CliResult r = run_cli("bench --instances " + oct + " --engines rs dd --gencap 3");
    REQUIRE(r.exit == 0);
    CHECK(contains(r.out, "speedup"));
    CHECK(contains(r.out, "memcap")); // dd hits the generator cap
    CHECK(contains(r.out, "1.00x"));  // rs is its own baseline
    std::remove(oct.c_str());

    CHECK(run_cli("bench --instances /no/such/file.ine --csv").exit == 2);
}
