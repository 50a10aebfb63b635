// Command line front end: convert between polytope representations,
// generate standard families, estimate tree sizes, probe degeneracy,
// and run benchmark matrices.
//
// Exit codes: 0 success, 1 usage, 2 unreadable or invalid input,
// 3 infeasible or unbounded, 4 timeout, 5 resource cap or 64-bit
// overflow, 6 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "polyenum/bench.hpp"
#include "polyenum/convert.hpp"
#include "polyenum/shapes.hpp"

namespace {

using namespace polyenum;

Representation read_input(const std::string& path, Diagnostics* diag) {
    if (path.empty() || path == "-") return parse(std::cin, diag);
    std::ifstream in(path);
    if (!in) throw Error("cannot open input file '" + path + "'");
    return parse(in, diag);
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << text;
}

ArithmeticMode arith_from_name(const std::string& name) {
    if (name == "fixed") return ArithmeticMode::Fixed64Checked;
    if (name == "big") return ArithmeticMode::ArbitraryPrecision;
    if (name == "hybrid") return ArithmeticMode::Hybrid;
    throw std::invalid_argument("unknown arithmetic mode '" + name + "' (use fixed, big, hybrid)");
}

const char* arith_name(ArithmeticMode m) {
    switch (m) {
        case ArithmeticMode::Fixed64Checked: return "fixed";
        case ArithmeticMode::ArbitraryPrecision: return "big";
        case ArithmeticMode::Hybrid: return "hybrid";
    }
    return "?";
}

/** POLYENUM_ARITH, when set, overrides the --arith option. */
ArithmeticMode resolve_arith(const std::string& flagValue) {
    if (const char* env = std::getenv("POLYENUM_ARITH"); env && *env)
        return arith_from_name(env);
    return arith_from_name(flagValue);
}

InsertionOrder::Kind order_from_name(const std::string& name) {
    if (name == "asgiven") return InsertionOrder::Kind::AsGiven;
    if (name == "lexmin") return InsertionOrder::Kind::LexMin;
    if (name == "maxcutoff") return InsertionOrder::Kind::MaxCutoff;
    if (name == "random") return InsertionOrder::Kind::Random;
    throw std::invalid_argument("unknown insertion order '" + name + "'");
}

EngineSel engine_sel_from_label(const std::string& label) {
    EngineSel sel;
    std::string base = label;
    for (char sep : {'x', ':'}) {
        const auto p = label.find(sep);
        if (p != std::string::npos) {
            base = label.substr(0, p);
            sel.workers = std::stoi(label.substr(p + 1));
            break;
        }
    }
    if (base == "rs")
        sel.engine = Engine::ReverseSearch;
    else if (base == "dd")
        sel.engine = Engine::DoubleDescription;
    else
        throw std::invalid_argument("unknown engine '" + label + "' (use rs, dd, rsxN)");
    if (sel.workers < 1) throw std::invalid_argument("worker count must be positive");
    return sel;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const InternalError*>(&e)) return 6;
    if (dynamic_cast<const ParseError*>(&e)) return 2;
    if (dynamic_cast<const ValidationError*>(&e)) return 2;
    if (dynamic_cast<const InfeasibleError*>(&e)) return 3;
    if (dynamic_cast<const UnboundedError*>(&e)) return 3;
    if (dynamic_cast<const TimeoutError*>(&e)) return 4;
    if (dynamic_cast<const ResourceCapError*>(&e)) return 5;
    if (dynamic_cast<const OverflowError*>(&e)) return 5;
    if (dynamic_cast<const Error*>(&e)) return 2;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return 1;
    return 6;
}

struct EnumerateArgs {
    std::string input;
    std::string output;
    std::string engine = "rs";
    std::string arith = "hybrid";
    std::string order = "asgiven";
    std::uint64_t seed = 0;
    int workers = 1;
    ParallelParams par{};
    double timeoutSec = 0;
    std::uint64_t generatorCap = 0;
    bool sorted = false;
    std::uint64_t autoProbe = 10000;
    double autoThreshold = 100.0;
};

int cmd_enumerate(const EnumerateArgs& a) {
    Diagnostics diag;
    const Representation rep = read_input(a.input, &diag);
    for (const std::string& w : diag.warnings) std::cerr << "warning: " << w << "\n";
    const Diagnostics vd = validate(rep);
    for (const std::string& w : vd.warnings) std::cerr << "warning: " << w << "\n";

    ConversionOptions opts;
    opts.arith = resolve_arith(a.arith);
    opts.workers = a.workers;
    opts.par = a.par;
    opts.par.workers = a.workers;
    opts.order.kind = order_from_name(a.order);
    opts.order.seed = a.seed;
    opts.generatorCap = a.generatorCap;
    if (a.timeoutSec > 0)
        opts.deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(a.timeoutSec));

    if (a.engine == "rs") {
        opts.engine = Engine::ReverseSearch;
    } else if (a.engine == "dd") {
        opts.engine = Engine::DoubleDescription;
    } else if (a.engine == "auto") {
        opts.engine = auto_engine(rep, a.autoProbe, a.autoThreshold, opts.arith);
        std::cerr << "auto: selected "
                  << (opts.engine == Engine::ReverseSearch ? "reverse search" : "double description")
                  << " engine\n";
    } else {
        throw std::invalid_argument("unknown engine '" + a.engine + "' (use rs, dd, auto)");
    }
    if (opts.engine == Engine::DoubleDescription && a.workers > 1)
        throw std::invalid_argument("the double description engine does not support --workers");

    ConversionSummary sum;
    Representation out = convert_collect(rep, opts, &sum);
    if (a.sorted) {
        std::vector<Vec<BigRat>> rows;
        rows.reserve(out.m());
        for (std::size_t i = 0; i < out.m(); ++i) rows.push_back(out.rows.row(i));
        std::sort(rows.begin(), rows.end(), row_less);
        for (std::size_t i = 0; i < rows.size(); ++i) out.rows.set_row(i, rows[i]);
    }
    write_output(a.output, serialize(out));
    std::cerr << "outputs=" << sum.outputs << " bases=" << sum.bases << " depth=" << sum.depth
              << " seconds=" << std::fixed << std::setprecision(3) << sum.seconds
              << " engine=" << (opts.engine == Engine::ReverseSearch ? "rs" : "dd")
              << " arith=" << arith_name(sum.arithUsed) << " workers=" << a.workers << "\n";
    return 0;
}

int cmd_generate(const std::string& family, const std::vector<std::uint64_t>& args,
                 const std::string& output) {
    Representation rep;
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw std::invalid_argument("family '" + family + "' takes " + std::to_string(n) +
                                        " argument(s)");
    };
    if (family == "cube") {
        need(1);
        rep = hypercube(args[0]);
    } else if (family == "cross") {
        need(1);
        rep = cross_polytope(args[0]);
    } else if (family == "cyclic") {
        need(2);
        rep = cyclic(args[0], args[1]);
    } else if (family == "permutahedron" || family == "perm") {
        need(1);
        rep = permutahedron(args[0]);
    } else if (family == "cut") {
        need(1);
        rep = cut_vectors(args[0]);
    } else {
        throw std::invalid_argument("unknown family '" + family +
                                    "' (use cube, cross, cyclic, permutahedron, cut)");
    }
    write_output(output, serialize(rep));
    return 0;
}

/** Vertex-enumeration pivot system of an instance, in one arithmetic. */
template <class R>
PivotSystem<R> system_of(const Representation& rep) {
    const Diagnostics vd = validate(rep);
    if (!vd.ok()) {
        std::string msg = "invalid input";
        for (const std::string& e : vd.errors) msg += "; " + e;
        throw ValidationError(msg);
    }
    Matrix<BigRat> rows;
    if (rep.kind == ReprKind::H) {
        LinearityReduction red = eliminate_linearities(rep);
        if (red.reduced.dim() == 0)
            throw ValidationError("instance is a single point; nothing to estimate");
        rows = red.reduced.rows;
    } else {
        rows = polar_of_points(rep).hrows;
    }
    return initial_dictionary(matrix_from_big<R>(rows));
}

int cmd_estimate(const std::string& input, std::uint64_t probes, std::uint64_t seed,
                 const std::string& arithFlag) {
    const Representation rep = read_input(input, nullptr);
    const ArithmeticMode mode = resolve_arith(arithFlag);
    EstimateReport er;
    auto runBig = [&] { return estimate(system_of<BigRat>(rep), probes, seed); };
    if (mode == ArithmeticMode::ArbitraryPrecision) {
        er = runBig();
    } else {
        try {
            er = estimate(system_of<Rat64>(rep), probes, seed);
        } catch (const OverflowError&) {
            if (mode == ArithmeticMode::Fixed64Checked) throw;
            er = runBig();
        }
    }
    std::cout << "estBases=" << std::fixed << std::setprecision(1) << er.estBases
              << " estOutputs=" << er.estOutputs << " sampleVariance=" << std::setprecision(3)
              << er.sampleVariance << " probes=" << er.probes << "\n";
    return 0;
}

int cmd_degeneracy(const std::string& input, std::uint64_t stopAfter, const std::string& arithFlag) {
    const Representation rep = read_input(input, nullptr);
    const DegeneracyReport dr = degeneracy_report(rep, stopAfter, resolve_arith(arithFlag));
    std::cout << "basesSeen=" << dr.basesSeen << " outputsSeen=" << dr.outputsSeen
              << " ratio=" << std::fixed << std::setprecision(2) << dr.ratio << "\n";
    return 0;
}

struct BenchArgs {
    std::vector<std::string> instances;
    std::vector<std::string> engines{"rs"};
    double timeoutSec = 0;
    std::uint64_t generatorCap = 0;
    std::string arith = "hybrid";
    ParallelParams par{};
    bool csv = false;
    std::string baseline = "rs";
    std::string output;
};

int cmd_bench(const BenchArgs& a) {
    BenchSpec spec;
    spec.instancePaths = a.instances;
    for (const std::string& label : a.engines) spec.engines.push_back(engine_sel_from_label(label));
    spec.timeoutSec = a.timeoutSec;
    spec.generatorCap = a.generatorCap;
    spec.arith = resolve_arith(a.arith);
    spec.par = a.par;
    const std::vector<BenchRow> rows = run_bench(spec);
    write_output(a.output, a.csv ? to_csv(rows) : to_table(rows, a.baseline));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact conversion between vertex and halfspace descriptions of convex polytopes"};
    app.require_subcommand(1);

    EnumerateArgs en;
    CLI::App* enumerateCmd = app.add_subcommand("enumerate", "convert H to V or V to H");
    enumerateCmd->add_option("input", en.input, "input file (default: stdin)");
    enumerateCmd->add_option("-o,--output", en.output, "output file (default: stdout)");
    enumerateCmd->add_option("--engine", en.engine, "rs, dd, or auto");
    enumerateCmd->add_option("--arith", en.arith, "fixed, big, or hybrid");
    enumerateCmd->add_option("--workers", en.workers, "parallel worker threads (reverse search)");
    enumerateCmd->add_option("--initdepth", en.par.initDepth, "parallel seeding depth");
    enumerateCmd->add_option("--lmin", en.par.lmin, "short-queue bound multiplier");
    enumerateCmd->add_option("--maxc", en.par.maxc, "short-queue job budget");
    enumerateCmd->add_option("--scale", en.par.scale, "long-queue budget multiplier");
    enumerateCmd->add_option("--maxbuf", en.par.maxbufBytes, "output chunk size in bytes");
    enumerateCmd->add_option("--order", en.order, "dd insertion order: asgiven, lexmin, maxcutoff, random");
    enumerateCmd->add_option("--seed", en.seed, "seed for random insertion order");
    enumerateCmd->add_option("--timeout", en.timeoutSec, "wall-clock limit in seconds");
    enumerateCmd->add_option("--gencap", en.generatorCap, "dd generator cap");
    enumerateCmd->add_flag("--sorted", en.sorted, "sort output rows lexicographically");
    enumerateCmd->add_option("--auto-probe", en.autoProbe, "bases probed by --engine auto");
    enumerateCmd->add_option("--auto-threshold", en.autoThreshold,
                             "bases-per-output ratio above which auto picks dd");

    std::string genFamily, genOutput;
    std::vector<std::uint64_t> genArgs;
    CLI::App* generateCmd = app.add_subcommand("generate", "emit a standard polytope family");
    generateCmd->add_option("family", genFamily, "cube, cross, cyclic, permutahedron, cut")->required();
    generateCmd->add_option("args", genArgs, "family parameters");
    generateCmd->add_option("-o,--output", genOutput, "output file (default: stdout)");

    std::string estInput, estArith = "hybrid";
    std::uint64_t estProbes = 1000, estSeed = 12345;
    CLI::App* estimateCmd = app.add_subcommand("estimate", "estimate tree size by random probes");
    estimateCmd->add_option("input", estInput, "input file (default: stdin)");
    estimateCmd->add_option("--probes", estProbes, "number of random walks");
    estimateCmd->add_option("--seed", estSeed, "random seed");
    estimateCmd->add_option("--arith", estArith, "fixed, big, or hybrid");

    std::string degInput, degArith = "hybrid";
    std::uint64_t degStop = 10000;
    CLI::App* degeneracyCmd = app.add_subcommand("degeneracy", "probe the bases-per-output ratio");
    degeneracyCmd->add_option("input", degInput, "input file (default: stdin)");
    degeneracyCmd->add_option("--stop", degStop, "stop after this many bases");
    degeneracyCmd->add_option("--arith", degArith, "fixed, big, or hybrid");

    BenchArgs be;
    CLI::App* benchCmd = app.add_subcommand("bench", "run an instance x engine matrix");
    benchCmd->add_option("--instances", be.instances, "instance files")->required();
    benchCmd->add_option("--engines", be.engines, "engine labels: rs, dd, rsxN");
    benchCmd->add_option("--timeout", be.timeoutSec, "per-run wall-clock limit in seconds");
    benchCmd->add_option("--gencap", be.generatorCap, "dd generator cap");
    benchCmd->add_option("--arith", be.arith, "fixed, big, or hybrid");
    benchCmd->add_option("--initdepth", be.par.initDepth, "parallel seeding depth");
    benchCmd->add_option("--lmin", be.par.lmin, "short-queue bound multiplier");
    benchCmd->add_option("--maxc", be.par.maxc, "short-queue job budget");
    benchCmd->add_option("--scale", be.par.scale, "long-queue budget multiplier");
    benchCmd->add_option("--maxbuf", be.par.maxbufBytes, "output chunk size in bytes");
    benchCmd->add_flag("--csv", be.csv, "emit CSV instead of an aligned table");
    benchCmd->add_option("--baseline", be.baseline, "engine label for the speedup column");
    benchCmd->add_option("-o,--output", be.output, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (enumerateCmd->parsed()) return cmd_enumerate(en);
        if (generateCmd->parsed()) return cmd_generate(genFamily, genArgs, genOutput);
        if (estimateCmd->parsed()) return cmd_estimate(estInput, estProbes, estSeed, estArith);
        if (degeneracyCmd->parsed()) return cmd_degeneracy(degInput, degStop, degArith);
        if (benchCmd->parsed()) return cmd_bench(be);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}
