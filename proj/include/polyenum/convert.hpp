#pragma once

#include "polyenum/double_description.hpp"
#include "polyenum/linearity.hpp"
#include "polyenum/parallel.hpp"
#include "polyenum/polar.hpp"

namespace polyenum {

enum class Engine { ReverseSearch, DoubleDescription };

/**
 * Options for a representation conversion.  The budget applies to
 * sequential reverse search runs only (partial runs for probing); the
 * parallel layer assigns its own per-job budgets, and the double
 * description engine is not budgeted by nodes.
 */
struct ConversionOptions {
    Engine engine = Engine::ReverseSearch;
    ArithmeticMode arith = ArithmeticMode::Hybrid;
    int workers = 1;
    ParallelParams par{};
    InsertionOrder order{};
    Budget budget{};
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::uint64_t generatorCap = 0; // double description only; 0 disables
};

struct ConversionSummary {
    std::uint64_t outputs = 0;
    std::uint64_t bases = 0;        // dictionaries visited; 0 for double description
    long depth = 0;                 // deepest tree node; 0 for double description
    double seconds = 0;
    std::uint64_t unexploredCount = 0; // subtree roots left by a budget cut
    ArithmeticMode arithUsed = ArithmeticMode::ArbitraryPrecision;
    RunReport parallel;             // populated when workers > 1
};

using RowSink = std::function<void(const Vec<BigRat>&)>;

namespace detail {

/**
 * Vertex enumeration of a reduced H-system (no linearity rows) in one
 * arithmetic; reduced vertices are passed to `lift` and the lifted rows
 * to the sink.  Shared by the direct and the polar direction.
 */
template <class R>
void run_reverse_search(const Matrix<BigRat>& rows, const ConversionOptions& opts,
                        const RowLift<BigRat>& liftRow, const RowSink& sink,
                        ConversionSummary& sum, const RunLimits& limits) {
    const Matrix<R> converted = matrix_from_big<R>(rows);
    const PivotSystem<R> sys = initial_dictionary(converted);
    const RowLift<R> lift = [&](const Vec<R>& v) { return liftRow(vec_to_big(v)); };
    if (opts.workers > 1) {
        ParallelParams par = opts.par;
        par.workers = opts.workers;
        const ChunkSink chunkSink = [&](std::uint64_t, std::vector<Vec<BigRat>>&& rowsOut) {
            for (const Vec<BigRat>& r : rowsOut) sink(r);
        };
        ManagerOutcome mo = manager_loop(sys, par, lift, chunkSink, &limits);
        sum.outputs = mo.report.totalOutputs;
        sum.bases = mo.report.totalBases;
        sum.depth = mo.maxDepthSeen;
        sum.parallel = mo.report;
    } else {
        const std::function<void(const Vec<R>&)> s = [&](const Vec<R>& v) { sink(lift(v)); };
        EnumerationResult<R> res = enumerate(sys, opts.budget, &s, &limits);
        sum.outputs = res.outputCount;
        sum.bases = res.bases;
        sum.depth = res.maxDepthSeen;
        sum.unexploredCount = res.unexplored.size();
    }
}

/** Vertex enumeration dispatch across engine and arithmetic for one reduced H-system. */
inline void run_vertex_enumeration(const Matrix<BigRat>& rows, const ConversionOptions& opts,
                                   const RowLift<BigRat>& liftRow, const RowSink& sink,
                                   ConversionSummary& sum, const RunLimits& limits) {
    if (opts.engine == Engine::DoubleDescription) {
        // Arbitrary precision regardless of the requested mode: the
        // intermediate generators have no useful fixed-width bound.
        DDResult<BigRat> res = dd_enumerate(rows, opts.order, opts.generatorCap, &limits);
        for (const Vec<BigRat>& v : res.vertices) sink(liftRow(v));
        sum.outputs = res.vertices.size();
        sum.arithUsed = ArithmeticMode::ArbitraryPrecision;
        return;
    }
    switch (opts.arith) {
        case ArithmeticMode::Fixed64Checked:
            run_reverse_search<Rat64>(rows, opts, liftRow, sink, sum, limits);
            sum.arithUsed = ArithmeticMode::Fixed64Checked;
            return;
        case ArithmeticMode::ArbitraryPrecision:
            run_reverse_search<BigRat>(rows, opts, liftRow, sink, sum, limits);
            sum.arithUsed = ArithmeticMode::ArbitraryPrecision;
            return;
        case ArithmeticMode::Hybrid: {
            // Attempt in 64-bit arithmetic with buffered output; on
            // overflow everything done so far is discarded and the run
            // restarts from scratch in arbitrary precision.
            std::vector<Vec<BigRat>> buffered;
            const RowSink buffering = [&](const Vec<BigRat>& r) { buffered.push_back(r); };
            try {
                run_reverse_search<Rat64>(rows, opts, liftRow, buffering, sum, limits);
                for (const Vec<BigRat>& r : buffered) sink(r);
                sum.arithUsed = ArithmeticMode::Fixed64Checked;
                return;
            } catch (const OverflowError&) {
                buffered.clear();
                sum = ConversionSummary{};
            }
            run_reverse_search<BigRat>(rows, opts, liftRow, sink, sum, limits);
            sum.arithUsed = ArithmeticMode::ArbitraryPrecision;
            return;
        }
    }
    throw InternalError("unknown arithmetic mode");
}

} // namespace detail

/**
 * Convert between representations: H input yields its vertices as a
 * V-representation row stream, V input yields its facets as an
 * H-representation row stream.  Throws the Error subclasses for
 * infeasible, unbounded, malformed, or out-of-scope inputs.
 */
inline ConversionSummary convert(const Representation& input, const ConversionOptions& opts,
                                 const RowSink& sink) {
    const Diagnostics diag = validate(input);
    if (!diag.ok()) {
        std::string msg = "invalid input";
        for (const std::string& e : diag.errors) msg += "; " + e;
        throw ValidationError(msg);
    }
    RunLimits limits;
    limits.deadline = opts.deadline;

    ConversionSummary sum;
    const auto t0 = std::chrono::steady_clock::now();

    if (input.kind == ReprKind::H) {
        LinearityReduction red = eliminate_linearities(input);
        const std::size_t rd = red.reduced.dim();
        if (rd == 0) {
            // Equalities pin the point; the remaining rows are constants.
            for (std::size_t i = 0; i < red.reduced.m(); ++i)
                if (sign_of(red.reduced.rows(i, 0)) < 0)
                    throw InfeasibleError("feasible region is empty");
            Vec<BigRat> row(input.dim() + 1);
            row[0] = 1;
            const Vec<BigRat> x = red.lift.lift({});
            for (std::size_t j = 0; j < x.size(); ++j) row[j + 1] = x[j];
            sink(row);
            sum.outputs = 1;
            sum.bases = 1;
        } else {
            const AffineMap lift = red.lift;
            const RowLift<BigRat> liftRow = [&lift](const Vec<BigRat>& y) {
                const Vec<BigRat> x = lift.lift(y);
                Vec<BigRat> row(x.size() + 1);
                row[0] = 1;
                for (std::size_t j = 0; j < x.size(); ++j) row[j + 1] = x[j];
                return row;
            };
            detail::run_vertex_enumeration(red.reduced.rows, opts, liftRow, sink, sum, limits);
        }
    } else {
        const PolarProblem polar = polar_of_points(input);
        const Vec<BigRat> center = polar.center;
        const RowLift<BigRat> liftRow = [&center](const Vec<BigRat>& y) {
            return facet_row_of(y, center);
        };
        detail::run_vertex_enumeration(polar.hrows, opts, liftRow, sink, sum, limits);
    }

    sum.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sum;
}

/** Convert and materialize the output representation. */
inline Representation convert_collect(const Representation& input, const ConversionOptions& opts,
                                      ConversionSummary* summaryOut = nullptr) {
    std::vector<Vec<BigRat>> rows;
    const RowSink sink = [&](const Vec<BigRat>& r) { rows.push_back(r); };
    ConversionSummary sum = convert(input, opts, sink);
    if (summaryOut) *summaryOut = sum;
    Matrix<BigRat> mat(rows.size(), input.n());
    for (std::size_t i = 0; i < rows.size(); ++i) mat.set_row(i, rows[i]);
    return make_representation(input.kind == ReprKind::H ? ReprKind::V : ReprKind::H, input.name,
                               std::move(mat));
}

struct DegeneracyReport {
    std::uint64_t basesSeen = 0;
    std::uint64_t outputsSeen = 0;
    double ratio = 0; // bases per output over the probed prefix
};

/**
 * Probe the degeneracy of an instance: run the reverse search for at
 * most `stopAfterBases` dictionaries and report the bases-per-output
 * ratio seen so far.  A ratio near 1 indicates a simple polytope (the
 * pivoting engine's best case); large ratios indicate heavy degeneracy,
 * where many dictionaries share one output and the double description
 * engine usually wins.
 */
inline DegeneracyReport degeneracy_report(const Representation& input,
                                          std::uint64_t stopAfterBases,
                                          ArithmeticMode arith = ArithmeticMode::Hybrid) {
    if (stopAfterBases == 0) throw std::invalid_argument("degeneracy_report: zero probe budget");
    ConversionOptions opts;
    opts.engine = Engine::ReverseSearch;
    opts.arith = arith;
    opts.budget.maxNodes = stopAfterBases;
    ConversionSummary sum;
    const RowSink discard = [](const Vec<BigRat>&) {};
    sum = convert(input, opts, discard);
    DegeneracyReport rep;
    rep.basesSeen = sum.bases;
    rep.outputsSeen = sum.outputs;
    rep.ratio = static_cast<double>(sum.bases) /
                static_cast<double>(sum.outputs ? sum.outputs : 1);
    return rep;
}

/** Engine selection for automatic mode: probe, then threshold the ratio. */
inline Engine auto_engine(const Representation& input, std::uint64_t probeBases,
                          double ratioThreshold, ArithmeticMode arith = ArithmeticMode::Hybrid) {
    const DegeneracyReport rep = degeneracy_report(input, probeBases, arith);
    return rep.ratio > ratioThreshold ? Engine::DoubleDescription : Engine::ReverseSearch;
}

} // namespace polyenum
