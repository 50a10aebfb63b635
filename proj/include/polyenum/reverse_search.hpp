#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>

#include "polyenum/dictionary.hpp"

namespace polyenum {

/**
 * Node and depth caps for a single traversal.  maxDepth counts edges
 * below the starting dictionary: with maxDepth = k, nodes at relative
 * depth k are not visited but returned as unexplored subtree roots, so
 * maxDepth = 0 turns the whole call into "hand back the start node".
 * When maxNodes dictionaries have been visited, every further would-be
 * child is likewise handed back unexplored.
 */
struct Budget {
    std::optional<std::uint64_t> maxNodes;
    std::optional<std::uint64_t> maxDepth;
};

/** A tree node by cobasis; depth is absolute (root of the full tree = 0). */
struct CobasisRecord {
    std::vector<int> cobasis;
    long depth = 0;
    bool emitsOutput = false; // false for unexplored records: not yet known
};

template <class R>
struct EnumerationResult {
    std::vector<Vec<R>> outputs;          // collected only when no sink is given
    std::uint64_t outputCount = 0;
    std::uint64_t bases = 0;              // dictionaries visited
    long maxDepthSeen = 0;                // absolute depth
    std::vector<CobasisRecord> unexplored; // subtree roots cut off by the budget
};

/** Cooperative cancellation: a stop flag and an optional wall-clock deadline. */
struct RunLimits {
    const std::atomic<bool>* stop = nullptr;
    std::optional<std::chrono::steady_clock::time_point> deadline;

    void check() const {
        if (stop && stop->load(std::memory_order_relaxed))
            throw TimeoutError("run cancelled");
        if (deadline && std::chrono::steady_clock::now() > *deadline)
            throw TimeoutError("time limit exceeded");
    }
};

/**
 * Depth-first reverse search from the dictionary D (taken by value as
 * the working copy).  Every visited dictionary counts toward `bases`;
 * the vertex is reported for those passing the lexicographic minimality
 * rule, so on nondegenerate input outputs == bases.  The traversal
 * pivots in place and never stores more than one dictionary; the stack
 * keeps cobasis snapshots only.
 */
template <class R>
EnumerationResult<R> enumerate(const PivotSystem<R>& sys, Dictionary<R> D, const Budget& budget,
                               const std::function<void(const Vec<R>&)>* sink = nullptr,
                               const RunLimits* limits = nullptr) {
    EnumerationResult<R> res;
    const std::uint64_t maxNodes = budget.maxNodes.value_or(UINT64_MAX);
    const std::uint64_t maxDepth = budget.maxDepth.value_or(UINT64_MAX);
    const long startDepth = D.depth;

    if (maxDepth == 0 || maxNodes == 0) {
        res.unexplored.push_back({D.cobasic, D.depth, false});
        return res;
    }

    auto visit = [&](const Dictionary<R>& node) {
        ++res.bases;
        if (node.depth > res.maxDepthSeen) res.maxDepthSeen = node.depth;
        if (emits_output(node)) {
            ++res.outputCount;
            if (sink)
                (*sink)(vertex_of(node));
            else
                res.outputs.push_back(vertex_of(node));
        }
    };
    res.maxDepthSeen = startDepth;
    visit(D);

    struct Frame {
        std::vector<int> snapshot; // cobasis of this node
        std::size_t idx = 0;       // next snapshot position to try
        int enteredVar = -1;       // pivot that descended into this node
        int leftVar = -1;
    };
    std::vector<Frame> stack;
    stack.push_back({D.cobasic, 0, -1, -1});

    while (!stack.empty()) {
        Frame& f = stack.back();
        if (limits) limits->check();
        if (f.idx == f.snapshot.size()) {
            if (f.enteredVar >= 0) {
                pivot(D, f.leftVar, f.enteredVar);
                --D.depth;
            }
            stack.pop_back();
            continue;
        }
        const int v = f.snapshot[f.idx++];
        const int u = lex_ratio(D, v);
        pivot(D, v, u);
        if (first_improving(D, sys.rootCobasis) == u) {
            const long childDepth = D.depth + 1;
            if (static_cast<std::uint64_t>(childDepth - startDepth) >= maxDepth || res.bases >= maxNodes) {
                res.unexplored.push_back({D.cobasic, childDepth, false});
                pivot(D, u, v);
            } else {
                D.depth = childDepth;
                visit(D);
                stack.push_back({D.cobasic, 0, v, u});
            }
        } else {
            pivot(D, u, v);
        }
    }
    return res;
}

template <class R>
EnumerationResult<R> enumerate(const PivotSystem<R>& sys, const Budget& budget,
                               const std::function<void(const Vec<R>&)>* sink = nullptr,
                               const RunLimits* limits = nullptr) {
    return enumerate(sys, sys.root, budget, sink, limits);
}

/** Deterministic 64-bit generator (splitmix64), stable across platforms. */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /** Uniform value in [0, n), n >= 1, by 128-bit multiply. */
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

/**
 * One random root-to-leaf walk for tree size estimation.  At each node
 * with c > 0 children one child is chosen by `chooser(c)`; the running
 * product of child counts is an unbiased estimate of the number of
 * nodes (respectively outputs) at each level, and their sum estimates
 * the tree total.  Returns (node estimate, output estimate) exactly.
 */
template <class R, class Chooser>
std::pair<BigRat, BigRat> probe_walk(const PivotSystem<R>& sys, Chooser&& chooser) {
    Dictionary<R> D = sys.root;
    BigRat nodes(1);
    BigRat outputs(emits_output(D) ? 1 : 0);
    BigRat weight(1);
    for (;;) {
        auto children = reverse_children(sys, D);
        if (children.empty()) break;
        const std::size_t pick = chooser(children.size());
        weight *= BigRat(static_cast<long>(children.size()));
        pivot(D, children[pick].first, children[pick].second);
        ++D.depth;
        nodes += weight;
        if (emits_output(D)) outputs += weight;
    }
    return {nodes, outputs};
}

struct EstimateReport {
    double estBases = 0;
    double estOutputs = 0;
    double sampleVariance = 0; // of the per-probe basis estimates
    std::uint64_t probes = 0;
};

/** Monte Carlo tree size estimate: mean of independent probe walks. */
template <class R>
EstimateReport estimate(const PivotSystem<R>& sys, std::uint64_t probes, std::uint64_t seed) {
    if (probes == 0) throw std::invalid_argument("estimate requires at least one probe");
    SplitMix64 rng(seed);
    std::vector<double> basisEstimates;
    basisEstimates.reserve(probes);
    BigRat sumBases(0), sumOutputs(0);
    for (std::uint64_t p = 0; p < probes; ++p) {
        auto [nb, no] = probe_walk(sys, [&](std::size_t c) { return static_cast<std::size_t>(rng.below(c)); });
        sumBases += nb;
        sumOutputs += no;
        basisEstimates.push_back(to_double(nb));
    }
    EstimateReport rep;
    rep.probes = probes;
    rep.estBases = to_double(sumBases) / static_cast<double>(probes);
    rep.estOutputs = to_double(sumOutputs) / static_cast<double>(probes);
    if (probes > 1) {
        double var = 0;
        for (double x : basisEstimates) var += (x - rep.estBases) * (x - rep.estBases);
        rep.sampleVariance = var / static_cast<double>(probes - 1);
    }
    return rep;
}

} // namespace polyenum
