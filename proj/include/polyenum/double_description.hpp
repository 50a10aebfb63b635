#pragma once

#include <cstdint>
#include <numeric>

#include <boost/dynamic_bitset.hpp>

#include "polyenum/matrix.hpp"
#include "polyenum/representation.hpp"
#include "polyenum/reverse_search.hpp"

namespace polyenum {

/**
 * Halfspace insertion order for the double description engine.  The
 * order can change intermediate generator counts by orders of magnitude
 * but never the final set.
 */
struct InsertionOrder {
    enum class Kind { AsGiven, LexMin, MaxCutoff, Random };
    Kind kind = Kind::AsGiven;
    std::uint64_t seed = 0;
};

/**
 * Incremental double description over the homogenization cone.
 *
 * H-rows (a0, a) lift to cone constraints (a0, a) . (x0, x) >= 0
 * together with the implicit homogenizing constraint x0 >= 0 (slot 0 of
 * the processed list).  The engine maintains the extreme rays of the
 * cone cut out by the processed constraints; each new constraint keeps
 * the nonnegative rays and replaces the crossing edges (adjacent
 * positive/negative ray pairs) by their intersections with the new
 * hyperplane.  When every input row has been processed, rays with
 * positive x0 scale to the vertices of the polytope; a surviving ray
 * with x0 = 0 certifies unboundedness.
 *
 * Arbitrary precision arithmetic only: intermediate generator
 * coordinates are quotients of minors with no useful 64-bit bound.
 */
struct DDState {
    struct Generator {
        Vec<BigRat> coords;                 // homogeneous, size d+1, canonical scale
        boost::dynamic_bitset<> incidence;  // bit t: tight on processed[t]
    };

    std::size_t d = 0;
    std::vector<Vec<BigRat>> processed;     // slot 0: homogenizing row (1, 0, ..., 0)
    std::vector<Generator> gens;
};

namespace detail {

/** Scale to x0 = 1 when possible, else to primitive integers. */
inline void canonicalize_generator(Vec<BigRat>& g) {
    if (sign_of(g[0]) != 0) {
        const BigRat f = BigRat(1) / g[0];
        for (BigRat& x : g) x *= f;
        return;
    }
    g = primitive_row(g);
}

inline BigRat dot(const Vec<BigRat>& row, const Vec<BigRat>& g) {
    BigRat s(0);
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * g[j];
    return s;
}

/** Exact incidence of a generator against every processed row. */
inline boost::dynamic_bitset<> incidence_of(const DDState& S, const Vec<BigRat>& g) {
    boost::dynamic_bitset<> inc(S.processed.size());
    for (std::size_t t = 0; t < S.processed.size(); ++t)
        if (sign_of(dot(S.processed[t], g)) == 0) inc.set(t);
    return inc;
}

} // namespace detail

/**
 * Two extreme rays are adjacent iff the constraints tight on both span
 * a subspace of rank exactly d - 1, two less than the cone dimension
 * d + 1.  The popcount of the shared incidence set gives a cheap
 * necessary condition checked before the rank computation.
 */
inline bool adjacency_test(const DDState& S, std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("adjacency_test: identical generators");
    const auto common = S.gens[i].incidence & S.gens[j].incidence;
    if (common.count() + 1 < S.d) return false;
    Matrix<BigRat> sub(common.count(), S.d + 1);
    std::size_t r = 0;
    for (std::size_t t = common.find_first(); t != boost::dynamic_bitset<>::npos;
         t = common.find_next(t)) {
        for (std::size_t c = 0; c <= S.d; ++c) sub(r, c) = S.processed[t][c];
        ++r;
    }
    return rank(sub) == S.d - 1;
}

/**
 * Seed the state: the homogenizing row plus the first d rows of `order`
 * (skipping dependent ones) whose coefficient parts are linearly
 * independent form a simplicial cone; its extreme rays are the columns
 * of the inverse constraint matrix.  Indices actually consumed are
 * reported through `used`.  Throws UnboundedError when fewer than d
 * independent rows exist, because the cone then contains a line.
 */
inline DDState dd_init(const Matrix<BigRat>& hrows, const std::vector<std::size_t>& order,
                       std::vector<std::size_t>& used) {
    DDState S;
    if (hrows.cols() < 2) throw std::invalid_argument("dd_init: need at least one coordinate");
    S.d = hrows.cols() - 1;
    std::vector<Vec<BigRat>> picked;
    used.clear();
    for (std::size_t idx : order) {
        if (picked.size() == S.d) break;
        Matrix<BigRat> trial(picked.size() + 1, S.d);
        for (std::size_t r = 0; r < picked.size(); ++r)
            for (std::size_t c = 0; c < S.d; ++c) trial(r, c) = picked[r][c + 1];
        for (std::size_t c = 0; c < S.d; ++c) trial(picked.size(), c) = hrows(idx, c + 1);
        if (rank(trial) == picked.size() + 1) {
            picked.push_back(hrows.row(idx));
            used.push_back(idx);
        }
    }
    if (picked.size() < S.d)
        throw UnboundedError("coefficient rows are rank deficient; the region contains a line");

    Matrix<BigRat> M(S.d + 1, S.d + 1);
    M(0, 0) = 1; // homogenizing row
    for (std::size_t r = 0; r < S.d; ++r)
        for (std::size_t c = 0; c <= S.d; ++c) M(r + 1, c) = picked[r][c];
    auto inv = inverse(M);
    if (!inv) throw InternalError("dd_init: chosen rows unexpectedly singular");

    S.processed.push_back(Vec<BigRat>(S.d + 1, BigRat(0)));
    S.processed[0][0] = 1;
    for (const auto& row : picked) S.processed.push_back(row);

    for (std::size_t k = 0; k <= S.d; ++k) {
        DDState::Generator g;
        g.coords.resize(S.d + 1);
        for (std::size_t r = 0; r <= S.d; ++r) g.coords[r] = (*inv)(r, k);
        detail::canonicalize_generator(g.coords);
        g.incidence = detail::incidence_of(S, g.coords);
        S.gens.push_back(std::move(g));
    }
    return S;
}

/**
 * Cut the current cone with one more halfspace.  Survivors keep their
 * generators; each adjacent (positive, negative) pair contributes the
 * intersection of its edge with the new hyperplane.  Throws
 * InfeasibleError when every generator lies strictly outside and
 * ResourceCapError when the generator count would exceed generatorCap
 * (0 disables the cap).
 */
inline void insert_halfspace(DDState& S, const Vec<BigRat>& row,
                             std::uint64_t generatorCap = 0, const RunLimits* limits = nullptr) {
    if (row.size() != S.d + 1) throw std::invalid_argument("insert_halfspace: row size mismatch");
    std::vector<std::size_t> pos, neg, zero;
    std::vector<BigRat> val(S.gens.size());
    for (std::size_t g = 0; g < S.gens.size(); ++g) {
        val[g] = detail::dot(row, S.gens[g].coords);
        const int s = sign_of(val[g]);
        if (s > 0)
            pos.push_back(g);
        else if (s < 0)
            neg.push_back(g);
        else
            zero.push_back(g);
    }
    if (pos.empty() && zero.empty()) throw InfeasibleError("feasible region is empty");

    std::vector<Vec<BigRat>> bornCoords;
    for (std::size_t p : pos) {
        if (limits) limits->check();
        for (std::size_t q : neg) {
            if (!adjacency_test(S, p, q)) continue;
            Vec<BigRat> g(S.d + 1);
            for (std::size_t c = 0; c <= S.d; ++c)
                g[c] = val[p] * S.gens[q].coords[c] - val[q] * S.gens[p].coords[c];
            detail::canonicalize_generator(g);
            bornCoords.push_back(std::move(g));
            if (generatorCap && pos.size() + zero.size() + bornCoords.size() > generatorCap)
                throw ResourceCapError("generator cap exceeded during double description");
        }
    }

    std::vector<DDState::Generator> next;
    next.reserve(pos.size() + zero.size() + bornCoords.size());
    for (std::size_t g : pos) {
        S.gens[g].incidence.push_back(false);
        next.push_back(std::move(S.gens[g]));
    }
    for (std::size_t g : zero) {
        S.gens[g].incidence.push_back(true);
        next.push_back(std::move(S.gens[g]));
    }
    S.processed.push_back(row);
    for (auto& coords : bornCoords) {
        DDState::Generator g;
        g.incidence = detail::incidence_of(S, coords); // exact, includes the new row
        g.coords = std::move(coords);
        next.push_back(std::move(g));
    }
    S.gens = std::move(next);
}

/**
 * Insertion order as a permutation of row indices.  MaxCutoff is
 * inherently dynamic (it depends on the evolving generator set), so it
 * is resolved by replaying the insertion: after seeding, repeatedly
 * pick the unprocessed row cutting off the most current generators,
 * ties to the smallest index.  The returned permutation always starts
 * with the seed rows.
 */
inline std::vector<std::size_t> choose_order(const Matrix<BigRat>& hrows, const InsertionOrder& order) {
    const std::size_t m = hrows.rows();
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t(0));
    switch (order.kind) {
        case InsertionOrder::Kind::AsGiven:
            return perm;
        case InsertionOrder::Kind::LexMin:
            std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
                return row_less(hrows.row(a), hrows.row(b));
            });
            return perm;
        case InsertionOrder::Kind::Random: {
            SplitMix64 rng(order.seed);
            for (std::size_t i = m; i > 1; --i)
                std::swap(perm[i - 1], perm[rng.below(i)]);
            return perm;
        }
        case InsertionOrder::Kind::MaxCutoff:
            break;
    }

    std::vector<std::size_t> used;
    DDState S = dd_init(hrows, perm, used);
    std::vector<bool> done(m, false);
    std::vector<std::size_t> result = used;
    for (std::size_t idx : used) done[idx] = true;
    while (result.size() < m) {
        std::size_t bestIdx = m;
        std::size_t bestCut = 0;
        for (std::size_t idx = 0; idx < m; ++idx) {
            if (done[idx]) continue;
            std::size_t cut = 0;
            for (const auto& g : S.gens)
                if (sign_of(detail::dot(hrows.row(idx), g.coords)) < 0) ++cut;
            if (bestIdx == m || cut > bestCut) {
                bestIdx = idx;
                bestCut = cut;
            }
        }
        insert_halfspace(S, hrows.row(bestIdx));
        done[bestIdx] = true;
        result.push_back(bestIdx);
    }
    return result;
}

template <class R>
struct DDResult {
    std::vector<Vec<R>> vertices; // reduced coordinates, one per extreme point
    std::size_t peakGenerators = 0;
};

/**
 * Full double description run on an H-system.  Returns the vertex set;
 * order of results follows the internal generator order and carries no
 * meaning.  Throws UnboundedError if a ray survives all insertions.
 */
inline DDResult<BigRat> dd_enumerate(const Matrix<BigRat>& hrows, const InsertionOrder& order = {},
                                     std::uint64_t generatorCap = 0,
                                     const RunLimits* limits = nullptr) {
    std::vector<std::size_t> perm = choose_order(hrows, order);
    std::vector<std::size_t> used;
    DDState S = dd_init(hrows, perm, used);
    std::vector<bool> done(hrows.rows(), false);
    for (std::size_t idx : used) done[idx] = true;
    DDResult<BigRat> res;
    res.peakGenerators = S.gens.size();
    for (std::size_t idx : perm) {
        if (done[idx]) continue;
        if (limits) limits->check();
        insert_halfspace(S, hrows.row(idx), generatorCap, limits);
        done[idx] = true;
        res.peakGenerators = std::max(res.peakGenerators, S.gens.size());
    }
    for (const auto& g : S.gens) {
        if (sign_of(g.coords[0]) == 0)
            throw UnboundedError("feasible region is unbounded");
        Vec<BigRat> x(S.d);
        for (std::size_t j = 0; j < S.d; ++j) x[j] = g.coords[j + 1]; // x0 already 1
        res.vertices.push_back(std::move(x));
    }
    return res;
}

} // namespace polyenum
