#pragma once

#include "polyenum/representation.hpp"

namespace polyenum {

/** Binomial coefficient, exact; zero when k < 0 or k > n. */
inline BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

/**
 * Maximum number of vertices of a polytope with m facets in dimension
 * n - 1 (equivalently facets from m vertices), by the upper bound
 * theorem for the cyclic polytope:
 *
 *   f(m, n) = C(m - floor(n/2), m - n + 1) + C(m - floor((n+1)/2), m - n + 1)
 *
 * where n counts homogeneous coordinates (dimension + 1).
 */
inline BigInt ubt_bound(std::size_t m, std::size_t n) {
    if (n < 2 || m < n) throw std::invalid_argument("ubt_bound requires m >= n >= 2");
    const long M = static_cast<long>(m), N = static_cast<long>(n);
    return binomial(M - N / 2, M - N + 1) + binomial(M - (N + 1) / 2, M - N + 1);
}

/**
 * Cyclic polytope: m points on the moment curve t -> (t, t^2, ..., t^d)
 * at t = 1..m, as a V-representation.  Maximizes the number of facets
 * for the given m and d, and every input point is a vertex.
 */
inline Representation cyclic(std::size_t m, std::size_t d) {
    if (d < 2 || m < d + 1) throw std::invalid_argument("cyclic requires m >= d+1, d >= 2");
    Matrix<BigRat> rows(m, d + 1);
    for (std::size_t i = 0; i < m; ++i) {
        rows(i, 0) = 1;
        BigInt p = 1;
        for (std::size_t j = 1; j <= d; ++j) {
            p *= static_cast<long>(i + 1);
            rows(i, j) = BigRat(p);
        }
    }
    return make_representation(ReprKind::V, "cyclic_" + std::to_string(m) + "_" + std::to_string(d),
                               std::move(rows));
}

/**
 * Permutahedron on N symbols as an H-representation in R^N: for every
 * proper nonempty S subset of {1..N}, sum_{i in S} x_i >= sum of the
 * |S| smallest values 1..|S|, together with the equation
 * sum x_i = N(N+1)/2 (row 1, a linearity).  Vertices are the N!
 * permutations of (1, ..., N); the polytope is simple of dimension N-1.
 */
inline Representation permutahedron(std::size_t N) {
    if (N < 2 || N > 20) throw std::invalid_argument("permutahedron requires 2 <= N <= 20");
    const std::size_t subsets = (std::size_t(1) << N) - 2;
    Matrix<BigRat> rows(subsets + 1, N + 1);
    rows(0, 0) = -BigRat(static_cast<long>(N * (N + 1) / 2));
    for (std::size_t j = 1; j <= N; ++j) rows(0, j) = 1;
    for (std::size_t mask = 1; mask <= subsets; ++mask) {
        const std::size_t r = mask; // row index: equation occupies row 0
        std::size_t size = 0;
        for (std::size_t j = 0; j < N; ++j)
            if (mask & (std::size_t(1) << j)) ++size;
        rows(r, 0) = -BigRat(static_cast<long>(size * (size + 1) / 2));
        for (std::size_t j = 0; j < N; ++j)
            if (mask & (std::size_t(1) << j)) rows(r, j + 1) = 1;
    }
    return make_representation(ReprKind::H, "perm" + std::to_string(N), std::move(rows), {1});
}

/**
 * Cut polytope of the complete graph K_N as a V-representation: one row
 * per subset S of {2..N}; the coordinates are indexed by edges (i, j),
 * i < j, in lexicographic order, with entry 1 exactly when the edge
 * crosses the cut (S, complement).  Vertex 1 always stays outside S, so
 * the 2^(N-1) cut vectors are pairwise distinct.  Highly degenerate in
 * the vertex-enumeration direction of its facet description.
 */
inline Representation cut_vectors(std::size_t N) {
    if (N < 2 || N > 8) throw std::invalid_argument("cut_vectors requires 2 <= N <= 8");
    const std::size_t edges = N * (N - 1) / 2;
    const std::size_t count = std::size_t(1) << (N - 1);
    Matrix<BigRat> rows(count, edges + 1);
    for (std::size_t mask = 0; mask < count; ++mask) {
        rows(mask, 0) = 1;
        auto inS = [&](std::size_t v) { // vertices numbered 1..N; S subset of {2..N}
            return v >= 2 && (mask & (std::size_t(1) << (v - 2))) != 0;
        };
        std::size_t col = 1;
        for (std::size_t i = 1; i <= N; ++i)
            for (std::size_t j = i + 1; j <= N; ++j, ++col)
                rows(mask, col) = (inS(i) != inS(j)) ? 1 : 0;
    }
    return make_representation(ReprKind::V, "cut" + std::to_string(N), std::move(rows));
}

/** Unit hypercube [0,1]^d: rows x_i >= 0 then 1 - x_i >= 0. */
inline Representation hypercube(std::size_t d) {
    if (d < 1) throw std::invalid_argument("hypercube requires d >= 1");
    Matrix<BigRat> rows(2 * d, d + 1);
    for (std::size_t i = 0; i < d; ++i) rows(i, i + 1) = 1;
    for (std::size_t i = 0; i < d; ++i) {
        rows(d + i, 0) = 1;
        rows(d + i, i + 1) = -1;
    }
    return make_representation(ReprKind::H, "cube" + std::to_string(d), std::move(rows));
}

/** Cross-polytope conv{+-e_i} as a V-representation: rows (1, e_i), (1, -e_i). */
inline Representation cross_polytope(std::size_t d) {
    if (d < 1) throw std::invalid_argument("cross_polytope requires d >= 1");
    Matrix<BigRat> rows(2 * d, d + 1);
    for (std::size_t i = 0; i < d; ++i) {
        rows(2 * i, 0) = 1;
        rows(2 * i, i + 1) = 1;
        rows(2 * i + 1, 0) = 1;
        rows(2 * i + 1, i + 1) = -1;
    }
    return make_representation(ReprKind::V, "cross" + std::to_string(d), std::move(rows));
}

} // namespace polyenum
