#pragma once

#include "polyenum/representation.hpp"

namespace polyenum {

/**
 * Facet enumeration via the polar polytope.
 *
 * Given points v_1..v_m whose hull is full-dimensional, translate by an
 * interior point z (the vertex centroid) and polarize: the polar body
 * {y : 1 + (v_i - z) . y >= 0 for all i} is again a polytope, and its
 * vertices correspond one-to-one to the facets of the hull.  Writing the
 * defining constraint as (1 - z . y) + v_i . y >= 0 shows that a vertex
 * y of the polar yields the valid facet inequality
 *
 *   (1 - y . z) + y . x >= 0,
 *
 * tight exactly on the points whose polar rows are tight at y; it is
 * reported as a primitive integer row.
 */
struct PolarProblem {
    Matrix<BigRat> hrows;  // m x (d+1): rows (1, v_i - z)
    Vec<BigRat> center;    // z
};

/**
 * Build the polar H-system of a V-representation.  Requires every row
 * to be a point (leading entry 1) and the hull to be full-dimensional;
 * otherwise the facet description is not unique and the conversion is
 * refused.
 */
inline PolarProblem polar_of_points(const Representation& vrep) {
    if (vrep.kind != ReprKind::V)
        throw std::invalid_argument("polar_of_points expects a V-representation");
    const std::size_t m = vrep.m();
    const std::size_t d = vrep.dim();
    for (std::size_t i = 0; i < m; ++i)
        if (vrep.rows(i, 0) != 1)
            throw ValidationError("row " + std::to_string(i + 1) +
                                  ": rays are outside the polytope scope of this toolkit");
    if (!vrep.linearity.empty())
        throw ValidationError("linearity rows are not meaningful in a point list");
    if (m < d + 1 || rank(vrep.rows) != d + 1)
        throw ValidationError("input points do not span a full-dimensional polytope");

    PolarProblem p;
    p.center = Vec<BigRat>(d, BigRat(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < d; ++j) p.center[j] += vrep.rows(i, j + 1);
    const BigRat inv = BigRat(1) / BigRat(static_cast<long>(m));
    for (std::size_t j = 0; j < d; ++j) p.center[j] *= inv;

    p.hrows = Matrix<BigRat>(m, d + 1);
    for (std::size_t i = 0; i < m; ++i) {
        p.hrows(i, 0) = 1;
        for (std::size_t j = 0; j < d; ++j) p.hrows(i, j + 1) = vrep.rows(i, j + 1) - p.center[j];
    }
    return p;
}

/** Map a polar vertex back to a canonical facet row of the original hull. */
inline Vec<BigRat> facet_row_of(const Vec<BigRat>& y, const Vec<BigRat>& center) {
    const std::size_t d = center.size();
    Vec<BigRat> row(d + 1);
    row[0] = 1;
    for (std::size_t j = 0; j < d; ++j) {
        row[0] -= y[j] * center[j];
        row[j + 1] = y[j];
    }
    return primitive_row(row);
}

} // namespace polyenum
