#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "polyenum/matrix.hpp"

namespace polyenum {

enum class ReprKind { H, V };

/**
 * A polyhedron description in matrix form.
 *
 * H-representation: each row (a0, a1, ..., ad) encodes the inequality
 * a0 + a1 x1 + ... + ad xd >= 0; rows listed in `linearity` (1-based
 * indices into the row list) hold with equality instead.
 *
 * V-representation: each row is (1, v1, ..., vd) for a point or
 * (0, w1, ..., wd) for a ray direction.
 */
struct Representation {
    ReprKind kind = ReprKind::H;
    std::string name;
    Matrix<BigRat> rows;          // m x n, n = dimension + 1
    std::set<std::size_t> linearity; // 1-based row indices

    std::size_t m() const noexcept { return rows.rows(); }
    std::size_t n() const noexcept { return rows.cols(); }
    std::size_t dim() const noexcept { return rows.cols() == 0 ? 0 : rows.cols() - 1; }
};

struct Diagnostics {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const noexcept { return errors.empty(); }
};

inline Representation make_representation(ReprKind kind, std::string name,
                                          Matrix<BigRat> rows,
                                          std::set<std::size_t> linearity = {}) {
    Representation r;
    r.kind = kind;
    r.name = std::move(name);
    r.rows = std::move(rows);
    r.linearity = std::move(linearity);
    return r;
}

/** Lexicographic comparison of rational rows. */
inline bool row_less(const Vec<BigRat>& a, const Vec<BigRat>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/**
 * Scale a row to coprime integers, preserving its sign.  Zero rows are
 * returned unchanged.  Used to canonicalize facet output.
 */
inline Vec<BigRat> primitive_row(const Vec<BigRat>& row) {
    BigInt l = 1;
    for (const BigRat& x : row) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    BigInt g = 0;
    Vec<BigInt> ints;
    ints.reserve(row.size());
    for (const BigRat& x : row) {
        const BigRat v = x * BigRat(l);
        ints.push_back(boost::multiprecision::numerator(v));
        g = boost::multiprecision::gcd(g, ints.back());
    }
    if (g == 0) return row;
    Vec<BigRat> out;
    out.reserve(row.size());
    for (const BigInt& v : ints) out.push_back(BigRat(v / g));
    return out;
}

/**
 * Structural checks shared by both kinds plus kind-specific rules.
 * Violations that make the data unusable land in errors; recoverable
 * oddities (duplicate rows) land in warnings.
 */
inline Diagnostics validate(const Representation& r) {
    Diagnostics d;
    if (r.n() < 2) {
        d.errors.push_back("column count must be at least 2 (one coordinate plus the leading column)");
        return d;
    }
    if (r.m() < 1) {
        d.errors.push_back("row count must be at least 1");
        return d;
    }
    for (std::size_t idx : r.linearity) {
        if (idx < 1 || idx > r.m())
            d.errors.push_back("linearity index " + std::to_string(idx) + " out of range 1.." +
                               std::to_string(r.m()));
    }
    if (r.kind == ReprKind::V) {
        bool sawPoint = false;
        for (std::size_t i = 0; i < r.m(); ++i) {
            const BigRat& lead = r.rows(i, 0);
            if (lead != 0 && lead != 1) {
                d.errors.push_back("row " + std::to_string(i + 1) +
                                   ": leading entry of a V-representation row must be 0 or 1");
            }
            if (lead == 1) sawPoint = true;
        }
        if (!sawPoint) d.errors.push_back("V-representation contains no point row (leading entry 1)");
    }
    std::vector<std::size_t> order(r.m());
    for (std::size_t i = 0; i < r.m(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return row_less(r.rows.row(a), r.rows.row(b));
    });
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (r.rows.row(order[k - 1]) == r.rows.row(order[k])) {
            d.warnings.push_back("rows " + std::to_string(order[k - 1] + 1) + " and " +
                                 std::to_string(order[k] + 1) + " are identical");
        }
    }
    return d;
}

} // namespace polyenum
