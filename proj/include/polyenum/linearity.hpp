#pragma once

#include "polyenum/representation.hpp"

namespace polyenum {

/**
 * Affine embedding x = offset + basis * y of the reduced coordinate
 * space back into the original one.  basis is dim x reducedDim.
 */
struct AffineMap {
    Vec<BigRat> offset;
    Matrix<BigRat> basis;

    std::size_t dim() const noexcept { return offset.size(); }
    std::size_t reduced_dim() const noexcept { return basis.cols(); }

    Vec<BigRat> lift(const Vec<BigRat>& y) const {
        Vec<BigRat> x = offset;
        for (std::size_t i = 0; i < basis.rows(); ++i)
            for (std::size_t j = 0; j < basis.cols(); ++j) x[i] += basis(i, j) * y[j];
        return x;
    }
};

struct LinearityReduction {
    Representation reduced; // H-representation without linearity rows
    AffineMap lift;
    Diagnostics notes;
};

/**
 * Substitute the equality rows out of an H-representation.
 *
 * The equalities a0 + a.x = 0 are solved by reduced row echelon form;
 * pivot variables are expressed through the free ones, inequalities are
 * rewritten over the free variables, and the affine map reconstructs
 * original coordinates from reduced ones.  A reduced dimension of zero
 * means the equalities pin x completely; the reduced system then has one
 * constant column whose feasibility decides the whole problem.
 *
 * Throws InfeasibleError when the equality system is inconsistent.
 */
inline LinearityReduction eliminate_linearities(const Representation& rep) {
    if (rep.kind != ReprKind::H)
        throw std::invalid_argument("eliminate_linearities expects an H-representation");
    const std::size_t d = rep.dim();

    LinearityReduction out;
    if (rep.linearity.empty()) {
        out.reduced = rep;
        out.lift.offset = Vec<BigRat>(d, BigRat(0));
        out.lift.basis = Matrix<BigRat>::identity(d);
        return out;
    }

    // Equality system A x = -b over the coordinate part, RREF'd with the
    // constant column carried on the right.
    const std::size_t k = rep.linearity.size();
    Matrix<BigRat> eq(k, d + 1);
    std::size_t r = 0;
    for (std::size_t idx : rep.linearity) {
        for (std::size_t j = 0; j < d; ++j) eq(r, j) = rep.rows(idx - 1, j + 1);
        eq(r, d) = -rep.rows(idx - 1, 0);
        ++r;
    }
    Rref<BigRat> red = rref(std::move(eq));

    std::size_t pivotRows = red.pivotCols.size();
    if (pivotRows > 0 && red.pivotCols.back() == d)
        throw InfeasibleError("inconsistent linearity rows (0 = nonzero)");
    if (pivotRows < k)
        out.notes.warnings.push_back("dropped " + std::to_string(k - pivotRows) +
                                     " dependent linearity row(s)");

    std::vector<bool> isPivot(d, false);
    for (std::size_t c : red.pivotCols) isPivot[c] = true;
    std::vector<std::size_t> freeCols;
    for (std::size_t j = 0; j < d; ++j)
        if (!isPivot[j]) freeCols.push_back(j);
    const std::size_t rd = freeCols.size();

    // Particular solution: free variables zero, pivot variables from the
    // constant column.  Null space basis vector t: 1 at free column t,
    // minus the RREF coefficient at each pivot column.
    out.lift.offset = Vec<BigRat>(d, BigRat(0));
    out.lift.basis = Matrix<BigRat>(d, rd);
    for (std::size_t p = 0; p < pivotRows; ++p) {
        out.lift.offset[red.pivotCols[p]] = red.mat(p, d);
        for (std::size_t t = 0; t < rd; ++t)
            out.lift.basis(red.pivotCols[p], t) = -red.mat(p, freeCols[t]);
    }
    for (std::size_t t = 0; t < rd; ++t) out.lift.basis(freeCols[t], t) = BigRat(1);

    // Rewrite inequalities over the free variables.
    std::size_t ineq = rep.m() - k;
    Matrix<BigRat> rows(ineq, rd + 1);
    std::size_t outRow = 0;
    for (std::size_t i = 0; i < rep.m(); ++i) {
        if (rep.linearity.count(i + 1)) continue;
        BigRat c0 = rep.rows(i, 0);
        for (std::size_t j = 0; j < d; ++j) c0 += rep.rows(i, j + 1) * out.lift.offset[j];
        rows(outRow, 0) = c0;
        for (std::size_t t = 0; t < rd; ++t) {
            BigRat c = 0;
            for (std::size_t j = 0; j < d; ++j) c += rep.rows(i, j + 1) * out.lift.basis(j, t);
            rows(outRow, t + 1) = c;
        }
        ++outRow;
    }

    out.reduced = make_representation(ReprKind::H, rep.name, std::move(rows));
    return out;
}

} // namespace polyenum
