#pragma once

#include <vector>

#include "polyenum/matrix.hpp"

namespace polyenum {

/**
 * Simplex dictionaries over the slack variables of an H-representation.
 *
 * For rows a_i0 + a_i . x >= 0, i = 0..m-1, introduce slack s_i =
 * a_i0 + a_i . x.  A cobasis is a set C of d = dim slack indices whose
 * coefficient rows are linearly independent; setting s_C = 0 determines
 * x, and every other variable is an affine function of s_C:
 *
 *   v = beta_v + sum_{j in C} G[v][j] * s_j.
 *
 * The tableau stores these expressions: one row per basic slack (sorted
 * by index), then one row per decision variable x_t, columns ordered as
 * (constant, cobasic slacks sorted by index).
 *
 * Degeneracy is resolved by the standard lexicographic perturbation
 * b_i -> b_i + eps^(i+1), applied implicitly: the perturbed value of a
 * basic variable i is the vector
 *
 *   L_i = (beta_i; D_i1, ..., D_im),  D_ij = [j == i] - [j in C] G[i][j],
 *
 * ordered lexicographically.  Under this perturbation every feasible
 * dictionary is a distinct vertex of the perturbed polytope, ratio test
 * ties disappear, and bases visited by the search are exactly the
 * lexicographically feasible ones (all L_i > 0).
 */
template <class R>
struct Dictionary {
    std::vector<int> basic;   // sorted slack indices, size m - d
    std::vector<int> cobasic; // sorted slack indices, size d
    Matrix<R> tab;            // (basic.size() + d) x (1 + d)
    std::vector<int> rowOf;   // slack index -> tableau row, -1 if cobasic
    std::vector<int> colOf;   // slack index -> cobasic column, -1 if basic
    long depth = 0;           // node depth in the reverse search tree

    int slack_rows() const noexcept { return static_cast<int>(basic.size()); }
    int dim() const noexcept { return static_cast<int>(cobasic.size()); }
};

/** Prepared H-system: reduced rows plus the canonical root dictionary. */
template <class R>
struct PivotSystem {
    Matrix<R> rows; // m x (d+1), no linearity rows
    int m = 0;
    int d = 0;
    std::vector<int> rootCobasis; // sorted; fixes the search tree
    Dictionary<R> root;
};

namespace detail {

/**
 * Exchange the variable of tableau row l with the variable of column c
 * (both 0-based positions, column c excludes the constant).  Row l ends
 * up describing the old column variable; column c ends up labeled by the
 * old row variable.  Label bookkeeping is the caller's job.
 */
template <class R>
void pivot_tableau(Matrix<R>& tab, std::size_t l, std::size_t c) {
    const R p = tab(l, c + 1);
    if (sign_of(p) == 0) throw std::invalid_argument("pivot on zero tableau entry");
    const std::size_t cols = tab.cols();
    for (std::size_t j = 0; j < cols; ++j)
        if (j != c + 1) tab(l, j) = -tab(l, j) / p;
    tab(l, c + 1) = R(1) / p;
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        if (i == l) continue;
        const R f = tab(i, c + 1);
        if (sign_of(f) == 0) continue;
        for (std::size_t j = 0; j < cols; ++j)
            if (j != c + 1) tab(i, j) = tab(i, j) + f * tab(l, j);
        tab(i, c + 1) = f * tab(l, c + 1);
    }
}

/** Move tableau row `from` to position `to`, shifting the rows between. */
template <class R>
void rotate_row(Matrix<R>& tab, std::size_t from, std::size_t to) {
    if (from == to) return;
    Vec<R> tmp = tab.row(from);
    if (from < to) {
        for (std::size_t i = from; i < to; ++i) tab.set_row(i, tab.row(i + 1));
    } else {
        for (std::size_t i = from; i > to; --i) tab.set_row(i, tab.row(i - 1));
    }
    tab.set_row(to, tmp);
}

/** Move cobasic column `from` to position `to` (positions exclude the constant). */
template <class R>
void rotate_col(Matrix<R>& tab, std::size_t from, std::size_t to) {
    if (from == to) return;
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        R tmp = tab(i, from + 1);
        if (from < to) {
            for (std::size_t j = from; j < to; ++j) tab(i, j + 1) = tab(i, j + 2);
        } else {
            for (std::size_t j = from; j > to; --j) tab(i, j + 1) = tab(i, j);
        }
        tab(i, to + 1) = tmp;
    }
}

/** Insert position for `v` in sorted vector after removing position `at`. */
inline std::size_t sorted_target(const std::vector<int>& vec, std::size_t at, int v) {
    std::size_t t = 0;
    for (std::size_t i = 0; i < vec.size(); ++i) {
        if (i == at) continue;
        if (vec[i] < v) ++t;
    }
    return t;
}

} // namespace detail

/**
 * Exchange cobasic variable `enter` with basic slack `leave`, keeping
 * rows and columns sorted by slack index.  Exact inverse of itself with
 * the arguments swapped: pivot(pivot(D, e, l), l, e) == D.
 */
template <class R>
void pivot(Dictionary<R>& D, int enter, int leave) {
    if (enter < 0 || leave < 0 || enter >= static_cast<int>(D.colOf.size()) ||
        leave >= static_cast<int>(D.colOf.size()))
        throw std::invalid_argument("pivot: variable index out of range");
    const int c = D.colOf[enter];
    const int l = D.rowOf[leave];
    if (c < 0) throw std::invalid_argument("pivot: entering variable is not cobasic");
    if (l < 0 || l >= D.slack_rows()) throw std::invalid_argument("pivot: leaving variable is not a basic slack");

    detail::pivot_tableau(D.tab, static_cast<std::size_t>(l), static_cast<std::size_t>(c));

    const std::size_t rTo = detail::sorted_target(D.basic, static_cast<std::size_t>(l), enter);
    const std::size_t cTo = detail::sorted_target(D.cobasic, static_cast<std::size_t>(c), leave);
    detail::rotate_row(D.tab, static_cast<std::size_t>(l), rTo);
    detail::rotate_col(D.tab, static_cast<std::size_t>(c), cTo);
    D.basic.erase(D.basic.begin() + l);
    D.basic.insert(D.basic.begin() + static_cast<long>(rTo), enter);
    D.cobasic.erase(D.cobasic.begin() + c);
    D.cobasic.insert(D.cobasic.begin() + static_cast<long>(cTo), leave);
    for (std::size_t i = 0; i < D.basic.size(); ++i) D.rowOf[static_cast<std::size_t>(D.basic[i])] = static_cast<int>(i);
    for (std::size_t j = 0; j < D.cobasic.size(); ++j) D.colOf[static_cast<std::size_t>(D.cobasic[j])] = static_cast<int>(j);
    D.rowOf[enter] = static_cast<int>(rTo);
    D.colOf[enter] = -1;
    D.rowOf[leave] = -1;
    D.colOf[leave] = static_cast<int>(cTo);
}

namespace detail {

/**
 * Perturbation coefficient of eps^(q+1) in the value of basic row k:
 * [q == basic[k]] - [q cobasic] * G[k][q].
 */
template <class R>
R delta_entry(const Dictionary<R>& D, int k, int q) {
    R v(0);
    if (D.basic[static_cast<std::size_t>(k)] == q) v = R(1);
    const int c = D.colOf[static_cast<std::size_t>(q)];
    if (c >= 0) v = v - D.tab(static_cast<std::size_t>(k), static_cast<std::size_t>(c) + 1);
    return v;
}

/** Slack indices that can carry a nonzero perturbation entry for rows k1, k2. */
template <class R>
std::vector<int> relevant_positions(const Dictionary<R>& D, int k1, int k2) {
    std::vector<int> ids = D.cobasic;
    ids.push_back(D.basic[static_cast<std::size_t>(k1)]);
    if (k2 >= 0) ids.push_back(D.basic[static_cast<std::size_t>(k2)]);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

} // namespace detail

/**
 * Lexicographic ratio test: entering cobasic variable `enter` increases
 * from zero; among basic slack rows whose coefficient is negative, pick
 * the lexicographically smallest perturbed ratio L_k / (-G[k][enter]).
 * The perturbation makes the minimizer unique.  Throws UnboundedError
 * when no row blocks (the region is unbounded along this edge).
 */
template <class R>
int lex_ratio(const Dictionary<R>& D, int enter) {
    const int c = D.colOf[static_cast<std::size_t>(enter)];
    if (c < 0) throw std::invalid_argument("lex_ratio: entering variable is not cobasic");
    int best = -1;
    for (int k = 0; k < D.slack_rows(); ++k) {
        if (sign_of(D.tab(static_cast<std::size_t>(k), static_cast<std::size_t>(c) + 1)) >= 0) continue;
        if (best < 0) {
            best = k;
            continue;
        }
        // Compare ratio vectors of rows k and best without forming them:
        // cross-multiply component by component in position order.
        const R pk = -D.tab(static_cast<std::size_t>(k), static_cast<std::size_t>(c) + 1);
        const R pb = -D.tab(static_cast<std::size_t>(best), static_cast<std::size_t>(c) + 1);
        const R c0 = D.tab(static_cast<std::size_t>(k), 0) * pb - D.tab(static_cast<std::size_t>(best), 0) * pk;
        int cmp = sign_of(c0);
        if (cmp == 0) {
            for (int q : detail::relevant_positions(D, k, best)) {
                const R dk = detail::delta_entry(D, k, q);
                const R db = detail::delta_entry(D, best, q);
                cmp = sign_of(dk * pb - db * pk);
                if (cmp != 0) break;
            }
            if (cmp == 0) throw InternalError("lex_ratio: tie under perturbation");
        }
        if (cmp < 0) best = k;
    }
    if (best < 0) throw UnboundedError("feasible region is unbounded");
    return D.basic[static_cast<std::size_t>(best)];
}

/** True when every basic slack row has lexicographically positive value. */
template <class R>
bool lex_feasible(const Dictionary<R>& D) {
    for (int k = 0; k < D.slack_rows(); ++k) {
        const int s0 = sign_of(D.tab(static_cast<std::size_t>(k), 0));
        if (s0 > 0) continue;
        if (s0 < 0) return false;
        int sig = 0;
        for (int q : detail::relevant_positions(D, k, -1)) {
            sig = sign_of(detail::delta_entry(D, k, q));
            if (sig != 0) break;
        }
        if (sig <= 0) return false;
    }
    return true;
}

/**
 * Output rule: report the vertex of this dictionary exactly when the
 * cobasis is the one whose complement basis is lexicographically
 * minimal among all lex-feasible dictionaries of the same vertex.
 * Locally testable: the dictionary fails iff some degenerate basic row
 * (beta = 0) has a nonzero coefficient on a cobasic variable of smaller
 * index, because then that cobasic variable could replace the basic one
 * in a lex-feasible dictionary with smaller basis.
 */
template <class R>
bool emits_output(const Dictionary<R>& D) {
    for (int k = 0; k < D.slack_rows(); ++k) {
        if (sign_of(D.tab(static_cast<std::size_t>(k), 0)) != 0) continue;
        const int i = D.basic[static_cast<std::size_t>(k)];
        for (int j = 0; j < D.dim(); ++j) {
            if (D.cobasic[static_cast<std::size_t>(j)] >= i) break;
            if (sign_of(D.tab(static_cast<std::size_t>(k), static_cast<std::size_t>(j) + 1)) != 0) return false;
        }
    }
    return true;
}

/** Coordinates of the vertex at this cobasis (decision row constants). */
template <class R>
Vec<R> vertex_of(const Dictionary<R>& D) {
    Vec<R> x(static_cast<std::size_t>(D.dim()));
    for (int t = 0; t < D.dim(); ++t)
        x[static_cast<std::size_t>(t)] = D.tab(static_cast<std::size_t>(D.slack_rows() + t), 0);
    return x;
}

/**
 * Search objective: with C0 the root cobasis (sorted), maximize
 * f = -sum_k delta^k s_{C0[k]} for infinitesimal delta.  A cobasic
 * variable j improves f iff the gradient vector
 * (d s_{C0[0]} / d s_j, d s_{C0[1]} / d s_j, ...) is lexicographically
 * negative.  At the unique maximizer, the root, no variable improves.
 */
template <class R>
bool improves(const Dictionary<R>& D, const std::vector<int>& rootCobasis, int j) {
    for (int c0 : rootCobasis) {
        R g(0);
        const int r = D.rowOf[static_cast<std::size_t>(c0)];
        if (r >= 0 && r < D.slack_rows())
            g = D.tab(static_cast<std::size_t>(r), static_cast<std::size_t>(D.colOf[static_cast<std::size_t>(j)]) + 1);
        else if (c0 == j)
            g = R(1);
        const int s = sign_of(g);
        if (s != 0) return s < 0;
    }
    return false;
}

/** Least-index improving cobasic variable, or -1 at the root. */
template <class R>
int first_improving(const Dictionary<R>& D, const std::vector<int>& rootCobasis) {
    for (int j : D.cobasic)
        if (improves(D, rootCobasis, j)) return j;
    return -1;
}

/**
 * Build the root dictionary of an H-system.
 *
 * Stage one pivots each decision variable into the basis (least
 * eligible row first); failure means the coefficient rows do not span,
 * so the region contains a line and cannot be a polytope.  Stage two
 * restores lexicographic feasibility by least-index criss-cross pivots:
 * repeatedly take the smallest basic slack with lex-negative value and
 * the smallest cobasic slack with a positive coefficient in its row.
 * Finiteness of the least-index criss-cross rule holds over any ordered
 * field, here the rationals extended by the perturbation.  If a
 * lex-negative row has no positive coefficient its equation bounds the
 * slack away from feasibility, proving the region empty.  Finally every
 * cobasic direction must be blocked by some row, otherwise the region
 * is unbounded.
 */
template <class R>
PivotSystem<R> initial_dictionary(const Matrix<R>& hrows) {
    const std::size_t m = hrows.rows();
    const std::size_t d = hrows.cols() - 1;
    if (hrows.cols() < 2) throw std::invalid_argument("initial_dictionary: need at least one coordinate");

    // Stage one over a working tableau whose rows start as the slack
    // expressions in terms of x and whose columns are relabeled as
    // decision variables enter.  rowVar: -1-t for decision t, else slack.
    Matrix<R> W(m, d + 1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= d; ++j) W(i, j) = hrows(i, j);
    std::vector<int> rowVar(m), colVar(d);
    for (std::size_t i = 0; i < m; ++i) rowVar[i] = static_cast<int>(i);
    for (std::size_t j = 0; j < d; ++j) colVar[j] = -1 - static_cast<int>(j);

    for (std::size_t t = 0; t < d; ++t) {
        std::size_t c = 0;
        while (c < d && colVar[c] != -1 - static_cast<int>(t)) ++c;
        std::size_t l = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (rowVar[i] < 0) continue;
            if (sign_of(W(i, c + 1)) != 0 && (l == m || rowVar[i] < rowVar[l])) l = i;
        }
        if (l == m)
            throw UnboundedError("coefficient rows are rank deficient; the region contains a line");
        detail::pivot_tableau(W, l, c);
        colVar[c] = rowVar[l];
        rowVar[l] = -1 - static_cast<int>(t);
    }

    // Assemble the sorted dictionary: slack rows ascending, then
    // decision rows x_0..x_{d-1}; columns ascending by slack index.
    Dictionary<R> D;
    D.tab = Matrix<R>(m, d + 1);
    for (std::size_t i = 0; i < m; ++i)
        if (rowVar[i] >= 0) D.basic.push_back(rowVar[i]);
    std::sort(D.basic.begin(), D.basic.end());
    D.cobasic = colVar;
    std::sort(D.cobasic.begin(), D.cobasic.end());
    D.rowOf.assign(m, -1);
    D.colOf.assign(m, -1);
    std::vector<std::size_t> srcRow(m + d, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (rowVar[i] >= 0)
            srcRow[static_cast<std::size_t>(rowVar[i])] = i;
        else
            srcRow[m + static_cast<std::size_t>(-1 - rowVar[i])] = i;
    }
    std::vector<std::size_t> srcCol(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
        std::size_t c = 0;
        while (colVar[c] != D.cobasic[j]) ++c;
        srcCol[j] = c;
    }
    const std::size_t nb = D.basic.size();
    for (std::size_t k = 0; k < nb; ++k) {
        const std::size_t i = srcRow[static_cast<std::size_t>(D.basic[k])];
        D.tab(k, 0) = W(i, 0);
        for (std::size_t j = 0; j < d; ++j) D.tab(k, j + 1) = W(i, srcCol[j] + 1);
        D.rowOf[static_cast<std::size_t>(D.basic[k])] = static_cast<int>(k);
    }
    for (std::size_t t = 0; t < d; ++t) {
        const std::size_t i = srcRow[m + t];
        D.tab(nb + t, 0) = W(i, 0);
        for (std::size_t j = 0; j < d; ++j) D.tab(nb + t, j + 1) = W(i, srcCol[j] + 1);
    }
    for (std::size_t j = 0; j < d; ++j) D.colOf[static_cast<std::size_t>(D.cobasic[j])] = static_cast<int>(j);

    // Stage two: criss-cross to lexicographic feasibility.
    for (;;) {
        int badRow = -1;
        for (int k = 0; k < D.slack_rows(); ++k) {
            const int s0 = sign_of(D.tab(static_cast<std::size_t>(k), 0));
            if (s0 > 0) continue;
            if (s0 == 0) {
                int sig = 0;
                for (int q : detail::relevant_positions(D, k, -1)) {
                    sig = sign_of(detail::delta_entry(D, k, q));
                    if (sig != 0) break;
                }
                if (sig > 0) continue;
            }
            badRow = k;
            break;
        }
        if (badRow < 0) break;
        int enter = -1;
        for (int j = 0; j < D.dim(); ++j) {
            if (sign_of(D.tab(static_cast<std::size_t>(badRow), static_cast<std::size_t>(j) + 1)) > 0) {
                enter = D.cobasic[static_cast<std::size_t>(j)];
                break;
            }
        }
        if (enter < 0) throw InfeasibleError("feasible region is empty");
        pivot(D, enter, D.basic[static_cast<std::size_t>(badRow)]);
    }

    for (int j = 0; j < D.dim(); ++j) {
        bool blocked = false;
        for (int k = 0; k < D.slack_rows() && !blocked; ++k)
            blocked = sign_of(D.tab(static_cast<std::size_t>(k), static_cast<std::size_t>(j) + 1)) < 0;
        if (!blocked) throw UnboundedError("feasible region is unbounded");
    }

    PivotSystem<R> sys;
    sys.rows = hrows;
    sys.m = static_cast<int>(m);
    sys.d = static_cast<int>(d);
    sys.rootCobasis = D.cobasic;
    D.depth = 0;
    sys.root = std::move(D);
    return sys;
}

/**
 * Rebuild the dictionary at a given cobasis directly from the input
 * rows: invert the cobasic coefficient block, read off the decision
 * rows, and express every other slack through them.  Throws
 * InternalError when the cobasis is singular.
 */
template <class R>
Dictionary<R> dictionary_at(const PivotSystem<R>& sys, const std::vector<int>& cobasis, long depth) {
    const std::size_t d = static_cast<std::size_t>(sys.d);
    const std::size_t m = static_cast<std::size_t>(sys.m);
    if (cobasis.size() != d) throw InternalError("dictionary_at: cobasis size mismatch");
    std::vector<int> C = cobasis;
    std::sort(C.begin(), C.end());
    for (std::size_t j = 0; j < d; ++j) {
        if (C[j] < 0 || C[j] >= static_cast<int>(m)) throw InternalError("dictionary_at: cobasis index out of range");
        if (j > 0 && C[j] == C[j - 1]) throw InternalError("dictionary_at: repeated cobasis index");
    }

    Matrix<R> AC(d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t t = 0; t < d; ++t) AC(j, t) = sys.rows(static_cast<std::size_t>(C[j]), t + 1);
    auto inv = inverse(AC);
    if (!inv) throw InternalError("dictionary_at: singular cobasis");

    // x = AInv * (s_C - b_C): decision row t has constant -(AInv b_C)_t
    // and coefficient AInv[t][j] on cobasic slack C[j].
    Dictionary<R> D;
    D.cobasic = C;
    for (std::size_t i = 0; i < m; ++i)
        if (!std::binary_search(C.begin(), C.end(), static_cast<int>(i))) D.basic.push_back(static_cast<int>(i));
    const std::size_t nb = D.basic.size();
    D.tab = Matrix<R>(nb + d, d + 1);
    D.rowOf.assign(m, -1);
    D.colOf.assign(m, -1);
    for (std::size_t t = 0; t < d; ++t) {
        R cst(0);
        for (std::size_t j = 0; j < d; ++j)
            cst = cst - (*inv)(t, j) * sys.rows(static_cast<std::size_t>(C[j]), 0);
        D.tab(nb + t, 0) = cst;
        for (std::size_t j = 0; j < d; ++j) D.tab(nb + t, j + 1) = (*inv)(t, j);
    }
    for (std::size_t k = 0; k < nb; ++k) {
        const std::size_t i = static_cast<std::size_t>(D.basic[k]);
        R cst = sys.rows(i, 0);
        for (std::size_t t = 0; t < d; ++t) cst = cst + sys.rows(i, t + 1) * D.tab(nb + t, 0);
        D.tab(k, 0) = cst;
        for (std::size_t j = 0; j < d; ++j) {
            R g(0);
            for (std::size_t t = 0; t < d; ++t) g = g + sys.rows(i, t + 1) * D.tab(nb + t, j + 1);
            D.tab(k, j + 1) = g;
        }
        D.rowOf[i] = static_cast<int>(k);
    }
    for (std::size_t j = 0; j < d; ++j) D.colOf[static_cast<std::size_t>(C[j])] = static_cast<int>(j);
    D.depth = depth;
    return D;
}

/**
 * Children of D in the reverse search tree, as (enter, leave) pairs in
 * increasing order of the entering variable.  For each cobasic v the
 * forward rule is hypothetically undone: pivot v in via the ratio test,
 * and keep the pair iff the forward pivot at the resulting dictionary
 * (least-index improving variable, then lex ratio) returns there.  D is
 * restored before returning.
 */
template <class R>
std::vector<std::pair<int, int>> reverse_children(const PivotSystem<R>& sys, Dictionary<R>& D) {
    std::vector<std::pair<int, int>> out;
    const std::vector<int> snapshot = D.cobasic;
    for (int v : snapshot) {
        const int u = lex_ratio(D, v);
        pivot(D, v, u);
        if (first_improving(D, sys.rootCobasis) == u) out.emplace_back(v, u);
        pivot(D, u, v);
    }
    return out;
}

} // namespace polyenum
