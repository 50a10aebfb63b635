#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "polyenum/rational.hpp"

namespace polyenum {

template <class R>
using Vec = std::vector<R>;

/** Dense row-major matrix over an exact scalar type. */
template <class R>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, R(0)) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    R& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const R& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = R(1);
        return m;
    }

    Vec<R> row(std::size_t i) const {
        return Vec<R>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }

    void set_row(std::size_t i, const Vec<R>& v) {
        for (std::size_t j = 0; j < cols_; ++j) a_[i * cols_ + j] = v[j];
    }

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap(a_[i * cols_ + j], a_[k * cols_ + j]);
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<R> a_;
};

/**
 * Solve A x = b for square A by Gauss-Jordan elimination with first
 * nonzero pivot selection.  Returns nullopt when A is singular.
 */
template <class R>
std::optional<Vec<R>> solve_square(Matrix<R> A, Vec<R> b) {
    const std::size_t n = A.rows();
    if (A.cols() != n || b.size() != n)
        throw std::invalid_argument("solve_square: dimension mismatch");
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sign_of(A(p, c)) == 0) ++p;
        if (p == n) return std::nullopt;
        A.swap_rows(c, p);
        std::swap(b[c], b[p]);
        const R piv = A(c, c);
        for (std::size_t j = c; j < n; ++j) A(c, j) = A(c, j) / piv;
        b[c] = b[c] / piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c) continue;
            const R f = A(i, c);
            if (sign_of(f) == 0) continue;
            for (std::size_t j = c; j < n; ++j) A(i, j) = A(i, j) - f * A(c, j);
            b[i] = b[i] - f * b[c];
        }
    }
    return b;
}

/** Invert a square matrix; nullopt when singular. */
template <class R>
std::optional<Matrix<R>> inverse(Matrix<R> A) {
    const std::size_t n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("inverse: matrix not square");
    Matrix<R> inv = Matrix<R>::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sign_of(A(p, c)) == 0) ++p;
        if (p == n) return std::nullopt;
        A.swap_rows(c, p);
        inv.swap_rows(c, p);
        const R piv = A(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            A(c, j) = A(c, j) / piv;
            inv(c, j) = inv(c, j) / piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c) continue;
            const R f = A(i, c);
            if (sign_of(f) == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                A(i, j) = A(i, j) - f * A(c, j);
                inv(i, j) = inv(i, j) - f * inv(c, j);
            }
        }
    }
    return inv;
}

/**
 * Reduced row echelon form with pivot column order recorded.
 * rowRank pivot rows come first; zero rows sink to the bottom.
 */
template <class R>
struct Rref {
    Matrix<R> mat;
    std::vector<std::size_t> pivotCols; // ascending, one per pivot row
};

template <class R>
Rref<R> rref(Matrix<R> M) {
    const std::size_t rows = M.rows(), cols = M.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sign_of(M(p, c)) == 0) ++p;
        if (p == rows) continue;
        M.swap_rows(r, p);
        const R piv = M(r, c);
        for (std::size_t j = c; j < cols; ++j) M(r, j) = M(r, j) / piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const R f = M(i, c);
            if (sign_of(f) == 0) continue;
            for (std::size_t j = c; j < cols; ++j) M(i, j) = M(i, j) - f * M(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(M), std::move(pivots)};
}

/**
 * Exact rank by Bareiss fraction-free elimination.
 *
 * Rows are first scaled to integers by their denominator lcm (rank is
 * invariant under nonzero row scaling), then eliminated with the
 * division-free update a_ij := (a_ij * pivot - a_ik * a_kj) / prevPivot,
 * whose divisions are exact.  Intermediate entries stay minors of the
 * scaled matrix, which keeps their bit growth polynomial.
 */
inline std::size_t rank(const Matrix<BigRat>& M) {
    const std::size_t rows = M.rows(), cols = M.cols();
    if (rows == 0 || cols == 0) return 0;
    std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        BigInt scale = 1;
        for (std::size_t j = 0; j < cols; ++j)
            scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(M(i, j)));
        for (std::size_t j = 0; j < cols; ++j) {
            const BigRat v = M(i, j) * BigRat(scale);
            a[i][j] = boost::multiprecision::numerator(v);
        }
    }
    BigInt prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[r], a[p]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

/** Convert every entry; may throw OverflowError for Rat64 targets. */
template <class R>
Matrix<R> matrix_from_big(const Matrix<BigRat>& M) {
    Matrix<R> out(M.rows(), M.cols());
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) out(i, j) = from_big<R>(M(i, j));
    return out;
}

template <class R>
Matrix<BigRat> matrix_to_big(const Matrix<R>& M) {
    Matrix<BigRat> out(M.rows(), M.cols());
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) out(i, j) = to_big(M(i, j));
    return out;
}

template <class R>
Vec<BigRat> vec_to_big(const Vec<R>& v) {
    Vec<BigRat> out;
    out.reserve(v.size());
    for (const R& x : v) out.push_back(to_big(x));
    return out;
}

} // namespace polyenum
