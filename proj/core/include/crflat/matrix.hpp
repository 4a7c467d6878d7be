#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "crflat/rational.hpp"
#include "crflat/unipoly.hpp"

namespace crflat {

inline Rat exact_div(const Rat& a, const Rat& b) { return a / b; }
inline CNum exact_div(const CNum& a, const CNum& b) { return a / b; }
inline UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
    auto q = a.div_exact(b);
    if (!q) throw std::logic_error("exact_div: polynomial division not exact");
    return *q;
}

/// Dense matrix over an exact coefficient type (Rat, CNum or UniPoly).
template <class T>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols, T fill = T())
        : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols, fill) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dimension");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("Mat: dimension mismatch in product");
        Mat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a.is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

  private:
    int rows_, cols_;
    std::vector<T> e_;
};

/// Exact determinant via fraction-free (Bareiss) elimination. Pivoting is
/// deterministic: first row with a nonzero entry in the current column.
template <class T>
T det_exact(Mat<T> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det_exact: matrix not square");
    const int n = m.rows();
    if (n == 0) return T(1);
    T prev(1);
    bool negate = false;
    for (int k = 0; k + 1 < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (!m(i, k).is_zero()) { p = i; break; }
        if (p < 0) return T(0);
        if (p != k) {
            for (int j = k; j < n; ++j) std::swap(m(p, j), m(k, j));
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m(i, j) = exact_div(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
            m(i, k) = T(0);
        }
        prev = m(k, k);
    }
    T det = m(n - 1, n - 1);
    return negate ? -det : det;
}

inline UniPoly det_poly(const Mat<UniPoly>& m) { return det_exact(m); }

template <class T>
struct Rref {
    Mat<T> m;
    std::vector<int> pivot_cols;  // pivot column of each leading row, in row order
    int rank = 0;
};

/// Reduced row echelon form over a field (Rat or CNum). Pivot choice is the
/// leftmost nonzero column, topmost remaining row, so results are reproducible.
template <class T>
Rref<T> rref(Mat<T> m) {
    Rref<T> out;
    const int rows = m.rows(), cols = m.cols();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (!m(i, c).is_zero()) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
        T inv = exact_div(T(1), m(r, c));
        for (int j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            T f = m(i, c);
            for (int j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rank = r;
    out.m = std::move(m);
    return out;
}

template <class T>
int rank(const Mat<T>& m) {
    return rref(m).rank;
}

/// Exact basis of the right null space; empty exactly when m has full column rank.
template <class T>
std::vector<std::vector<T>> kernel_basis(const Mat<T>& m) {
    Rref<T> r = rref(m);
    const int cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int c : r.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(cols, T(0));
        v[f] = T(1);
        for (int row = 0; row < r.rank; ++row) v[r.pivot_cols[row]] = -r.m(row, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One exact solution of m x = rhs, or nullopt when the system is inconsistent.
/// Underdetermined systems get the solution with all free variables zero under
/// the fixed leftmost pivot order.
template <class T>
std::optional<std::vector<T>> solve_linear(const Mat<T>& m, const std::vector<T>& rhs) {
    if (static_cast<int>(rhs.size()) != m.rows())
        throw std::invalid_argument("solve_linear: rhs length does not match rows");
    Mat<T> aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = rhs[i];
    }
    Rref<T> r = rref(std::move(aug));
    for (std::size_t row = 0; row < r.pivot_cols.size(); ++row)
        if (r.pivot_cols[row] == m.cols()) return std::nullopt;
    std::vector<T> x(m.cols(), T(0));
    for (std::size_t row = 0; row < r.pivot_cols.size(); ++row)
        x[r.pivot_cols[row]] = r.m(static_cast<int>(row), m.cols());
    return x;
}

/// Accumulates rows of a large linear system while keeping only an
/// independent reduced set; avoids materializing thousands of rows when
/// only the rank or the kernel is needed.
template <class T>
class RowAccumulator {
  public:
    explicit RowAccumulator(int cols) : cols_(cols) {}

    /// Returns true when the row increased the rank.
    bool add(std::vector<T> row) {
        if (static_cast<int>(row.size()) != cols_)
            throw std::invalid_argument("RowAccumulator: bad row length");
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const int pc = pivot_cols_[k];
            if (row[pc].is_zero()) continue;
            T f = row[pc];
            for (int j = 0; j < cols_; ++j) row[j] = row[j] - f * rows_[k][j];
        }
        int pivot = -1;
        for (int j = 0; j < cols_; ++j)
            if (!row[j].is_zero()) { pivot = j; break; }
        if (pivot < 0) return false;
        T inv = exact_div(T(1), row[pivot]);
        for (int j = pivot; j < cols_; ++j) row[j] = row[j] * inv;
        rows_.push_back(std::move(row));
        pivot_cols_.push_back(pivot);
        return true;
    }

    int rank() const { return static_cast<int>(rows_.size()); }
    bool full_column_rank() const { return rank() == cols_; }

    /// Kernel of the accumulated system.
    std::vector<std::vector<T>> kernel() const {
        Mat<T> m(rank(), cols_);
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < cols_; ++j) m(i, j) = rows_[i][j];
        return kernel_basis(m);
    }

  private:
    int cols_;
    std::vector<std::vector<T>> rows_;
    std::vector<int> pivot_cols_;
};

}  // namespace crflat
