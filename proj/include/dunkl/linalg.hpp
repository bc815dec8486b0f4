#pragma once

#include <optional>
#include <vector>

#include "dunkl/errors.hpp"
#include "dunkl/scalar.hpp"

namespace dunkl {

/// Minimal dense matrix over a field scalar; sized for reflection-group
/// matrices (N <= 8) and the per-degree intertwiner systems.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, scalar_traits<S>::zero()) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  S& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const S& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    Matrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int l = 0; l < x.cols_; ++l) {
        if (scalar_traits<S>::is_zero(x(i, l))) continue;
        for (int j = 0; j < y.cols_; ++j) r(i, j) += x(i, l) * y(l, j);
      }
    return r;
  }

  std::vector<S> apply(const std::vector<S>& v) const {
    std::vector<S> r(static_cast<std::size_t>(rows_), scalar_traits<S>::zero());
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    return r;
  }

  Matrix transposed() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  /// Entrywise distance in double precision (float-backend comparisons).
  double max_abs_diff(const Matrix& y) const {
    double m = 0;
    for (std::size_t i = 0; i < a_.size(); ++i)
      m = std::max(m, std::fabs(scalar_traits<S>::to_double(a_[i]) - scalar_traits<S>::to_double(y.a_[i])));
    return m;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<S> a_;
};

/// Gaussian elimination with partial pivoting over the scalar field.
/// Solves A X = B for possibly overdetermined consistent systems:
/// eliminates on a maximal independent row subset and then checks every
/// remaining equation, so an inconsistent system is always detected.
/// Returns X (cols(A) x cols(B)); throws RegularityError if rank < cols(A)
/// or if a leftover equation fails.
template <class S>
Matrix<S> solve_consistent(Matrix<S> a, Matrix<S> b, double scale_hint = 1.0) {
  const int m = a.rows(), n = a.cols(), p = b.cols();
  if (b.rows() != m) throw std::invalid_argument("solve_consistent: shape mismatch");
  std::vector<int> pivot_row(static_cast<std::size_t>(n), -1);
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int best = -1;
    double best_mag = 0;
    for (int r = row; r < m; ++r) {
      if (scalar_traits<S>::is_zero(a(r, col))) continue;
      double mag = scalar_traits<S>::abs_double(a(r, col));
      if (best == -1 || mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best == -1) continue;
    for (int j = 0; j < n; ++j) std::swap(a(best, j), a(row, j));
    for (int j = 0; j < p; ++j) std::swap(b(best, j), b(row, j));
    for (int r = 0; r < m; ++r) {
      if (r == row || scalar_traits<S>::is_zero(a(r, col))) continue;
      S f = a(r, col) / a(row, col);
      for (int j = col; j < n; ++j) a(r, j) -= f * a(row, j);
      a(r, col) = scalar_traits<S>::zero();
      for (int j = 0; j < p; ++j) b(r, j) -= f * b(row, j);
    }
    pivot_row[static_cast<std::size_t>(col)] = row;
    ++row;
  }
  for (int col = 0; col < n; ++col)
    if (pivot_row[static_cast<std::size_t>(col)] < 0)
      throw RegularityError("linear system does not have full column rank");
  Matrix<S> x(n, p);
  for (int col = 0; col < n; ++col) {
    int r = pivot_row[static_cast<std::size_t>(col)];
    for (int j = 0; j < p; ++j) x(col, j) = b(r, j) / a(r, col);
  }
  // rows beyond the rank must have been reduced to 0 = 0
  for (int r = row; r < m; ++r)
    for (int j = 0; j < p; ++j)
      if (!scalar_traits<S>::negligible(b(r, j), scale_hint))
        throw RegularityError("overdetermined system is inconsistent");
  return x;
}

}  // namespace dunkl
