#pragma once

#include <vector>

#include "strat/ring.hpp"

namespace strat {

/// Dense matrix over the coefficient ring, row-major. Matrices act on column
/// vectors: an (r x c) matrix maps Lambda^c -> Lambda^r.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Scalar(0)) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Mat zero(int rows, int cols) { return Mat(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  void normalize(const Ring& R) {
    for (auto& x : a_) x = R.normalize(x);
  }

  Mat mul(const Ring& R, const Mat& o) const;
  Mat add(const Ring& R, const Mat& o) const;
  Mat sub(const Ring& R, const Mat& o) const;
  Mat scaled(const Ring& R, const Scalar& c) const;
  Mat neg(const Ring& R) const { return scaled(R, Scalar(-1)); }
  Mat transpose() const;

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  /// row i += c * row j
  void add_row(const Ring& R, int i, int j, const Scalar& c);
  /// col i += c * col j
  void add_col(const Ring& R, int i, int j, const Scalar& c);
  void scale_row(const Ring& R, int i, const Scalar& c);
  void scale_col(const Ring& R, int j, const Scalar& c);

  /// Block-diagonal / block assembly helpers.
  static Mat block_diag(const Mat& a, const Mat& b);
  /// [a | b] side by side (same row count).
  static Mat hcat(const Mat& a, const Mat& b);
  /// a over b (same column count).
  static Mat vcat(const Mat& a, const Mat& b);
  Mat submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const;

  /// Exact determinant (fraction-free Gauss over the fraction field).
  Scalar det(const Ring& R) const;

 private:
  int rows_, cols_;
  std::vector<Scalar> a_;
};

/// Kronecker/tensor product with no signs (signs are the caller's business).
Mat kron(const Ring& R, const Mat& a, const Mat& b);

}  // namespace strat
