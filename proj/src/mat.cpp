#include "strat/mat.hpp"

namespace strat {

Mat Mat::mul(const Ring& R, const Mat& o) const {
  if (cols_ != o.rows_) throw Error(ErrorCode::INTERNAL, "mat mul shape mismatch");
  Mat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o(k, j) == 0) continue;
        r(i, j) += x * o(k, j);
      }
    }
  r.normalize(R);
  return r;
}

Mat Mat::add(const Ring& R, const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::INTERNAL, "mat add shape mismatch");
  Mat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = R.normalize(a_[i] + o.a_[i]);
  return r;
}

Mat Mat::sub(const Ring& R, const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::INTERNAL, "mat sub shape mismatch");
  Mat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = R.normalize(a_[i] - o.a_[i]);
  return r;
}

Mat Mat::scaled(const Ring& R, const Scalar& c) const {
  Mat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = R.normalize(a_[i] * c);
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

void Mat::swap_rows(int i, int j) {
  if (i == j) return;
  for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void Mat::swap_cols(int i, int j) {
  if (i == j) return;
  for (int r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void Mat::add_row(const Ring& R, int i, int j, const Scalar& c) {
  for (int k = 0; k < cols_; ++k) (*this)(i, k) = R.normalize((*this)(i, k) + c * (*this)(j, k));
}

void Mat::add_col(const Ring& R, int i, int j, const Scalar& c) {
  for (int k = 0; k < rows_; ++k) (*this)(k, i) = R.normalize((*this)(k, i) + c * (*this)(k, j));
}

void Mat::scale_row(const Ring& R, int i, const Scalar& c) {
  for (int k = 0; k < cols_; ++k) (*this)(i, k) = R.normalize((*this)(i, k) * c);
}

void Mat::scale_col(const Ring& R, int j, const Scalar& c) {
  for (int k = 0; k < rows_; ++k) (*this)(k, j) = R.normalize((*this)(k, j) * c);
}

Mat Mat::block_diag(const Mat& a, const Mat& b) {
  Mat r(a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) r(a.rows_ + i, a.cols_ + j) = b(i, j);
  return r;
}

Mat Mat::hcat(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_) throw Error(ErrorCode::INTERNAL, "hcat shape mismatch");
  Mat r(a.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (int j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
  }
  return r;
}

Mat Mat::vcat(const Mat& a, const Mat& b) {
  if (a.cols_ != b.cols_) throw Error(ErrorCode::INTERNAL, "vcat shape mismatch");
  Mat r(a.rows_ + b.rows_, a.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) r(a.rows_ + i, j) = b(i, j);
  return r;
}

Mat Mat::submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
  Mat r(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
  for (size_t i = 0; i < row_idx.size(); ++i)
    for (size_t j = 0; j < col_idx.size(); ++j) r(static_cast<int>(i), static_cast<int>(j)) = (*this)(row_idx[i], col_idx[j]);
  return r;
}

Scalar Mat::det(const Ring& R) const {
  if (rows_ != cols_) throw Error(ErrorCode::INTERNAL, "det of non-square");
  int n = rows_;
  Mat m = *this;
  Scalar d(1);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (m(i, k) != 0) { piv = i; break; }
    if (piv < 0) return Scalar(0);
    if (piv != k) { m.swap_rows(piv, k); d = -d; }
    for (int i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Scalar f = m(i, k) / m(k, k);
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
    d *= m(k, k);
  }
  return R.normalize(d);
}

Mat kron(const Ring& R, const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) {
          if (b(k, l) == 0) continue;
          r(i * b.rows() + k, j * b.cols() + l) = R.normalize(a(i, j) * b(k, l));
        }
    }
  return r;
}

}  // namespace strat
