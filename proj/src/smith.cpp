#include "strat/smith.hpp"

namespace strat {

namespace {

mpz_class abs_num(const Scalar& x) {
  mpz_class n = x.get_num();
  return n < 0 ? mpz_class(-n) : n;
}

// Pivot choice in the trailing block [t..)x[t..): smallest |entry| over Z,
// first nonzero over a field.
bool find_pivot(const Ring& R, const Mat& A, int t, int* pi, int* pj) {
  bool found = false;
  mpz_class best;
  for (int i = t; i < A.rows(); ++i)
    for (int j = t; j < A.cols(); ++j) {
      if (A(i, j) == 0) continue;
      if (R.is_field()) { *pi = i; *pj = j; return true; }
      mpz_class v = abs_num(A(i, j));
      if (!found || v < best) { found = true; best = v; *pi = i; *pj = j; }
    }
  return found;
}

}  // namespace

SmithResult smith(const Ring& R, const Mat& A0) {
  SmithResult res;
  Mat A = A0;
  A.normalize(R);
  Mat U = Mat::identity(A.rows());
  Mat V = Mat::identity(A.cols());
  int t = 0;
  const int tmax = std::min(A.rows(), A.cols());
  while (t < tmax) {
    int pi, pj;
    if (!find_pivot(R, A, t, &pi, &pj)) break;
    A.swap_rows(pi, t); U.swap_rows(pi, t);
    A.swap_cols(pj, t); V.swap_cols(pj, t);
    if (R.is_field()) {
      Scalar c = R.inv(A(t, t));
      A.scale_row(R, t, c); U.scale_row(R, t, c);
      for (int i = t + 1; i < A.rows(); ++i) {
        if (A(i, t) == 0) continue;
        Scalar f = R.neg(A(i, t));
        A.add_row(R, i, t, f); U.add_row(R, i, t, f);
      }
      for (int j = t + 1; j < A.cols(); ++j) {
        if (A(t, j) == 0) continue;
        Scalar f = R.neg(A(t, j));
        A.add_col(R, j, t, f); V.add_col(R, j, t, f);
      }
      ++t;
      continue;
    }
    // Z: reduce row/column remainders against the pivot until clean, then
    // enforce divisibility of the trailing block. The pivot is kept positive
    // so floor-division remainders lie in [0, pivot) and strictly shrink.
    bool dirty = true;
    while (dirty) {
      dirty = false;
      if (A(t, t) < 0) { A.scale_row(R, t, Scalar(-1)); U.scale_row(R, t, Scalar(-1)); }
      for (int i = t + 1; i < A.rows(); ++i) {
        if (A(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_num().get_mpz_t(), A(t, t).get_num().get_mpz_t());
        Scalar f(-q);
        A.add_row(R, i, t, f); U.add_row(R, i, t, f);
        if (A(i, t) != 0) {
          // remainder strictly smaller than |pivot|: re-pivot
          A.swap_rows(i, t); U.swap_rows(i, t);
          dirty = true;
        }
      }
      if (dirty) continue;
      for (int j = t + 1; j < A.cols(); ++j) {
        if (A(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_num().get_mpz_t(), A(t, t).get_num().get_mpz_t());
        Scalar f(-q);
        A.add_col(R, j, t, f); V.add_col(R, j, t, f);
        if (A(t, j) != 0) {
          A.swap_cols(j, t); V.swap_cols(j, t);
          dirty = true;
          break;  // row t now dirty, restart
        }
      }
      if (dirty) continue;
      // pivot clean; check it divides the trailing block
      for (int i = t + 1; i < A.rows() && !dirty; ++i)
        for (int j = t + 1; j < A.cols() && !dirty; ++j) {
          if (A(i, j) == 0) continue;
          if (!R.divides(A(t, t), A(i, j))) {
            A.add_row(R, t, i, Scalar(1)); U.add_row(R, t, i, Scalar(1));
            dirty = true;
          }
        }
    }
    if (A(t, t) < 0) { A.scale_row(R, t, Scalar(-1)); U.scale_row(R, t, Scalar(-1)); }
    ++t;
  }
  res.rank = 0;
  for (int i = 0; i < tmax; ++i)
    if (A(i, i) != 0) ++res.rank;
  res.D = A;
  res.U = U;
  res.V = V;
  return res;
}

Mat kernel_basis(const Ring& R, const Mat& A) {
  if (A.rows() == 0) return Mat::identity(A.cols());
  SmithResult s = smith(R, A);
  int n = A.cols(), r = s.rank;
  Mat K(n, n - r);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n - r; ++j) K(i, j) = s.V(i, r + j);
  return K;
}

bool solve(const Ring& R, const Mat& A, const Mat& B, Mat* X) {
  if (A.rows() != B.rows()) throw Error(ErrorCode::INTERNAL, "solve shape mismatch");
  SmithResult s = smith(R, A);
  Mat UB = s.U.mul(R, B);
  Mat Y(A.cols(), B.cols());
  for (int i = 0; i < s.rank; ++i)
    for (int j = 0; j < B.cols(); ++j) {
      if (!R.divides(s.D(i, i), UB(i, j))) return false;
      Y(i, j) = R.div_exact(UB(i, j), s.D(i, i));
    }
  for (int i = s.rank; i < A.rows(); ++i)
    for (int j = 0; j < B.cols(); ++j)
      if (!R.is_zero(UB(i, j))) return false;
  *X = s.V.mul(R, Y);
  return true;
}

Mat inverse(const Ring& R, const Mat& A) {
  if (A.rows() != A.cols()) throw Error(ErrorCode::INTERNAL, "inverse of non-square");
  Mat X;
  if (!solve(R, A, Mat::identity(A.rows()), &X))
    throw Error(ErrorCode::INTERNAL, "matrix not invertible over " + R.name());
  return X;
}

CokerNF cokernel(const Ring& R, const Mat& A) {
  CokerNF nf;
  if (A.cols() == 0) {
    nf.free_rank = A.rows();
    return nf;
  }
  SmithResult s = smith(R, A);
  nf.free_rank = A.rows() - s.rank;
  for (int i = 0; i < s.rank; ++i)
    if (!R.is_unit(s.D(i, i))) nf.torsion.push_back(s.D(i, i));
  return nf;
}

}  // namespace strat
