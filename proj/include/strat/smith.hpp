#pragma once

#include "strat/mat.hpp"

namespace strat {

/// Smith normal form U*A*V = D with D diagonal, d_i | d_{i+1}, U and V
/// invertible (unimodular over Z). Over Q and F_p this degenerates to
/// diag(1,..,1,0,..). Pivoting picks the smallest absolute value entry with
/// gcd reduction, so the result is deterministic.
struct SmithResult {
  Mat D, U, V;
  int rank = 0;
  std::vector<Scalar> diag() const {
    std::vector<Scalar> d;
    for (int i = 0; i < rank; ++i) d.push_back(D(i, i));
    return d;
  }
};

SmithResult smith(const Ring& R, const Mat& A);

/// Columns form a basis of ker(A); over Z the kernel is a saturated (pure)
/// submodule, so the basis extends to a basis of the ambient lattice.
Mat kernel_basis(const Ring& R, const Mat& A);

/// Solve A*X = B exactly. Returns false if no exact solution exists.
bool solve(const Ring& R, const Mat& A, const Mat& B, Mat* X);

/// Inverse of an invertible square matrix (unimodular over Z).
Mat inverse(const Ring& R, const Mat& A);

/// Cokernel of A in normal form: free part rank plus torsion divisors
/// (nonzero nonunit diagonal entries of the SNF).
struct CokerNF {
  int free_rank = 0;
  std::vector<Scalar> torsion;
};
CokerNF cokernel(const Ring& R, const Mat& A);

}  // namespace strat
