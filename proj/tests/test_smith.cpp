#include "doctest.h"
#include "strat/smith.hpp"

#include <random>

using namespace strat;

namespace {

Mat from_rows(const std::vector<std::vector<int>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  return m;
}

// Independent oracle: over Z the product d_1*...*d_k equals the gcd of all
// k x k minors of A.
mpz_class gcd_of_minors(const Mat& A, int k) {
  std::vector<std::vector<int>> row_sets, col_sets;
  std::vector<int> idx;
  auto gen = [&](int n, auto& out) {
    std::vector<int> pick(k);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == k) { out.push_back(pick); return; }
      for (int i = start; i <= n - (k - depth); ++i) { pick[depth] = i; rec(i + 1, depth + 1); }
    };
    rec(0, 0);
  };
  gen(A.rows(), row_sets);
  gen(A.cols(), col_sets);
  mpz_class g = 0;
  Ring Q = Ring::Q();
  for (auto& rs : row_sets)
    for (auto& cs : col_sets) {
      Scalar d = A.submatrix(rs, cs).det(Q);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_num().get_mpz_t());
    }
  return g;
}

void check_snf(const Ring& R, const Mat& A) {
  SmithResult s = smith(R, A);
  CHECK(s.U.mul(R, A).mul(R, s.V) == s.D);
  for (int i = 0; i < std::min(s.D.rows(), s.D.cols()); ++i)
    for (int j = 0; j < std::min(s.D.rows(), s.D.cols()); ++j)
      if (i != j) CHECK(s.D(i, j) == 0);
  for (int i = 0; i + 1 < s.rank; ++i) CHECK(R.divides(s.D(i, i), s.D(i + 1, i + 1)));
  if (R.kind() == Ring::Kind::Integers) {
    Scalar du = s.U.det(R), dv = s.V.det(R);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
  } else {
    CHECK(!R.is_zero(s.U.det(R)));
    CHECK(!R.is_zero(s.V.det(R)));
  }
}

}  // namespace

TEST_CASE("snf 2x2 integer example with minor-gcd oracle") {
  Ring Z = Ring::Z();
  Mat A = from_rows({{2, 4}, {6, 8}});
  SmithResult s = smith(Z, A);
  check_snf(Z, A);
  REQUIRE(s.rank == 2);
  CHECK(s.D(0, 0) == 2);
  CHECK(s.D(1, 1) == 4);
  // oracle: d1 = gcd of entries, d1*d2 = gcd of 2x2 minors
  CHECK(gcd_of_minors(A, 1) == 2);
  CHECK(gcd_of_minors(A, 2) == 8);
  CHECK(s.D(0, 0) * s.D(1, 1) == 8);
}

TEST_CASE("snf identity and zero") {
  Ring Z = Ring::Z();
  Mat I = Mat::identity(3);
  SmithResult s = smith(Z, I);
  CHECK(s.D == I);
  CHECK(s.rank == 3);
  Mat O = Mat::zero(2, 3);
  SmithResult sz = smith(Z, O);
  CHECK(sz.rank == 0);
  CHECK(sz.D.is_zero());
  check_snf(Z, O);
}

TEST_CASE("snf random matrices over all rings") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> ent(-9, 9), dim(1, 5);
  for (Ring R : {Ring::Z(), Ring::Q(), Ring::Fp(2), Ring::Fp(5)}) {
    for (int trial = 0; trial < 25; ++trial) {
      Mat A(dim(rng), dim(rng));
      for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) A(i, j) = ent(rng);
      A.normalize(R);
      check_snf(R, A);
      if (R.kind() == Ring::Kind::Integers) {
        SmithResult s = smith(R, A);
        for (int k = 1; k <= s.rank; ++k) {
          mpz_class prod = 1;
          for (int i = 0; i < k; ++i) prod *= s.D(i, i).get_num();
          CHECK(prod == gcd_of_minors(A, k));
        }
      }
    }
  }
}

TEST_CASE("kernel basis and solve") {
  std::mt19937 rng(999);
  std::uniform_int_distribution<int> ent(-4, 4), dim(1, 5);
  for (Ring R : {Ring::Z(), Ring::Q(), Ring::Fp(3)}) {
    for (int trial = 0; trial < 20; ++trial) {
      Mat A(dim(rng), dim(rng));
      for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) A(i, j) = ent(rng);
      A.normalize(R);
      Mat K = kernel_basis(R, A);
      CHECK(A.mul(R, K).is_zero());
      // kernel columns are part of a basis: solve K x = K succeeds
      Mat X;
      CHECK(solve(R, K, K, &X));
      // a random combination of columns of A is solvable
      Mat v(A.cols(), 1);
      for (int i = 0; i < A.cols(); ++i) v(i, 0) = ent(rng);
      v.normalize(R);
      Mat b = A.mul(R, v);
      Mat x;
      REQUIRE(solve(R, A, b, &x));
      CHECK(A.mul(R, x) == b);
    }
  }
}

TEST_CASE("inverse of unimodular") {
  Ring Z = Ring::Z();
  Mat A = from_rows({{2, 3}, {3, 4}});  // det -1
  Mat B = inverse(Z, A);
  CHECK(A.mul(Z, B) == Mat::identity(2));
  CHECK(B.mul(Z, A) == Mat::identity(2));
}

TEST_CASE("cokernel normal form") {
  Ring Z = Ring::Z();
  // coker([[2,0],[0,3]]) = Z/2 + Z/3 = Z/6 in divisor chain form diag(1,6)
  Mat A = from_rows({{2, 0}, {0, 3}});
  CokerNF nf = cokernel(Z, A);
  CHECK(nf.free_rank == 0);
  REQUIRE(nf.torsion.size() == 1);
  CHECK(nf.torsion[0] == 6);
}
