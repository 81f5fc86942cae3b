#include "doctest.h"
#include "strat/polymod.hpp"
#include "cell_helpers.hpp"

#include <random>

using namespace strat;
using strat::testing::random_cell;

TEST_CASE("koszul dual of a free rank-1 object is the twisted augmentation module") {
  Ring Z = Ring::Z();
  for (int m = 0; m <= 2; ++m)
    for (int q = -1; q <= 1; ++q) {
      CellObject E = CellObject::tate(Z, 0, m, q, 0);
      PolyModule P = koszul_dual(E);
      P.validate();
      // quasi-isomorphic to L<q> at degree 0 with zero z-action
      auto H = P.cx().homology_all();
      REQUIRE(H.size() == 1);
      CHECK(H.begin()->first == 0);
      CHECK(H[0].free_rank(q) == 1);
      CHECK(H[0].total_free_rank() == 1);
    }
}

TEST_CASE("koszul undual of the augmentation module is free of rank 1") {
  Ring Z = Ring::Z();
  for (int m = 0; m <= 2; ++m) {
    PolyModule P(Z, 0, m);
    P.cx().set_term(0, {3});
    P.validate();
    CellObject E = koszul_undual(P);
    E.validate();
    CHECK(E.gen_count() == 1);
    CHECK(E.egens()[0].tw == 3);
  }
}

TEST_CASE("trivial module corresponds to a free R-module: hom tables") {
  // Hom_R(L, L) = exterior pattern binom(m,k) at (k,k): the same table as
  // cell_hom of the free rank-1 E-module (Koszul duality on hom tables).
  Ring Q = Ring::Q();
  for (int m = 0; m <= 2; ++m) {
    PolyModule L(Q, 0, m);
    L.cx().set_term(0, {0});
    HomTable t = polymod_hom(L, L);
    CellObject E = CellObject::tate(Q, 0, m, 0, 0);
    HomTable te = cell_hom(E, E);
    CHECK(t.entries == te.entries);
  }
}

TEST_CASE("counit is a quasi-isomorphism and round trip preserves hom tables") {
  std::mt19937 rng(2718);
  for (Ring R : {Ring::Z(), Ring::Fp(2)}) {
    for (int m = 0; m <= 2; ++m) {
      CellObject M = random_cell(rng, R, 0, m, 2);
      CellMap eps = koszul_counit(M);
      eps.validate();
      CellObject cn = cell_cone(eps);
      CHECK(flatten(cn).cx.is_acyclic());
    }
  }
}

TEST_CASE("cross-model hom table agreement on random compact objects") {
  std::mt19937 rng(31415);
  for (Ring R : {Ring::Z(), Ring::Q()}) {
    for (int m = 0; m <= 2; ++m) {
      for (int trial = 0; trial < 3; ++trial) {
        CellObject M = random_cell(rng, R, 0, m, 2);
        CellObject N = random_cell(rng, R, 0, m, 2);
        HomTable cellside = cell_hom(M, N);
        HomTable polyside = polymod_hom(koszul_dual(M), koszul_dual(N));
        CHECK(cellside.entries == polyside.entries);
      }
    }
  }
}

TEST_CASE("polymod truncation splits homology") {
  std::mt19937 rng(555);
  Ring Z = Ring::Z();
  CellObject M = random_cell(rng, Z, 0, 1, 3);
  PolyModule P = koszul_dual(M);
  for (int c = -2; c <= 2; ++c) {
    PolyTrunc t = polymod_truncate(P, c);
    t.low.validate();
    t.high.validate();
    auto hl = t.low.cx().homology_all();
    auto hh = t.high.cx().homology_all();
    auto hp = P.cx().homology_all();
    for (auto& [deg, h] : hl) {
      CHECK(deg <= c);
      CHECK(hp[deg] == h);
    }
    for (auto& [deg, h] : hh) {
      CHECK(deg >= c + 1);
      CHECK(hp[deg] == h);
    }
  }
}

TEST_CASE("perverse truncation of heart generators is trivial") {
  Ring Z = Ring::Z();
  for (auto [n, m] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
    CellObject M = CellObject::tate(Z, n, m, 1, n + m);  // L(1)[n+m]: perverse degree 0
    CellTTrunc t = cell_t_truncate(M, 0);
    CHECK(t.high.is_zero_object());
    CHECK(!t.low.is_zero_object());
    auto ph = perverse_homology(M);
    REQUIRE(ph.size() == 1);
    CHECK(ph.begin()->first == 0);
    // shifted out of the aisle
    CellTTrunc t2 = cell_t_truncate(M.shifted(-1), 0);
    CHECK(t2.low.is_zero_object());
  }
}

TEST_CASE("m=0: perverse truncation agrees with standard truncation of complexes") {
  Ring Z = Ring::Z();
  // complex Z --2--> Z in degrees -1,0 on the point: H^0 = Z/2, H^{-1} = 0
  CellObject M(Z, 0, 0);
  int a = M.add_gen(-1, 0), b = M.add_gen(0, 0);
  M.set_dentry(b, a, EElem::scalar(0, Scalar(2)));
  M.validate();
  CellTTrunc t = cell_t_truncate(M, -1);
  // tau^{<=-1}: standard degree <= -1: that part has no homology
  CHECK(flatten(t.low).cx.is_acyclic());
  auto hh = flatten(t.high).cx.homology_all();
  REQUIRE(hh.size() == 1);
  CHECK(hh.begin()->first == 0);
}

TEST_CASE("t-truncation triangle and orthogonality on random objects") {
  std::mt19937 rng(777);
  for (Ring R : {Ring::Z(), Ring::Fp(3)}) {
    for (int m = 0; m <= 1; ++m) {
      CellObject M = random_cell(rng, R, 0, m, 2);
      CellTTrunc t = cell_t_truncate(M, 0);
      t.low.validate();
      t.high.validate();
      t.to_M.validate();
      t.from_M.validate();
      // aisle membership via perverse homology
      for (auto& [pd, h] : perverse_homology(t.low)) CHECK(pd <= 0);
      for (auto& [pd, h] : perverse_homology(t.high)) CHECK(pd >= 1);
      // orthogonality: Hom(tau<=0, tau>=1 [-j]) = 0 for j >= 0
      HomTable ht = cell_hom(t.low, t.high);
      for (int j = 0; j <= 4; ++j) CHECK(ht.rank(0, -j) == 0);
      // idempotence: truncating again changes nothing
      CellTTrunc tt = cell_t_truncate(t.low, 0);
      CHECK(tt.high.is_zero_object());
      // the cone of to_M is the high part: hom tables against a generator agree
      CellObject u = CellObject::tate(R, 0, m, 0, 0);
      CHECK(cell_hom(u, t.high).entries == cell_hom(u, cell_cone(t.to_M)).entries);
    }
  }
}

TEST_CASE("weight truncation round trip and idempotence") {
  std::mt19937 rng(888);
  Ring Z = Ring::Z();
  for (int m = 0; m <= 2; ++m) {
    CellObject M = random_cell(rng, Z, 0, m, 3);
    CellWTruncFull w = cell_w_truncate(M, 0);
    w.low.validate();
    w.high.validate();
    w.to_M.validate();
    w.from_M.validate();
    CellWTruncFull ww = cell_w_truncate(w.low, 0);
    CHECK(ww.high.is_zero_object());
    // triangle: cone(to_M) has the homology of the high part
    CellObject cn = cell_cone(w.to_M);
    CHECK(flatten(cn).cx.homology_all() == flatten(w.high).cx.homology_all());
  }
}
