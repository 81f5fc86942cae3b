#include "doctest.h"
#include "strat/tilting.hpp"
#include "strat/atlas.hpp"

using namespace strat;

TEST_CASE("single-stratum tilting is the shifted unit") {
  Ring Q = Ring::Q();
  StratAtlas A = builtin_atlas("A1", Q);
  TiltingResult t = tilting_object(A, 0);
  CellMinimizeResult m = cell_minimize(t.T.comps[0]);
  REQUIRE(m.min.gen_count() == 1);
  CHECK(m.min.egens()[0].deg == -1);
  CHECK(m.min.egens()[0].tw == 0);
  CHECK(t.delta_flag.size() == 1);
}

TEST_CASE("tilting on P1: flags and orthogonality") {
  for (Ring R : {Ring::Q(), Ring::Fp(2), Ring::Fp(3), Ring::Z()}) {
    StratAtlas A = builtin_atlas("P1", R);
    TiltingResult t0 = tilting_object(A, 0);
    CHECK(t0.delta_flag.size() == 1);
    TiltingResult t1 = tilting_object(A, 1);
    // Delta-flag [Delta_pt, Delta_A1], Nabla-flag [Nabla_A1, Nabla_pt]
    int total_delta = 0;
    for (auto& [v, q, m] : t1.delta_flag) total_delta += m;
    CHECK(total_delta == 2);
    int total_nabla = 0;
    for (auto& [v, q, m] : t1.nabla_flag) total_nabla += m;
    CHECK(total_nabla == 2);
    // no self-extensions in nonzero degrees between tiltings
    for (auto& [qp, m] : strat_hom(A, t1.T, t1.T).entries)
      if (qp.second != 0) {
        CHECK(m.total_free_rank() == 0);
        CHECK(!m.has_torsion());
      }
    for (auto& [qp, m] : strat_hom(A, t0.T, t1.T).entries)
      if (qp.second != 0) CHECK(m.total_free_rank() == 0);
  }
}

TEST_CASE("tilting on flag-A2 over Q") {
  Ring Q = Ring::Q();
  StratAtlas A = builtin_atlas("flag-A2", Q);
  // tiltings for the small strata terminate and are orthogonal
  for (int w = 0; w < 3; ++w) {
    TiltingResult t = tilting_object(A, w);
    for (auto& [qp, m] : strat_hom(A, t.T, t.T).entries)
      if (qp.second != 0) CHECK(m.total_free_rank() == 0);
  }
}
