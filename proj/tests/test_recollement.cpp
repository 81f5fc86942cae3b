#include "doctest.h"
#include "strat/atlas.hpp"
#include "strat/sixfun.hpp"
#include "cell_helpers.hpp"

#include <random>

using namespace strat;

TEST_CASE("builtin atlases validate") {
  for (Ring R : {Ring::Z(), Ring::Q(), Ring::Fp(2)}) {
    for (std::string name : {"point", "A1", "Gm-in-A1", "P1", "P2"}) {
      StratAtlas A = builtin_atlas(name, R);
      A.validate_atlas();
    }
  }
}

TEST_CASE("single-stratum atlas is always valid and hom is cell hom") {
  Ring Z = Ring::Z();
  StratAtlas A = builtin_atlas("point", Z);
  StratObject u = strat_unit(A);
  HomTable t = strat_hom(A, u, u);
  CHECK(t.rank(0, 0) == 1);
  CHECK(t.entries.size() == 1);
}

TEST_CASE("P1: hom table of the unit is L at (0,0) and (1,2)") {
  for (Ring R : {Ring::Z(), Ring::Q(), Ring::Fp(2)}) {
    StratAtlas A = builtin_atlas("P1", R);
    StratObject u = strat_unit(A);
    strat_validate(A, u);
    HomTable t = strat_hom(A, u, u);
    CHECK(t.rank(0, 0) == 1);
    CHECK(t.rank(1, 2) == 1);
    int total = 0;
    for (auto& [qp, m] : t.entries) total += m.total_free_rank();
    CHECK(total == 2);
    for (auto& [qp, m] : t.entries) CHECK(!m.has_torsion());
  }
}

TEST_CASE("Pn: cohomology of projective space") {
  for (std::string name : {"P2", "P3"}) {
    int n = name == "P2" ? 2 : 3;
    StratAtlas A = builtin_atlas(name, Ring::Z());
    A.validate_atlas();
    StratObject u = strat_unit(A);
    HomTable t = strat_hom(A, u, u);
    int total = 0;
    for (auto& [qp, m] : t.entries) total += m.total_free_rank();
    CHECK(total == n + 1);
    for (int q = 0; q <= n; ++q) CHECK(t.rank(q, 2 * q) == 1);
  }
}

TEST_CASE("Gm-in-A1: hom table of the unit is L at (0,0) only") {
  // A1 = Gm u {0}: Hom(L, L(q)[p]) = L iff (q,p) = (0,0)
  for (Ring R : {Ring::Z(), Ring::Fp(2)}) {
    StratAtlas A = builtin_atlas("Gm-in-A1", R);
    StratObject u = strat_unit(A);
    strat_validate(A, u);
    HomTable t = strat_hom(A, u, u);
    CHECK(t.rank(0, 0) == 1);
    int total = 0;
    for (auto& [qp, m] : t.entries) total += m.total_free_rank();
    CHECK(total == 1);
  }
}

TEST_CASE("strat cone of a cycle validates and rotates hom tables") {
  Ring Z = Ring::Z();
  StratAtlas A = builtin_atlas("P1", Z);
  StratObject u = strat_unit(A);
  StratObject u12 = strat_unit(A, 1, 2);
  // pick the generator of Hom(u(-1)[-2], u) = Euler class and form the cone
  StratObject src = strat_unit(A, -1, -2);
  StratHomCx H(A, src, u, 2);
  HomologyBasis hb(H.cx(), 0, 0);
  REQUIRE(hb.free_rank() == 1);
  StratMap e = H.map_of(0, hb.representative(0));
  CHECK(H.is_cycle(e));
  StratObject cn = strat_cone(A, e, src, u);
  strat_validate(A, cn);
  StratMap inc = strat_cone_include_target(A, e, src, u);
  stratmap_validate(A, u, cn, inc);
  // H^*(P1-kernel-style cone) = H^*(P2 restricted): sanity via table ranks
  HomTable t = strat_hom(A, strat_unit(A), cn);
  CHECK(t.rank(0, 0) == 1);
}

TEST_CASE("strat map composition satisfies Leibniz against the hom differential") {
  std::mt19937 rng(4242);
  Ring Q = Ring::Q();
  StratAtlas A = builtin_atlas("P1", Q);
  StratObject x = strat_unit(A, 0, 0), y = strat_unit(A, 1, 2), z = strat_unit(A, 1, 1);
  StratHomCx Hxy(A, x, y, 2), Hyz(A, y, z, 2), Hxz(A, x, z, 2);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int trial = 0; trial < 6; ++trial) {
    for (int dm = -1; dm <= 1; ++dm) {
      std::vector<Scalar> vf(Hxy.cx().dim(dm)), vg(Hyz.cx().dim(-dm));
      for (auto& c : vf) c = coef(rng);
      for (auto& c : vg) c = coef(rng);
      StratMap f = Hxy.map_of(dm, vf);
      StratMap g = Hyz.map_of(-dm, vg);
      StratMap gf = stratmap_compose(A, x, y, z, g, f);
      // D(g o f) = Dg o f + (-1)^{deg g} g o Df
      StratMap lhs = Hxz.differential(gf);
      StratMap t1 = stratmap_compose(A, x, y, z, Hyz.differential(g), f);
      StratMap t2 = stratmap_compose(A, x, y, z, g, Hxy.differential(f));
      if (g.deg % 2 != 0) t2 = stratmap_scale(A, t2, Scalar(-1));
      StratMap rhs = stratmap_add(A, t1, t2);
      CHECK(Hxz.coords_of(lhs) == Hxz.coords_of(rhs));
    }
  }
}

TEST_CASE("recollement identities on P1, P2 and Gm-in-A1") {
  std::mt19937 rng(1001);
  for (std::string name : {"P1", "Gm-in-A1", "P2"}) {
    for (Ring R : {Ring::Z(), Ring::Fp(2)}) {
      StratAtlas A = builtin_atlas(name, R);
      StratObject u = strat_unit(A);
      int N = A.count();
      std::vector<int> all;
      for (int w = 0; w < N; ++w) all.push_back(w);
      // open = top stratum, closed = the rest
      std::vector<int> O = {N - 1}, D;
      for (int w = 0; w < N - 1; ++w) D.push_back(w);
      if (!is_open_union(A, O)) continue;
      // j^* i_* = 0 and i^* j_! = 0 strictly
      StratObject iN = closed_part(A, u, D);
      StratObject jiN = open_part(A, iN, O);
      CHECK(strat_is_strictly_zero(jiN));
      StratObject jp = open_part(A, u, O);
      StratObject ijp = closed_part(A, jp, D);
      CHECK(strat_is_strictly_zero(ijp));
      // i^! j_* = 0 up to homotopy
      StratObject js = star_pushforward_part(A, u, O);
      strat_validate(A, js);
      ShriekResult sh = lower_shriek_part(A, js, D);
      CHECK(strat_acyclic(sh.obj));
      // localization triangles
      LocalizationReport rep = localization_check(A, u, O);
      CHECK(rep.first_ok);
      CHECK(rep.second_ok);
    }
  }
}

TEST_CASE("P1: i^* j_* of the unit is the kernel pattern") {
  // Remark-level check: the costalk of the star-extension of the unit from
  // the open cell is L + L<-1>[-1]
  Ring Z = Ring::Z();
  StratAtlas A = builtin_atlas("P1", Z);
  StratObject u = strat_unit(A);
  StratObject js = star_pushforward_part(A, u, {1});
  StratObject st = closed_part(A, js, {0});
  CellMinimizeResult mr = cell_minimize(st.comps[0]);
  REQUIRE(mr.min.gen_count() == 2);
  std::multiset<std::pair<int, int>> got, want{{0, 0}, {1, -1}};
  for (auto& g : mr.min.egens()) got.insert({g.deg, g.tw});
  CHECK(got == want);
}

TEST_CASE("standard and costandard objects on P1") {
  for (Ring R : {Ring::Z(), Ring::Q(), Ring::Fp(2)}) {
    StratAtlas A = builtin_atlas("P1", R);
    for (int w = 0; w < 2; ++w)
      for (int q = -1; q <= 1; ++q) {
        StratObject d = standard_object(A, w, q);
        StratObject n = costandard_object(A, w, q);
        strat_validate(A, d);
        strat_validate(A, n);
        // the table quantifies over all twists of the target, so for the
        // same stratum the identity sits at entry (q - q2, 0); for distinct
        // strata the whole table vanishes
        for (int w2 = 0; w2 < 2; ++w2)
          for (int q2 = -1; q2 <= 1; ++q2) {
            HomTable t = strat_hom(A, d, costandard_object(A, w2, q2));
            int total = 0;
            for (auto& [qp, m] : t.entries) {
              total += m.total_free_rank();
              CHECK(!m.has_torsion());
            }
            if (w2 == w) {
              CHECK(t.rank(q - q2, 0) == 1);
              CHECK(total == 1);
            } else {
              CHECK(total == 0);
            }
          }
      }
  }
}

TEST_CASE("on a single stratum delta equals nabla") {
  Ring Z = Ring::Z();
  StratAtlas A = builtin_atlas("A1", Z);
  StratObject d = standard_object(A, 0, 1);
  StratObject n = costandard_object(A, 0, 1);
  CellMinimizeResult m = cell_minimize(n.comps[0]);
  REQUIRE(m.min.gen_count() == 1);
  CHECK(m.min.egens()[0].deg == d.comps[0].egens()[0].deg);
  CHECK(m.min.egens()[0].tw == d.comps[0].egens()[0].tw);
}
