#include "strat/truncation.hpp"

#include <algorithm>

namespace strat {

namespace {

StratObject prefix_obj(const StratObject& M, int len) {
  StratObject r;
  for (int w = 0; w < len; ++w) r.comps.push_back(M.comps[w]);
  r.glue.assign(M.glue.begin(), M.glue.begin() + len);
  return r;
}

struct CellTruncData {
  CellObject low, high;
  CellMap to_M, from_M;
};

CellTruncData cell_truncate(const CellObject& M, int k, TruncKind kind, int pshift) {
  if (kind == TruncKind::Perverse) {
    CellTTrunc t = cell_t_truncate(M, k);
    return {t.low, t.high, t.to_M, t.from_M};
  }
  CellWTruncFull t = cell_w_truncate(M, k);
  (void)pshift;
  return {t.low, t.high, t.to_M, t.from_M};
}

}  // namespace

bool cell_in_lower_aisle(const CellObject& M, int k, TruncKind kind) {
  if (kind == TruncKind::Perverse) {
    for (auto& [pd, h] : perverse_homology(M))
      if (pd > k && !h.is_zero()) return false;
    return true;
  }
  CellMinimizeResult mr = cell_minimize(M);
  for (auto& g : mr.min.egens())
    if (gen_weight(g) > k) return false;
  return true;
}

bool cell_in_upper_aisle(const CellObject& M, int k, TruncKind kind) {
  if (kind == TruncKind::Perverse) {
    for (auto& [pd, h] : perverse_homology(M))
      if (pd < k && !h.is_zero()) return false;
    return true;
  }
  CellMinimizeResult mr = cell_minimize(M);
  for (auto& g : mr.min.egens())
    if (gen_weight(g) < k) return false;
  return true;
}

bool strat_in_lower_aisle(const StratAtlas& A, const StratObject& M, int k, TruncKind kind) {
  for (int w = 0; w < M.len(); ++w)
    if (!cell_in_lower_aisle(M.comps[w], k, kind)) return false;
  return true;
}

// iota_w^! M: peel the strata above w by fibs of the gluing, then take the
// w-component.
CellObject cell_iota_shriek(const StratAtlas& A, const StratObject& M, int w) {
  StratObject cur = M;
  for (int len = M.len(); len > w + 1; --len) {
    StratObject Mz = prefix_obj(cur, len - 1);
    StratObject KMu = ktensor(A, len - 1, cur.comps[len - 1]);
    cur = strat_shift(A, strat_cone(A, *cur.glue[len - 1], Mz, KMu), -1);
  }
  return cur.comps[w];
}

bool strat_in_upper_aisle(const StratAtlas& A, const StratObject& M, int k, TruncKind kind) {
  for (int w = 0; w < M.len(); ++w)
    if (!cell_in_upper_aisle(cell_iota_shriek(A, M, w), k, kind)) return false;
  return true;
}

StratTrunc strat_truncate(const StratAtlas& A, const StratObject& M, int k, TruncKind kind) {
  const Ring& R = A.ring();
  int len = M.len();
  if (len == 1) {
    CellTruncData t = cell_truncate(M.comps[0], k, kind, 0);
    StratTrunc out;
    out.low.comps.push_back(t.low);
    out.low.glue.resize(1);
    out.high.comps.push_back(t.high);
    out.high.glue.resize(1);
    out.to_M = stratmap_zero(A, out.low, M, 0);
    out.to_M.comps[0] = [&] {
      std::vector<Scalar> v(cell_hom_gens(t.low, M.comps[0], 0).size(), Scalar(0));
      auto gens = cell_hom_gens(t.low, M.comps[0], 0);
      for (size_t i = 0; i < gens.size(); ++i) {
        auto [g, h, T] = gens[i];
        v[i] = t.to_M.entry(static_cast<int>(h), static_cast<int>(g)).coeff(T);
      }
      return v;
    }();
    out.from_M = stratmap_zero(A, M, out.high, 0);
    out.from_M.comps[0] = [&] {
      std::vector<Scalar> v(cell_hom_gens(M.comps[0], t.high, 0).size(), Scalar(0));
      auto gens = cell_hom_gens(M.comps[0], t.high, 0);
      for (size_t i = 0; i < gens.size(); ++i) {
        auto [g, h, T] = gens[i];
        v[i] = t.from_M.entry(static_cast<int>(h), static_cast<int>(g)).coeff(T);
      }
      return v;
    }();
    return out;
  }
  int u = len - 1;
  StratObject Mz = prefix_obj(M, u);
  CellTruncData tu = cell_truncate(M.comps[u], k, kind, 0);
  StratObject KPu = ktensor(A, u, tu.low);
  StratObject KMu = ktensor(A, u, M.comps[u]);
  // X := fib( M_Z (+) K P_u --(alpha, -K(incl))--> K M_u )
  StratObject Ssum = strat_dirsum(A, Mz, KPu);
  StratMap kincl = ktensor_map(A, u, tu.to_M);
  StratMap delta = stratmap_zero(A, Ssum, KMu, 0);
  for (int w = 0; w < u; ++w) {
    auto dg = cell_hom_gens(Ssum.comps[w], KMu.comps[w], 0);
    std::map<std::array<uint32_t, 3>, int> pos;
    for (int i = 0; i < static_cast<int>(dg.size()); ++i) pos[dg[i]] = i;
    auto ag = cell_hom_gens(Mz.comps[w], KMu.comps[w], 0);
    for (size_t i = 0; i < ag.size(); ++i) {
      if (M.glue[u]->comps[w][i] == 0) continue;
      auto [g, h, T] = ag[i];
      auto it = pos.find({g, h, T});
      if (it == pos.end()) throw Error(ErrorCode::INTERNAL, "trunc delta embed");
      delta.comps[w][it->second] = M.glue[u]->comps[w][i];
    }
    int off = Mz.comps[w].gen_count();
    auto bg = cell_hom_gens(KPu.comps[w], KMu.comps[w], 0);
    for (size_t i = 0; i < bg.size(); ++i) {
      if (kincl.comps[w][i] == 0) continue;
      auto [g, h, T] = bg[i];
      auto it = pos.find({g + static_cast<uint32_t>(off), h, T});
      if (it == pos.end()) throw Error(ErrorCode::INTERNAL, "trunc delta embed 2");
      delta.comps[w][it->second] = R.normalize(-kincl.comps[w][i]);
    }
  }
  delta.corr.resize(u);
  StratObject X = strat_shift(A, strat_cone(A, delta, Ssum, KMu), -1);
  // recurse on X
  StratTrunc tz = strat_truncate(A, X, k, kind);
  // assemble tau_le: components tz.low below, tu.low on top; top glue is the
  // composite tz.low -> X -> K P_u (block projection), solved as a seeded
  // cycle like the star pushforward
  StratTrunc out;
  out.low.comps = tz.low.comps;
  out.low.comps.push_back(tu.low);
  out.low.glue = tz.low.glue;
  out.low.glue.resize(len);
  // projection X -> K P_u coordinates
  StratMap projP = stratmap_zero(A, X, KPu, 0);
  for (int w = 0; w < u; ++w) {
    int nm = Mz.comps[w].gen_count();
    auto gens = cell_hom_gens(X.comps[w], KPu.comps[w], 0);
    for (size_t i = 0; i < gens.size(); ++i) {
      auto [g, h, T] = gens[i];
      if (T == 0u && static_cast<int>(g) == nm + static_cast<int>(h)) projP.comps[w][i] = 1;
    }
  }
  projP.corr.resize(u);
  StratMap topglue = stratmap_compose(A, tz.low, X, KPu, projP, tz.to_M);
  {
    StratObject lz = prefix_obj(out.low, u);
    StratHomCx Hg(A, lz, KPu, u);
    if (!Hg.is_cycle(topglue)) topglue = Hg.complete_cycle_top(0, topglue);
  }
  out.low.glue[u] = std::make_shared<StratMap>(std::move(topglue));
  // the map to M: below it is (X -> M_Z projection) o tz.to_M, on top tu.to_M
  StratMap projM = stratmap_zero(A, X, Mz, 0);
  for (int w = 0; w < u; ++w) {
    auto gens = cell_hom_gens(X.comps[w], Mz.comps[w], 0);
    for (size_t i = 0; i < gens.size(); ++i) {
      auto [g, h, T] = gens[i];
      if (T == 0u && static_cast<int>(g) == static_cast<int>(h)) projM.comps[w][i] = 1;
    }
  }
  projM.corr.resize(u);
  StratMap below = stratmap_compose(A, tz.low, X, Mz, projM, tz.to_M);
  out.to_M = below;
  out.to_M.comps.push_back(std::vector<Scalar>(
      cell_hom_gens(tu.low, M.comps[u], 0).size(), Scalar(0)));
  {
    auto gens = cell_hom_gens(tu.low, M.comps[u], 0);
    for (size_t i = 0; i < gens.size(); ++i) {
      auto [g, h, T] = gens[i];
      out.to_M.comps[u][i] = tu.to_M.entry(static_cast<int>(h), static_cast<int>(g)).coeff(T);
    }
  }
  out.to_M.corr.resize(len);
  {
    StratHomCx Hm(A, out.low, M, len);
    if (!Hm.is_cycle(out.to_M)) {
      // tautological homotopy of the X-fib composed with the recursion's map
      StratMap theta = fib_taut_homotopy(A, X, Ssum, KMu, delta);
      // restrict theta's target from K M_u-of-the-sum to K M_u directly: its
      // coordinates already live there
      StratMap ctop = stratmap_compose(A, tz.low, X, KMu, theta, tz.to_M);
      out.to_M.corr[u] = std::make_shared<StratMap>(std::move(ctop));
      if (!Hm.is_cycle(out.to_M)) {
        out.to_M.corr[u] = nullptr;
        try {
          out.to_M = Hm.complete_cycle_top(0, out.to_M);
        } catch (const Error&) {
          StratMap partial = stratmap_zero(A, out.low, M, 0);
          partial.comps = out.to_M.comps;
          out.to_M = Hm.complete_cycle(0, partial);
        }
      }
    }
  }
  out.high = strat_cone(A, out.to_M, out.low, M);
  out.from_M = strat_cone_include_target(A, out.to_M, out.low, M);
  // assertions
  if (!strat_in_lower_aisle(A, out.low, k, kind))
    throw Error(ErrorCode::TRUNCATION_ASSERT_FAILED, "lower part escapes the aisle");
  if (!strat_in_upper_aisle(A, out.high, k + 1, kind))
    throw Error(ErrorCode::TRUNCATION_ASSERT_FAILED, "upper part escapes the aisle");
  return out;
}

bool is_pointwise_pure(const StratAtlas& A, const StratObject& M, char variant) {
  for (int w = 0; w < M.len(); ++w) {
    CellObject c(A.ring(), 0, 0);
    if (variant == '*') {
      c = M.comps[w];
    } else {
      c = cell_iota_shriek(A, M, w);
    }
    if (!cell_in_lower_aisle(c, 0, TruncKind::Weight)) return false;
    if (!cell_in_upper_aisle(c, 0, TruncKind::Weight)) return false;
  }
  return true;
}

}  // namespace strat
