#include "strat/polymod.hpp"

#include <algorithm>
#include <functional>

namespace strat {

namespace {

// Kernel and image bases computed per twist block, so columns stay
// twist-homogeneous (a wholesale SNF would mix twists).
struct GradedCols {
  Mat mat;
  std::vector<int> tws;
};

GradedCols graded_kernel(const Ring& R, const Mat& d, const std::vector<int>& tgt_tws,
                         const std::vector<int>& src_tws) {
  std::vector<int> distinct = src_tws;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  GradedCols out;
  out.mat = Mat::zero(static_cast<int>(src_tws.size()), 0);
  for (int tw : distinct) {
    std::vector<int> cols, rows;
    for (int i = 0; i < static_cast<int>(src_tws.size()); ++i)
      if (src_tws[i] == tw) cols.push_back(i);
    for (int i = 0; i < static_cast<int>(tgt_tws.size()); ++i)
      if (tgt_tws[i] == tw) rows.push_back(i);
    Mat blk = d.submatrix(rows, cols);
    Mat K = kernel_basis(R, blk);
    Mat lift(static_cast<int>(src_tws.size()), K.cols());
    for (int c = 0; c < K.cols(); ++c)
      for (size_t i = 0; i < cols.size(); ++i) lift(cols[i], c) = K(static_cast<int>(i), c);
    out.mat = Mat::hcat(out.mat, lift);
    for (int c = 0; c < K.cols(); ++c) out.tws.push_back(tw);
  }
  return out;
}

GradedCols graded_image(const Ring& R, const Mat& d, const std::vector<int>& tgt_tws,
                        const std::vector<int>& src_tws) {
  std::vector<int> distinct = src_tws;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  GradedCols out;
  out.mat = Mat::zero(static_cast<int>(tgt_tws.size()), 0);
  for (int tw : distinct) {
    std::vector<int> cols, rows;
    for (int i = 0; i < static_cast<int>(src_tws.size()); ++i)
      if (src_tws[i] == tw) cols.push_back(i);
    for (int i = 0; i < static_cast<int>(tgt_tws.size()); ++i)
      if (tgt_tws[i] == tw) rows.push_back(i);
    Mat blk = d.submatrix(rows, cols);
    SmithResult s = smith(R, blk);
    for (int c = 0; c < s.rank; ++c) {
      Mat v(static_cast<int>(cols.size()), 1);
      for (size_t i = 0; i < cols.size(); ++i) v(static_cast<int>(i), 0) = s.V(static_cast<int>(i), c);
      Mat im = blk.mul(R, v);
      Mat lift(static_cast<int>(tgt_tws.size()), 1);
      for (size_t i = 0; i < rows.size(); ++i) lift(rows[i], 0) = im(static_cast<int>(i), 0);
      out.mat = Mat::hcat(out.mat, lift);
      out.tws.push_back(tw);
    }
  }
  return out;
}

}  // namespace

Mat PolyModule::z(int i, int c) const {
  auto it = z_.find({i, c});
  if (it != z_.end()) return it->second;
  return Mat::zero(cx_.dim(c), cx_.dim(c));
}

void PolyModule::set_z(int i, int c, Mat m) {
  if (m.rows() != cx_.dim(c) || m.cols() != cx_.dim(c))
    throw Error(ErrorCode::VALIDATION_ERROR, "z-action shape mismatch");
  m.normalize(ring());
  if (m.is_zero())
    z_.erase({i, c});
  else
    z_[{i, c}] = std::move(m);
}

void PolyModule::validate() const {
  cx_.validate();
  const Ring& R = ring();
  for (auto& [ic, mt] : z_) {
    const auto& tws = cx_.gens(ic.second);
    for (int a = 0; a < mt.rows(); ++a)
      for (int b = 0; b < mt.cols(); ++b)
        if (mt(a, b) != 0 && tws[a] != tws[b] + 1)
          throw Error(ErrorCode::VALIDATION_ERROR, "z-action does not raise twist by 1");
  }
  for (int c = cx_.min_deg(); c < cx_.max_deg(); ++c)
    for (int i = 0; i < m_; ++i) {
      Mat lhs = cx_.diff(c).mul(R, z(i, c));
      Mat rhs = z(i, c + 1).mul(R, cx_.diff(c));
      if (lhs != rhs) throw Error(ErrorCode::VALIDATION_ERROR, "z does not commute with d");
    }
  for (int c = cx_.min_deg(); c <= cx_.max_deg(); ++c)
    for (int i = 0; i < m_; ++i)
      for (int j = i + 1; j < m_; ++j)
        if (z(i, c).mul(R, z(j, c)) != z(j, c).mul(R, z(i, c)))
          throw Error(ErrorCode::VALIDATION_ERROR, "z-actions do not commute");
}

PolyModule PolyModule::shifted(int k) const {
  PolyModule r(ring(), n_, m_);
  r.cx_ = cx_.shifted(k);
  for (auto& [ic, mt] : z_) r.z_[{ic.first, ic.second - k}] = mt;
  return r;
}

PolyModule PolyModule::twisted(int q) const {
  PolyModule r(ring(), n_, m_);
  r.cx_ = cx_.twisted(q);
  r.z_ = z_;
  return r;
}

// Basis of the Koszul dual: elements a_alpha (x) xi_T e_g with label
// tw_g - |T| - |alpha| >= min generator label (lower labels are acyclic).
namespace {
struct KDBasis {
  struct Elt {
    std::vector<int> alpha;
    int g;
    uint32_t T;
  };
  std::map<int, std::vector<Elt>> by_deg;
  std::map<std::tuple<std::vector<int>, int, uint32_t>, std::pair<int, int>> pos;
};

void enumerate_alphas(int m, int cap, std::vector<std::vector<int>>* out) {
  if (m == 0) {
    if (cap >= 0) out->push_back({});
    return;
  }
  std::vector<int> a(m, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == m) {
      out->push_back(a);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      a[i] = v;
      rec(i + 1, left - v);
    }
    a[i] = 0;
  };
  rec(0, cap);
}

KDBasis kd_basis(const CellObject& M) {
  KDBasis B;
  if (M.gen_count() == 0) return B;
  int m = M.m();
  int tmin = 1 << 30;
  for (auto& g : M.egens()) tmin = std::min(tmin, g.tw);
  for (int g = 0; g < M.gen_count(); ++g)
    for (uint32_t T = 0; T < (1u << m); ++T) {
      int k = __builtin_popcount(T);
      int cap = M.egen(g).tw - k - tmin;
      if (cap < 0) continue;
      std::vector<std::vector<int>> alphas;
      enumerate_alphas(m, cap, &alphas);
      for (auto& a : alphas) {
        int deg = M.egen(g).deg + k;
        B.pos[{a, g, T}] = {deg, static_cast<int>(B.by_deg[deg].size())};
        B.by_deg[deg].push_back({a, g, T});
      }
    }
  return B;
}
}  // namespace

PolyModule koszul_dual(const CellObject& M) {
  const Ring& R = M.ring();
  int m = M.m();
  PolyModule P(R, M.n(), m);
  KDBasis B = kd_basis(M);
  FlatCell F = flatten(M);
  for (auto& [deg, v] : B.by_deg) {
    std::vector<int> tws;
    for (auto& e : v) {
      int asum = 0;
      for (int x : e.alpha) asum += x;
      tws.push_back(M.egen(e.g).tw - __builtin_popcount(e.T) - asum);
    }
    P.cx().set_term(deg, std::move(tws));
  }
  // D = delta - contraction
  for (auto& [deg, v] : B.by_deg) {
    int n1 = P.cx().dim(deg + 1);
    if (n1 == 0) continue;
    Mat d(n1, static_cast<int>(v.size()));
    bool nz = false;
    for (int col = 0; col < static_cast<int>(v.size()); ++col) {
      const auto& e = v[col];
      auto fp = F.pos.at({e.g, e.T});
      Mat df = F.cx.diff(fp.first);
      for (int row = 0; row < df.rows(); ++row) {
        if (df(row, fp.second) == 0) continue;
        auto [h, T2] = F.basis.at(fp.first + 1)[row];
        auto it = B.pos.find({e.alpha, h, T2});
        if (it == B.pos.end() || it->second.first != deg + 1) continue;
        d(it->second.second, col) = R.normalize(d(it->second.second, col) + df(row, fp.second));
        nz = true;
      }
      for (int i = 0; i < m; ++i) {
        if (e.alpha[i] == 0) continue;
        std::vector<int> a2 = e.alpha;
        a2[i] -= 1;
        Mat xi = F.xi[i].comp(fp.first);
        for (int row = 0; row < xi.rows(); ++row) {
          if (xi(row, fp.second) == 0) continue;
          auto [h, T2] = F.basis.at(fp.first + 1)[row];
          auto it = B.pos.find({a2, h, T2});
          if (it == B.pos.end() || it->second.first != deg + 1) continue;
          d(it->second.second, col) = R.normalize(d(it->second.second, col) - xi(row, fp.second));
          nz = true;
        }
      }
    }
    if (nz) P.cx().set_diff(deg, std::move(d));
  }
  for (int i = 0; i < m; ++i) {
    for (auto& [deg, v] : B.by_deg) {
      Mat zm(static_cast<int>(v.size()), static_cast<int>(v.size()));
      bool nz = false;
      for (int col = 0; col < static_cast<int>(v.size()); ++col) {
        const auto& e = v[col];
        if (e.alpha[i] == 0) continue;
        std::vector<int> a2 = e.alpha;
        a2[i] -= 1;
        auto it = B.pos.find({a2, e.g, e.T});
        if (it == B.pos.end() || it->second.first != deg) continue;
        zm(it->second.second, col) = 1;
        nz = true;
      }
      if (nz) P.set_z(i, deg, std::move(zm));
    }
  }
  return P;
}

CellObject koszul_undual(const PolyModule& P) {
  const Ring& R = P.ring();
  int m = P.m();
  CellObject M(R, P.n(), m);
  std::map<std::pair<int, int>, int> gid;
  for (auto& [c, tws] : P.cx().terms())
    for (int i = 0; i < static_cast<int>(tws.size()); ++i) gid[{c, i}] = M.add_gen(c, tws[i]);
  for (auto& [c, d] : P.cx().diffs())
    for (int row = 0; row < d.rows(); ++row)
      for (int col = 0; col < d.cols(); ++col) {
        if (d(row, col) == 0) continue;
        M.set_dentry(gid.at({c + 1, row}), gid.at({c, col}), EElem::scalar(m, d(row, col)));
      }
  for (auto& [ic, zm] : P.zcomps()) {
    int i = ic.first, c = ic.second;
    for (int row = 0; row < zm.rows(); ++row)
      for (int col = 0; col < zm.cols(); ++col) {
        if (zm(row, col) == 0) continue;
        int tgt = gid.at({c, row}), src = gid.at({c, col});
        EElem cur = M.dentry(tgt, src);
        M.set_dentry(tgt, src, cur.add(R, EElem::monomial(m, 1u << i, zm(row, col))));
      }
  }
  return M;
}

CellMap koszul_counit(const CellObject& M) {
  int m = M.m();
  PolyModule P = koszul_dual(M);
  CellObject U = koszul_undual(P);
  KDBasis B = kd_basis(M);
  CellMap eps(U, M);
  int uid = 0;
  std::map<std::pair<int, int>, int> ugid;
  for (auto& [c, tws] : P.cx().terms())
    for (int i = 0; i < static_cast<int>(tws.size()); ++i) ugid[{c, i}] = uid++;
  for (auto& [deg, v] : B.by_deg)
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      const auto& e = v[i];
      bool zero_alpha = true;
      for (int a : e.alpha)
        if (a) zero_alpha = false;
      if (!zero_alpha) continue;
      eps.set_entry(e.g, ugid.at({deg, i}), EElem::monomial(m, e.T, Scalar(1)));
    }
  return eps;
}

HomTable polymod_hom(const PolyModule& P, const PolyModule& Q) {
  if (P.m() != Q.m() || !(P.ring() == Q.ring()))
    throw Error(ErrorCode::SHAPE_MISMATCH, "polymod hom across shapes");
  const Ring& R = P.ring();
  int m = P.m();
  // Hom_R over the semifree resolution R (x) Wedge(Lambda^m) (x) P:
  // basis psi_{S,(cp,ip),(cq,iq)} at (deg = cq - cp + |S|, tw = tw_q - tw_p - |S|).
  struct HB {
    uint32_t S;
    int cp, ip, cq, iq;
  };
  GradedComplex H(R);
  std::map<int, std::vector<HB>> basis;
  std::map<std::tuple<uint32_t, int, int, int, int>, std::pair<int, int>> pos;
  for (uint32_t S = 0; S < (1u << m); ++S) {
    int k = __builtin_popcount(S);
    for (auto& [cp, ptws] : P.cx().terms())
      for (auto& [cq, qtws] : Q.cx().terms()) {
        int deg = cq - cp + k;
        for (int ip = 0; ip < static_cast<int>(ptws.size()); ++ip)
          for (int iq = 0; iq < static_cast<int>(qtws.size()); ++iq)
            basis[deg].push_back({S, cp, ip, cq, iq});
      }
  }
  for (auto& [deg, v] : basis) {
    std::sort(v.begin(), v.end(), [](const HB& a, const HB& b) {
      return std::tie(a.S, a.cp, a.ip, a.cq, a.iq) < std::tie(b.S, b.cp, b.ip, b.cq, b.iq);
    });
    std::vector<int> tws;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      const HB& b = v[i];
      pos[{b.S, b.cp, b.ip, b.cq, b.iq}] = {deg, i};
      tws.push_back(Q.cx().gens(b.cq)[b.iq] - P.cx().gens(b.cp)[b.ip] - __builtin_popcount(b.S));
    }
    H.set_term(deg, std::move(tws));
  }
  for (auto& [deg, v] : basis) {
    int n1 = H.dim(deg + 1);
    if (n1 == 0) continue;
    Mat d(n1, static_cast<int>(v.size()));
    Scalar spsi = (deg % 2 == 0) ? Scalar(1) : Scalar(-1);
    auto put = [&](uint32_t S, int cp, int ip, int cq, int iq, int col, const Scalar& c) {
      if (c == 0) return;
      auto it = pos.find({S, cp, ip, cq, iq});
      if (it == pos.end() || it->second.first != deg + 1) return;
      d(it->second.second, col) = R.normalize(d(it->second.second, col) + c);
    };
    for (int col = 0; col < static_cast<int>(v.size()); ++col) {
      const HB& b = v[col];
      Mat dq = Q.cx().diff(b.cq);
      for (int r = 0; r < dq.rows(); ++r) put(b.S, b.cp, b.ip, b.cq + 1, r, col, dq(r, b.iq));
      Mat dp = P.cx().diff(b.cp - 1);
      Scalar sS = (__builtin_popcount(b.S) % 2 == 0) ? Scalar(1) : Scalar(-1);
      for (int c2 = 0; c2 < dp.cols(); ++c2)
        put(b.S, b.cp - 1, c2, b.cq, b.iq, col,
            R.normalize(Scalar(-1) * spsi * sS * dp(b.ip, c2)));
      for (int i = 0; i < m; ++i) {
        if (b.S >> i & 1u) continue;
        uint32_t S2 = b.S | (1u << i);
        int ksign = shuffle_sign(1u << i, b.S);
        Mat zq = Q.z(i, b.cq);
        for (int r = 0; r < zq.rows(); ++r)
          put(S2, b.cp, b.ip, b.cq, r, col, R.normalize(Scalar(-1) * spsi * ksign * zq(r, b.iq)));
        Mat zp = P.z(i, b.cp);
        for (int c2 = 0; c2 < zp.cols(); ++c2)
          put(S2, b.cp, c2, b.cq, b.iq, col, R.normalize(spsi * Scalar(ksign) * zp(b.ip, c2)));
      }
    }
    if (!d.is_zero()) H.set_diff(deg, std::move(d));
  }
  H.validate();
  return hom_table_of(H);
}

PolyTrunc polymod_truncate(const PolyModule& P, int c) {
  const Ring& R = P.ring();
  PolyTrunc t{PolyModule(R, P.n(), P.m()), PolyModule(R, P.n(), P.m()), {}, {}};
  GradedCols K = graded_kernel(R, P.cx().diff(c), P.cx().gens(c + 1), P.cx().gens(c));
  for (auto& [deg, tws] : P.cx().terms()) {
    if (deg < c) t.low.cx().set_term(deg, tws);
    if (deg > c) t.high.cx().set_term(deg, tws);
  }
  t.low.cx().set_term(c, K.tws);
  for (auto& [deg, d] : P.cx().diffs()) {
    if (deg < c - 1) t.low.cx().set_diff(deg, d);
    if (deg > c) t.high.cx().set_diff(deg, d);
  }
  if (P.cx().dim(c - 1) > 0 && !K.tws.empty()) {
    Mat X;
    if (!solve(R, K.mat, P.cx().diff(c - 1), &X))
      throw Error(ErrorCode::INTERNAL, "truncation: image not in kernel");
    t.low.cx().set_diff(c - 1, X);
  }
  GradedCols I = graded_image(R, P.cx().diff(c), P.cx().gens(c + 1), P.cx().gens(c));
  t.high.cx().set_term(c, I.tws);
  if (!I.tws.empty() && P.cx().dim(c + 1) > 0) t.high.cx().set_diff(c, I.mat);
  for (int i = 0; i < P.m(); ++i) {
    for (auto& [deg, tws] : P.cx().terms()) {
      if (deg < c) {
        Mat zm = P.z(i, deg);
        if (!zm.is_zero()) t.low.set_z(i, deg, zm);
      }
      if (deg > c) {
        Mat zm = P.z(i, deg);
        if (!zm.is_zero()) t.high.set_z(i, deg, zm);
      }
    }
    if (!K.tws.empty()) {
      Mat Y;
      if (!solve(R, K.mat, P.z(i, c).mul(R, K.mat), &Y))
        throw Error(ErrorCode::INTERNAL, "truncation: z does not preserve kernel");
      if (!Y.is_zero()) t.low.set_z(i, c, Y);
    }
    if (!I.tws.empty()) {
      Mat Y;
      if (!solve(R, I.mat, P.z(i, c + 1).mul(R, I.mat), &Y))
        throw Error(ErrorCode::INTERNAL, "truncation: z does not preserve image");
      if (!Y.is_zero()) t.high.set_z(i, c, Y);
    }
  }
  for (auto& [deg, tws] : P.cx().terms()) {
    if (deg < c) t.incl[deg] = Mat::identity(static_cast<int>(tws.size()));
    if (deg > c) t.proj[deg] = Mat::identity(static_cast<int>(tws.size()));
  }
  if (!K.tws.empty()) t.incl[c] = K.mat;
  if (!I.tws.empty()) {
    Mat prj;
    if (!solve(R, I.mat, P.cx().diff(c), &prj))
      throw Error(ErrorCode::INTERNAL, "truncation: projection failed");
    t.proj[c] = prj;
  }
  return t;
}

std::map<int, GradedModule> perverse_homology(const CellObject& M) {
  PolyModule P = koszul_dual(M);
  std::map<int, GradedModule> out;
  int s = M.n() + M.m();
  for (auto& [c, h] : P.cx().homology_all()) out[c + s] = h;
  return out;
}

CellTTrunc cell_t_truncate(const CellObject& M, int k) {
  const Ring& R = M.ring();
  int s = k - (M.n() + M.m());
  PolyModule P = koszul_dual(M);
  PolyTrunc pt = polymod_truncate(P, s);
  CellObject Ulow = koszul_undual(pt.low);
  CellObject U = koszul_undual(P);
  CellMap incl(Ulow, U);
  {
    std::map<std::pair<int, int>, int> gid_low, gid_full;
    int a = 0, b = 0;
    for (auto& [c, tws] : pt.low.cx().terms())
      for (int i = 0; i < static_cast<int>(tws.size()); ++i) gid_low[{c, i}] = a++;
    for (auto& [c, tws] : P.cx().terms())
      for (int i = 0; i < static_cast<int>(tws.size()); ++i) gid_full[{c, i}] = b++;
    for (auto& [c, mt] : pt.incl)
      for (int r = 0; r < mt.rows(); ++r)
        for (int cc = 0; cc < mt.cols(); ++cc) {
          if (mt(r, cc) == 0) continue;
          incl.set_entry(gid_full.at({c, r}), gid_low.at({c, cc}),
                         EElem::scalar(M.m(), mt(r, cc)));
        }
  }
  CellMap eps = koszul_counit(M);
  CellMap f = eps.compose(incl);
  CellMinimizeResult lowmin = cell_minimize(Ulow);
  CellTTrunc out{lowmin.min, CellObject(R, M.n(), M.m()), f.compose(lowmin.from_min),
                 CellMap::zero(M, M)};
  CellObject cn = cell_cone(out.to_M);
  CellMinimizeResult conemin = cell_minimize(cn);
  out.high = conemin.min;
  out.from_M = conemin.to_min.compose(cell_cone_include_target(out.to_M));
  for (auto& [c, h] : pt.low.cx().homology_all())
    if (c > s && !h.is_zero())
      throw Error(ErrorCode::TRUNCATION_ASSERT_FAILED, "low part exceeds perverse degree");
  for (auto& [c, h] : pt.high.cx().homology_all())
    if (c <= s && !h.is_zero())
      throw Error(ErrorCode::TRUNCATION_ASSERT_FAILED, "high part below perverse degree");
  return out;
}

CellWTruncFull cell_w_truncate(const CellObject& M, int k) {
  CellMinimizeResult mr = cell_minimize(M);
  CellWTrunc wt = cell_brutal_weight_trunc(mr.min, k);
  CellWTruncFull out{wt.low, wt.high, mr.from_min.compose(wt.incl),
                     wt.proj.compose(mr.to_min)};
  GradedComplex H = cell_hom_complex(out.low, out.high);
  for (int j = 1; j <= H.max_deg(); ++j)
    for (int i = 0; i < H.dim(j); ++i)
      if (H.gens(j)[i] == 0)
        throw Error(ErrorCode::TRUNCATION_ASSERT_FAILED, "weight truncation orthogonality failed");
  return out;
}

}  // namespace strat
