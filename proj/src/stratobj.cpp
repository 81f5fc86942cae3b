#include "strat/stratobj.hpp"

#include <algorithm>
#include <functional>

namespace strat {

// ---------------------------------------------------------------------------
// cell-level coordinate toolkit: hom-complex elements as coordinate vectors
// over cell_hom_gens(M, N, deg)
// ---------------------------------------------------------------------------

namespace {

std::vector<Scalar> cell_coords_zero(const CellObject& M, const CellObject& N, int deg) {
  return std::vector<Scalar>(cell_hom_gens(M, N, deg).size(), Scalar(0));
}

std::vector<Scalar> cell_coords_of_map(const CellObject& M, const CellObject& N,
                                       const CellMap& f) {
  auto gens = cell_hom_gens(M, N, 0);
  std::vector<Scalar> out(gens.size(), Scalar(0));
  for (size_t i = 0; i < gens.size(); ++i) {
    auto [g, h, T] = gens[i];
    out[i] = f.entry(static_cast<int>(h), static_cast<int>(g)).coeff(T);
  }
  return out;
}

// composition of hom elements: psi: e_g -> xi_T f_h (degree qpsi),
// phi: f_h -> xi_S k_l (degree qphi); phi(xi_T f_h) = (-1)^{|T| qphi} xi_T phi(f_h).
std::vector<Scalar> cell_compose_coords(const Ring& R, const CellObject& M, const CellObject& N,
                                        const CellObject& P, int qphi,
                                        const std::vector<Scalar>& phi, int qpsi,
                                        const std::vector<Scalar>& psi) {
  auto gpsi = cell_hom_gens(M, N, qpsi);
  auto gphi = cell_hom_gens(N, P, qphi);
  auto gout = cell_hom_gens(M, P, qphi + qpsi);
  std::map<std::array<uint32_t, 3>, int> opos;
  for (int i = 0; i < static_cast<int>(gout.size()); ++i) opos[gout[i]] = i;
  std::vector<Scalar> out(gout.size(), Scalar(0));
  for (size_t a = 0; a < gpsi.size(); ++a) {
    if (psi[a] == 0) continue;
    auto [g, h, T] = gpsi[a];
    int tk = __builtin_popcount(T);
    Scalar st = ((tk * qphi) % 2 == 0) ? Scalar(1) : Scalar(-1);
    for (size_t b = 0; b < gphi.size(); ++b) {
      if (phi[b] == 0) continue;
      auto [h2, l, S] = gphi[b];
      if (h2 != h) continue;
      if (T & S) continue;
      Scalar c = R.normalize(psi[a] * phi[b] * st * shuffle_sign(T, S));
      if (c == 0) continue;
      auto it = opos.find({g, l, T | S});
      if (it == opos.end()) throw Error(ErrorCode::INTERNAL, "compose: missing hom generator");
      out[it->second] = R.normalize(out[it->second] + c);
    }
  }
  return out;
}

// the hom-complex differential applied to a coordinate vector
std::vector<Scalar> cell_hom_diff_coords(const CellObject& M, const CellObject& N, int deg,
                                         const std::vector<Scalar>& v) {
  GradedComplex H = cell_hom_complex(M, N);
  auto gout = cell_hom_gens(M, N, deg + 1);
  std::vector<Scalar> out(gout.size(), Scalar(0));
  Mat d = H.diff(deg);
  for (int r = 0; r < d.rows(); ++r) {
    Scalar s(0);
    for (int c = 0; c < d.cols(); ++c)
      if (v[c] != 0 && d(r, c) != 0) s += d(r, c) * v[c];
    out[r] = M.ring().normalize(s);
  }
  return out;
}

// flatten a degree-q hom element to the underlying graded complexes:
// f(xi_{T'} e) = (-1)^{q |T'|} xi_{T'} f(e)
std::vector<Scalar> cell_hom_flat_coords(const CellObject& M, const CellObject& N, int q,
                                         const std::vector<Scalar>& v, const FlatCell& FM,
                                         const FlatCell& FN) {
  const Ring& R = M.ring();
  int m = M.m();
  auto gens = cell_hom_gens(M, N, q);
  // output indexed over hom_gens(FM.cx, FN.cx, q): (p, i, j)
  auto fg = hom_gens(FM.cx, FN.cx, q);
  std::map<std::array<int, 3>, int> fpos;
  for (int i = 0; i < static_cast<int>(fg.size()); ++i) fpos[fg[i]] = i;
  std::vector<Scalar> out(fg.size(), Scalar(0));
  for (size_t a = 0; a < gens.size(); ++a) {
    if (v[a] == 0) continue;
    auto [g, h, T] = gens[a];
    for (uint32_t Tp = 0; Tp < (1u << m); ++Tp) {
      // source flat basis (g, Tp) maps to (-1)^{q|Tp|} xi_Tp xi_T f_h
      if (Tp & T) continue;
      int pk = __builtin_popcount(Tp);
      Scalar s = ((q * pk) % 2 == 0) ? Scalar(1) : Scalar(-1);
      s = R.normalize(s * shuffle_sign(Tp, T) * v[a]);
      auto sp = FM.pos.at({static_cast<int>(g), Tp});
      auto tp = FN.pos.at({static_cast<int>(h), Tp | T});
      auto it = fpos.find({sp.first, sp.second, tp.second});
      if (it == fpos.end()) throw Error(ErrorCode::INTERNAL, "flat coords: missing generator");
      out[it->second] = R.normalize(out[it->second] + s);
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// atlas
// ---------------------------------------------------------------------------

int StratAtlas::index_of(const std::string& id) const {
  for (int i = 0; i < count(); ++i)
    if (strata_[i].id == id) return i;
  throw Error(ErrorCode::VALIDATION_ERROR, "unknown stratum '" + id + "'");
}

void StratAtlas::set_kernel(int k, StratObject K, StratMap ug) {
  if (static_cast<int>(kernels_.size()) <= k) {
    kernels_.resize(k + 1);
    unit_glue_.resize(k + 1);
  }
  kernels_[k] = std::move(K);
  unit_glue_[k] = std::make_shared<StratMap>(std::move(ug));
}

bool StratAtlas::affine_only() const {
  for (auto& s : strata_)
    if (s.m != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// object algebra
// ---------------------------------------------------------------------------

StratObject strat_zero(const StratAtlas& A, int len) {
  StratObject M;
  for (int w = 0; w < len; ++w)
    M.comps.push_back(CellObject(A.ring(), A.stratum(w).n, A.stratum(w).m));
  M.glue.resize(len);
  for (int k = 1; k < len; ++k) {
    StratMap z;
    z.deg = 0;
    for (int w = 0; w < k; ++w) z.comps.push_back({});
    z.corr.resize(k);
    M.glue[k] = std::make_shared<StratMap>(std::move(z));
  }
  return M;
}

StratMap stratmap_zero(const StratAtlas& A, const StratObject& M, const StratObject& N, int deg) {
  StratMap f;
  f.deg = deg;
  int r = M.len();
  for (int w = 0; w < r; ++w) f.comps.push_back(cell_coords_zero(M.comps[w], N.comps[w], deg));
  f.corr.resize(r);
  return f;
}

StratMap stratmap_identity(const StratAtlas& A, const StratObject& M) {
  StratMap f = stratmap_zero(A, M, M, 0);
  for (int w = 0; w < M.len(); ++w) {
    auto gens = cell_hom_gens(M.comps[w], M.comps[w], 0);
    for (size_t i = 0; i < gens.size(); ++i) {
      auto [g, h, T] = gens[i];
      if (T == 0u && g == h) f.comps[w][i] = 1;
    }
  }
  return f;
}

bool strat_is_strictly_zero(const StratObject& M) {
  for (auto& c : M.comps)
    if (!c.is_zero_object()) return false;
  return true;
}

StratObject strat_shift(const StratAtlas& A, const StratObject& M, int k) {
  StratObject r = M;
  for (auto& c : r.comps) c = c.shifted(k);
  for (int j = 1; j < r.len(); ++j)
    if (r.glue[j]) r.glue[j] = std::make_shared<StratMap>(stratmap_shift(A, *r.glue[j], k));
  return r;
}

StratObject strat_twist(const StratAtlas& A, const StratObject& M, int q) {
  StratObject r = M;
  for (auto& c : r.comps) c = c.twisted(q);
  for (int j = 1; j < r.len(); ++j)
    if (r.glue[j]) r.glue[j] = std::make_shared<StratMap>(*r.glue[j]);
  return r;
}

StratMap stratmap_shift(const StratAtlas& A, const StratMap& f, int k) {
  // coordinates are stable under shifting both source and target
  return f;
}

StratMap stratmap_twist(const StratAtlas& A, const StratMap& f, int q) { return f; }

StratMap stratmap_add(const StratAtlas& A, const StratMap& f, const StratMap& g) {
  const Ring& R = A.ring();
  StratMap r = f;
  for (size_t w = 0; w < r.comps.size(); ++w)
    for (size_t i = 0; i < r.comps[w].size(); ++i)
      r.comps[w][i] = R.normalize(r.comps[w][i] + g.comps[w][i]);
  for (size_t k = 0; k < r.corr.size(); ++k) {
    const StratMap* gc = g.correction(static_cast<int>(k));
    if (!gc) continue;
    if (r.corr[k])
      r.corr[k] = std::make_shared<StratMap>(stratmap_add(A, *r.corr[k], *gc));
    else
      r.corr[k] = std::make_shared<StratMap>(*gc);
  }
  return r;
}

StratMap stratmap_scale(const StratAtlas& A, const StratMap& f, const Scalar& c) {
  const Ring& R = A.ring();
  StratMap r = f;
  for (auto& comp : r.comps)
    for (auto& x : comp) x = R.normalize(x * c);
  for (auto& cr : r.corr)
    if (cr) cr = std::make_shared<StratMap>(stratmap_scale(A, *cr, c));
  return r;
}

StratObject strat_dirsum(const StratAtlas& A, const StratObject& M, const StratObject& N) {
  StratObject r;
  int len = M.len();
  for (int w = 0; w < len; ++w) r.comps.push_back(M.comps[w].direct_sum(N.comps[w]));
  r.glue.resize(len);
  for (int k = 1; k < len; ++k) {
    StratObject Mz, Nz, rz;
    for (int w = 0; w < k; ++w) {
      Mz.comps.push_back(M.comps[w]);
      Nz.comps.push_back(N.comps[w]);
      rz.comps.push_back(r.comps[w]);
    }
    // target: K (x) (M_k + N_k) = (K (x) M_k) + (K (x) N_k)
    StratObject KM = ktensor(A, k, M.comps[k]);
    StratObject KN = ktensor(A, k, N.comps[k]);
    StratObject Ksum = ktensor(A, k, r.comps[k]);
    // embed the two glue maps block-diagonally; ktensor of a direct sum is
    // the direct sum with interleaved generators, handled by index maps.
    StratMap g = stratmap_zero(A, rz, Ksum, 0);
    auto place = [&](const StratObject& Msrc, const StratObject& Ktgt, const StratMap& gl,
                     bool second) {
      for (int w = 0; w < k; ++w) {
        auto src_g = cell_hom_gens(Msrc.comps[w], Ktgt.comps[w], 0);
        auto dst_g = cell_hom_gens(rz.comps[w], Ksum.comps[w], 0);
        std::map<std::array<uint32_t, 3>, int> dpos;
        for (int i = 0; i < static_cast<int>(dst_g.size()); ++i) dpos[dst_g[i]] = i;
        int soff = second ? M.comps[w].gen_count() : 0;
        // target gen reindex: ktensor gens are (kgen, vgen) with vgen minor
        int mk = M.comps[k].gen_count(), nk = N.comps[k].gen_count();
        for (size_t i = 0; i < src_g.size(); ++i) {
          if (gl.comps[w][i] == 0) continue;
          auto [sg, th, T] = src_g[i];
          int kg = static_cast<int>(th) / (second ? nk : mk);
          int vg = static_cast<int>(th) % (second ? nk : mk);
          int th2 = kg * (mk + nk) + (second ? mk + vg : vg);
          auto it = dpos.find({sg + static_cast<uint32_t>(soff), static_cast<uint32_t>(th2), T});
          if (it == dpos.end()) throw Error(ErrorCode::INTERNAL, "dirsum glue reindex");
          g.comps[w][it->second] = gl.comps[w][i];
        }
      }
    };
    if (M.glue[k]) place(Mz, KM, *M.glue[k], false);
    if (N.glue[k]) place(Nz, KN, *N.glue[k], true);
    // corrections embed the same way; shipped objects have strict glue, and
    // cones produce their own glue directly, so plain dirsum forbids them.
    for (int j = 1; j < k; ++j)
      if ((M.glue[k] && M.glue[k]->correction(j)) || (N.glue[k] && N.glue[k]->correction(j)))
        throw Error(ErrorCode::INTERNAL, "dirsum of objects with glue corrections");
    r.glue[k] = std::make_shared<StratMap>(std::move(g));
  }
  return r;
}

// ---------------------------------------------------------------------------
// kernel tensor
// ---------------------------------------------------------------------------

static CellObject cell_coef_tensor(const CellObject& K, const CellObject& V) {
  // K a cell object on some stratum, V an affine cell object used as a plain
  // coefficient complex; generators (kg, vg) with vg minor.
  const Ring& R = K.ring();
  CellObject r(R, K.n(), K.m());
  int nv = V.gen_count();
  for (int kg = 0; kg < K.gen_count(); ++kg)
    for (int vg = 0; vg < nv; ++vg)
      r.add_gen(K.egen(kg).deg + V.egen(vg).deg, K.egen(kg).tw + V.egen(vg).tw);
  for (auto& [hk, x] : K.dentries())
    for (int vg = 0; vg < nv; ++vg) {
      EElem cur = r.dentry(hk.first * nv + vg, hk.second * nv + vg);
      r.set_dentry(hk.first * nv + vg, hk.second * nv + vg, cur.add(R, x));
    }
  for (auto& [hv, y] : V.dentries())
    for (int kg = 0; kg < K.gen_count(); ++kg) {
      Scalar s = (K.egen(kg).deg % 2 == 0) ? Scalar(1) : Scalar(-1);
      EElem cur = r.dentry(kg * nv + hv.first, kg * nv + hv.second);
      r.set_dentry(kg * nv + hv.first, kg * nv + hv.second, cur.add(R, y.scaled(R, s)));
    }
  return r;
}

StratObject ktensor(const StratAtlas& A, int k, const CellObject& V) {
  if (A.gm_top() && k == 1) {
    // underlying graded complex of V, as a cell object on the point stratum
    FlatCell F = flatten(V);
    StratObject r;
    CellObject c(A.ring(), A.stratum(0).n, 0);
    std::map<std::pair<int, int>, int> gid;
    for (auto& [deg, tws] : F.cx.terms())
      for (int i = 0; i < static_cast<int>(tws.size()); ++i) gid[{deg, i}] = c.add_gen(deg, tws[i]);
    for (auto& [deg, d] : F.cx.diffs())
      for (int row = 0; row < d.rows(); ++row)
        for (int col = 0; col < d.cols(); ++col)
          if (d(row, col) != 0)
            c.set_dentry(gid.at({deg + 1, row}), gid.at({deg, col}),
                         EElem::scalar(0, d(row, col)));
    r.comps.push_back(std::move(c));
    r.glue.resize(1);
    return r;
  }
  const StratObject& K = A.kernel(k);
  StratObject r;
  for (int w = 0; w < k; ++w) r.comps.push_back(cell_coef_tensor(K.comps[w], V));
  r.glue.resize(k);
  for (int j = 1; j < k; ++j) {
    if (!K.glue[j]) continue;
    // glue of K (x) V: alpha_K (x) id_V on generators (kernel glue is strict)
    StratObject rz;
    for (int w = 0; w < j; ++w) rz.comps.push_back(r.comps[w]);
    StratObject Ktgt = ktensor(A, j, K.comps[j]);  // K_j (x) (kernel comp j)
    // target of the new glue: K_j (x) (K.comps[j] (x) V) -- built directly:
    StratObject tgt = ktensor(A, j, r.comps[j]);
    StratMap g = stratmap_zero(A, rz, tgt, 0);
    int nv = V.gen_count();
    for (int w = 0; w < j; ++w) {
      auto src_g = cell_hom_gens(K.comps[w], Ktgt.comps[w], 0);
      auto dst_g = cell_hom_gens(rz.comps[w], tgt.comps[w], 0);
      std::map<std::array<uint32_t, 3>, int> dpos;
      for (int i = 0; i < static_cast<int>(dst_g.size()); ++i) dpos[dst_g[i]] = i;
      int njk = K.comps[j].gen_count();
      for (size_t i = 0; i < src_g.size(); ++i) {
        if (K.glue[j]->comps[w][i] == 0) continue;
        auto [sg, th, T] = src_g[i];
        // th indexes (K_j-gen a, kernel-comp-j gen b); new target gen:
        // (a, (b, vg)) with the tensor index b*nv+vg
        int a = static_cast<int>(th) / njk, b = static_cast<int>(th) % njk;
        for (int vg = 0; vg < nv; ++vg) {
          int sg2 = static_cast<int>(sg) * nv + vg;
          int th2 = a * (njk * nv) + (b * nv + vg);
          // sign: moving V past nothing: the tensored map acts on the K-part
          // only, V-generators ride along, no sign for degree-0 glue
          auto it = dpos.find({static_cast<uint32_t>(sg2), static_cast<uint32_t>(th2), T});
          if (it == dpos.end()) throw Error(ErrorCode::INTERNAL, "ktensor glue reindex");
          g.comps[w][it->second] = K.glue[j]->comps[w][i];
        }
      }
      if (K.glue[j]->correction(w)) throw Error(ErrorCode::INTERNAL, "kernel glue has corrections");
    }
    r.glue[j] = std::make_shared<StratMap>(std::move(g));
  }
  return r;
}

StratMap ktensor_map_coords(const StratAtlas& A, int k, const CellObject& Vsrc,
                            const CellObject& Vtgt, int deg, const std::vector<Scalar>& coords) {
  const Ring& R = A.ring();
  StratObject KM = ktensor(A, k, Vsrc);
  StratObject KN = ktensor(A, k, Vtgt);
  StratMap out;
  out.deg = deg;
  if (A.gm_top() && k == 1) {
    FlatCell FS = flatten(Vsrc), FT = flatten(Vtgt);
    std::vector<Scalar> fc = cell_hom_flat_coords(Vsrc, Vtgt, deg, coords, FS, FT);
    // reindex from hom_gens(FS.cx, FT.cx, deg) to cell_hom_gens(KM0, KN0, deg)
    auto fg = hom_gens(FS.cx, FT.cx, deg);
    auto cg = cell_hom_gens(KM.comps[0], KN.comps[0], deg);
    std::map<std::array<uint32_t, 3>, int> cpos;
    for (int i = 0; i < static_cast<int>(cg.size()); ++i) cpos[cg[i]] = i;
    std::vector<Scalar> v(cg.size(), Scalar(0));
    // flat (deg p, idx i) corresponds to the ktensor generator in the same
    // enumeration order used by ktensor's flatten travel
    FlatCell FS2 = flatten(Vsrc);
    // build (deg,idx) -> gen id maps identical to ktensor's construction
    std::map<std::pair<int, int>, int> gsrc, gtgt;
    {
      int c = 0;
      for (auto& [d2, tws] : FS.cx.terms())
        for (int i = 0; i < static_cast<int>(tws.size()); ++i) gsrc[{d2, i}] = c++;
      c = 0;
      for (auto& [d2, tws] : FT.cx.terms())
        for (int i = 0; i < static_cast<int>(tws.size()); ++i) gtgt[{d2, i}] = c++;
    }
    for (size_t i = 0; i < fg.size(); ++i) {
      if (fc[i] == 0) continue;
      auto [p, si, tj] = fg[i];
      int sg = gsrc.at({p, si}), tg = gtgt.at({p + deg, tj});
      auto it = cpos.find({static_cast<uint32_t>(sg), static_cast<uint32_t>(tg), 0u});
      if (it == cpos.end()) throw Error(ErrorCode::INTERNAL, "gm ktensor map reindex");
      v[it->second] = fc[i];
    }
    out.comps.push_back(std::move(v));
    out.corr.resize(1);
    return out;
  }
  const StratObject& K = A.kernel(k);
  auto vgens = cell_hom_gens(Vsrc, Vtgt, deg);
  int nvs = Vsrc.gen_count(), nvt = Vtgt.gen_count();
  for (int w = 0; w < k; ++w) {
    auto cg = cell_hom_gens(KM.comps[w], KN.comps[w], deg);
    std::map<std::array<uint32_t, 3>, int> cpos;
    for (int i = 0; i < static_cast<int>(cg.size()); ++i) cpos[cg[i]] = i;
    std::vector<Scalar> v(cg.size(), Scalar(0));
    for (size_t i = 0; i < vgens.size(); ++i) {
      if (coords[i] == 0) continue;
      auto [sg, th, T] = vgens[i];  // T = 0 for affine strata
      for (int kg = 0; kg < K.comps[w].gen_count(); ++kg) {
        // (id_K (x) psi)(k (x) e) = (-1)^{deg(k) * deg(psi)} k (x) psi(e)
        Scalar s = ((K.comps[w].egen(kg).deg * deg) % 2 == 0) ? Scalar(1) : Scalar(-1);
        auto it = cpos.find({static_cast<uint32_t>(kg * nvs + static_cast<int>(sg)),
                             static_cast<uint32_t>(kg * nvt + static_cast<int>(th)), T});
        if (it == cpos.end()) throw Error(ErrorCode::INTERNAL, "ktensor map reindex");
        v[it->second] = R.normalize(s * coords[i]);
      }
    }
    out.comps.push_back(std::move(v));
  }
  out.corr.resize(k);
  return out;
}

StratMap ktensor_map(const StratAtlas& A, int k, const CellMap& f) {
  return ktensor_map_coords(A, k, f.src(), f.tgt(), 0, cell_coords_of_map(f.src(), f.tgt(), f));
}

// ---------------------------------------------------------------------------
// the structured hom complex
// ---------------------------------------------------------------------------

struct StratHomCx::Block {
  int len = 1;
  CellObject M0{Ring::Q(), 0, 0}, N0{Ring::Q(), 0, 0};
  GradedComplex cellH{Ring::Q()};
  std::shared_ptr<Block> A;  // prefix hom
  std::shared_ptr<Block> C;  // prefix hom into K (x) N_u
  GradedComplex B{Ring::Q()};
  CellObject Mu{Ring::Q(), 0, 0}, Nu{Ring::Q(), 0, 0};
  StratObject KNu;
  GradedComplex total{Ring::Q()};

  // coordinate layout at degree d: [A-part at d | B-part at d | C-part at d-1]
  std::vector<Scalar> coords_of(const StratAtlas& At, const StratMap& f) const;
  StratMap map_of(const StratAtlas& At, int deg, const std::vector<Scalar>& v) const;
};

namespace {

StratObject strat_prefix(const StratObject& M, int len) {
  StratObject r;
  for (int w = 0; w < len; ++w) r.comps.push_back(M.comps[w]);
  r.glue.assign(M.glue.begin(), M.glue.begin() + len);
  return r;
}

StratMap stratmap_prefix(const StratMap& f, int len) {
  StratMap r;
  r.deg = f.deg;
  r.comps.assign(f.comps.begin(), f.comps.begin() + len);
  r.corr.assign(f.corr.begin(), f.corr.begin() + std::min<size_t>(len, f.corr.size()));
  r.corr.resize(len);
  return r;
}

}  // namespace

std::shared_ptr<StratHomCx::Block> build_block(const StratAtlas& A, const StratObject& M,
                                               const StratObject& N, int len);

static ComplexMap build_delta(const StratAtlas& A, const StratObject& M, const StratObject& N,
                              int len, StratHomCx::Block& blk);

std::shared_ptr<StratHomCx::Block> build_block(const StratAtlas& A, const StratObject& M,
                                               const StratObject& N, int len) {
  auto blk = std::make_shared<StratHomCx::Block>();
  blk->len = len;
  if (len == 1) {
    blk->M0 = M.comps[0];
    blk->N0 = N.comps[0];
    blk->cellH = cell_hom_complex(blk->M0, blk->N0);
    blk->total = blk->cellH;
    return blk;
  }
  int u = len - 1;
  StratObject Mz = strat_prefix(M, u), Nz = strat_prefix(N, u);
  blk->Mu = M.comps[u];
  blk->Nu = N.comps[u];
  blk->A = build_block(A, Mz, Nz, u);
  blk->B = cell_hom_complex(blk->Mu, blk->Nu);
  blk->KNu = ktensor(A, u, blk->Nu);
  blk->C = build_block(A, Mz, blk->KNu, u);
  ComplexMap delta = build_delta(A, M, N, len, *blk);
  blk->total = cone(delta).shifted(-1);
  return blk;
}

static ComplexMap build_delta(const StratAtlas& A, const StratObject& M, const StratObject& N,
                              int len, StratHomCx::Block& blk) {
  // delta: A.total (+) B -> C.total,  (phi_Z, phi_u) |-> glueN o phi_Z - (K (x) phi_u) o glueM
  int u = len - 1;
  StratObject Mz = strat_prefix(M, u), Nz = strat_prefix(N, u);
  const StratMap& gN = *N.glue[u];
  const StratMap& gM = *M.glue[u];
  GradedComplex src = blk.A->total.direct_sum(blk.B);
  ComplexMap delta(src, blk.C->total);
  for (int d = src.min_deg(); d <= src.max_deg(); ++d) {
    int na = blk.A->total.dim(d), nb = blk.B.dim(d), nc = blk.C->total.dim(d);
    if (nc == 0 || (na == 0 && nb == 0)) continue;
    Mat mt(nc, na + nb);
    for (int i = 0; i < na; ++i) {
      std::vector<Scalar> e(na, Scalar(0));
      e[i] = 1;
      StratMap psi = blk.A->map_of(A, d, e);
      StratMap comp = stratmap_compose(A, Mz, Nz, blk.KNu, gN, psi);
      std::vector<Scalar> cc = blk.C->coords_of(A, comp);
      for (int r = 0; r < nc; ++r) mt(r, i) = cc[r];
    }
    auto bgens = cell_hom_gens(blk.Mu, blk.Nu, d);
    StratObject KMu = ktensor(A, u, blk.Mu);
    for (int i = 0; i < nb; ++i) {
      std::vector<Scalar> e(bgens.size(), Scalar(0));
      e[i] = 1;
      StratMap kpsi = ktensor_map_coords(A, u, blk.Mu, blk.Nu, d, e);
      StratMap comp = stratmap_compose(A, Mz, KMu, blk.KNu, kpsi, gM);
      std::vector<Scalar> cc = blk.C->coords_of(A, comp);
      for (int r = 0; r < nc; ++r) mt(r, na + i) = A.ring().normalize(Scalar(-1) * cc[r]);
    }
    delta.set_comp(d, std::move(mt));
  }
  return delta;
}

std::vector<Scalar> StratHomCx::Block::coords_of(const StratAtlas& At, const StratMap& f) const {
  if (len == 1) return f.comps[0];
  StratMap fz = stratmap_prefix(f, len - 1);
  std::vector<Scalar> va = A->coords_of(At, fz);
  const std::vector<Scalar>& vb = f.comps[len - 1];
  std::vector<Scalar> vc;
  if (f.correction(len - 1)) {
    vc = C->coords_of(At, *f.corr[len - 1]);
  }
  // assemble per the layout of total at degree f.deg: we only ever convert
  // homogeneous elements, so sizes fix the split
  std::vector<Scalar> out;
  out.reserve(va.size() + vb.size() + vc.size());
  for (auto& x : va) out.push_back(x);
  for (auto& x : vb) out.push_back(x);
  if (vc.empty()) {
    // C-part of degree deg-1
    StratMap cz;  // zero: compute size from C
    int sz = 0;
    {
      // size of C-basis at degree deg-1
      sz = C->total.dim(f.deg - 1);
    }
    out.insert(out.end(), sz, Scalar(0));
  } else {
    for (auto& x : vc) out.push_back(x);
  }
  return out;
}

StratMap StratHomCx::Block::map_of(const StratAtlas& At, int deg,
                                   const std::vector<Scalar>& v) const {
  StratMap f;
  f.deg = deg;
  if (len == 1) {
    f.comps.push_back(v);
    f.corr.resize(1);
    return f;
  }
  int na = A->total.dim(deg), nb = B.dim(deg), nc2 = C->total.dim(deg - 1);
  if (static_cast<int>(v.size()) != na + nb + nc2)
    throw Error(ErrorCode::INTERNAL, "hom coords size mismatch");
  std::vector<Scalar> va(v.begin(), v.begin() + na);
  std::vector<Scalar> vb(v.begin() + na, v.begin() + na + nb);
  std::vector<Scalar> vc(v.begin() + na + nb, v.end());
  StratMap fz = A->map_of(At, deg, va);
  f.comps = fz.comps;
  f.comps.push_back(vb);
  f.corr = fz.corr;
  f.corr.resize(len);
  bool nzc = false;
  for (auto& x : vc)
    if (x != 0) nzc = true;
  if (nzc) f.corr[len - 1] = std::make_shared<StratMap>(C->map_of(At, deg - 1, vc));
  return f;
}

StratHomCx::StratHomCx(const StratAtlas& A, const StratObject& M, const StratObject& N, int len)
    : cx_(A.ring()), atlas_(&A) {
  root_ = build_block(A, M, N, len);
  cx_ = root_->total;
}

std::vector<Scalar> StratHomCx::coords_of(const StratMap& f) const {
  return root_->coords_of(*atlas_, f);
}

StratMap StratHomCx::map_of(int deg, const std::vector<Scalar>& coords) const {
  return root_->map_of(*atlas_, deg, coords);
}

StratMap StratHomCx::differential(const StratMap& f) const {
  std::vector<Scalar> v = coords_of(f);
  Mat d = cx_.diff(f.deg);
  std::vector<Scalar> out(cx_.dim(f.deg + 1), Scalar(0));
  for (int r = 0; r < d.rows(); ++r) {
    Scalar s(0);
    for (int c = 0; c < d.cols(); ++c)
      if (v[c] != 0 && d(r, c) != 0) s += d(r, c) * v[c];
    out[r] = cx_.ring().normalize(s);
  }
  return map_of(f.deg + 1, out);
}

namespace {
void mask_rec(const StratHomCx::Block& b, int deg, std::vector<bool>* out);
void mask_rec(const StratHomCx::Block& b, int deg, std::vector<bool>* out) {
  if (b.len == 1) {
    out->insert(out->end(), b.cellH.dim(deg), true);
    return;
  }
  mask_rec(*b.A, deg, out);
  out->insert(out->end(), b.B.dim(deg), true);
  out->insert(out->end(), b.C->total.dim(deg - 1), false);
}
}  // namespace

std::vector<bool> StratHomCx::component_mask(int deg) const {
  std::vector<bool> out;
  mask_rec(*root_, deg, &out);
  return out;
}

StratMap StratHomCx::complete_cycle(int deg, const StratMap& partial) const {
  const Ring& R = cx_.ring();
  std::vector<Scalar> x0 = coords_of(partial);
  std::vector<bool> mask = component_mask(deg);
  std::vector<int> unknowns;
  for (size_t i = 0; i < mask.size(); ++i)
    if (!mask[i]) unknowns.push_back(static_cast<int>(i));
  Mat d = cx_.diff(deg);
  if (d.rows() == 0) return map_of(deg, x0);
  Mat rhs(d.rows(), 1);
  for (int r = 0; r < d.rows(); ++r) {
    Scalar s(0);
    for (int c = 0; c < d.cols(); ++c)
      if (mask[c] && x0[c] != 0 && d(r, c) != 0) s += d(r, c) * x0[c];
    rhs(r, 0) = R.normalize(-s);
  }
  Mat du(d.rows(), static_cast<int>(unknowns.size()));
  for (int r = 0; r < d.rows(); ++r)
    for (size_t c = 0; c < unknowns.size(); ++c) du(r, static_cast<int>(c)) = d(r, unknowns[c]);
  Mat y;
  if (!solve(R, du, rhs, &y))
    throw Error(ErrorCode::INTERNAL, "no correction completes the components to a cycle");
  std::vector<Scalar> x(mask.size(), Scalar(0));
  for (size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) x[i] = x0[i];
  for (size_t c = 0; c < unknowns.size(); ++c) x[unknowns[c]] = y(static_cast<int>(c), 0);
  return map_of(deg, x);
}

StratMap StratHomCx::complete_cycle_top(int deg, const StratMap& partial) const {
  const Ring& R = cx_.ring();
  std::vector<Scalar> x0 = coords_of(partial);
  int nz_tail = root_->len == 1 ? 0 : root_->C->total.dim(deg - 1);
  int head = static_cast<int>(x0.size()) - nz_tail;
  Mat d = cx_.diff(deg);
  if (d.rows() == 0) return partial;
  if (nz_tail == 0) {
    if (!is_cycle(partial)) throw Error(ErrorCode::INTERNAL, "no top block to complete");
    return partial;
  }
  Mat rhs(d.rows(), 1);
  for (int r = 0; r < d.rows(); ++r) {
    Scalar s(0);
    for (int c = 0; c < head; ++c)
      if (x0[c] != 0 && d(r, c) != 0) s += d(r, c) * x0[c];
    rhs(r, 0) = R.normalize(-s);
  }
  Mat du(d.rows(), nz_tail);
  for (int r = 0; r < d.rows(); ++r)
    for (int c = 0; c < nz_tail; ++c) du(r, c) = d(r, head + c);
  Mat y;
  if (!solve(R, du, rhs, &y))
    throw Error(ErrorCode::INTERNAL, "no top correction completes the map to a cycle");
  for (int c = 0; c < nz_tail; ++c) x0[head + c] = y(c, 0);
  return map_of(deg, x0);
}

namespace {
void srcgen_rec(const StratHomCx::Block& b, int deg, int stratum_base,
                std::vector<std::pair<int, int>>* out);
void srcgen_rec(const StratHomCx::Block& b, int deg, int stratum_base,
                std::vector<std::pair<int, int>>* out) {
  if (b.len == 1) {
    auto gens = cell_hom_gens(b.M0, b.N0, deg);
    for (auto& [g, h, T] : gens) out->push_back({stratum_base, static_cast<int>(g)});
    return;
  }
  srcgen_rec(*b.A, deg, stratum_base, out);
  auto gens = cell_hom_gens(b.Mu, b.Nu, deg);
  for (auto& [g, h, T] : gens) out->push_back({stratum_base + b.len - 1, static_cast<int>(g)});
  srcgen_rec(*b.C, deg - 1, stratum_base, out);
}
}  // namespace

std::vector<std::pair<int, int>> StratHomCx::source_gens(int deg) const {
  std::vector<std::pair<int, int>> out;
  srcgen_rec(*root_, deg, 0, &out);
  return out;
}

namespace {
void tgtgen_rec(const StratHomCx::Block& b, int deg, int stratum_base,
                std::vector<std::pair<int, int>>* out);
void tgtgen_rec(const StratHomCx::Block& b, int deg, int stratum_base,
                std::vector<std::pair<int, int>>* out) {
  if (b.len == 1) {
    auto gens = cell_hom_gens(b.M0, b.N0, deg);
    for (auto& [g, h, T] : gens) out->push_back({stratum_base, static_cast<int>(h)});
    return;
  }
  tgtgen_rec(*b.A, deg, stratum_base, out);
  auto gens = cell_hom_gens(b.Mu, b.Nu, deg);
  for (auto& [g, h, T] : gens) out->push_back({stratum_base + b.len - 1, static_cast<int>(h)});
  tgtgen_rec(*b.C, deg - 1, stratum_base, out);
}
}  // namespace

std::vector<std::pair<int, int>> StratHomCx::target_gens(int deg) const {
  std::vector<std::pair<int, int>> out;
  tgtgen_rec(*root_, deg, 0, &out);
  return out;
}

StratMap StratHomCx::solve_anchored(int deg, const StratMap& comps_part, const StratMap& rhs,
                                    const std::vector<int>& split) const {
  const Ring& R = cx_.ring();
  std::vector<Scalar> x0 = coords_of(comps_part);
  std::vector<Scalar> target = coords_of(rhs);
  std::vector<bool> mask = component_mask(deg);
  std::vector<std::pair<int, int>> sg = source_gens(deg);
  std::vector<int> unknowns;
  for (size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) continue;
    if (sg[i].second >= split[sg[i].first]) continue;  // anchored to zero
    unknowns.push_back(static_cast<int>(i));
  }
  Mat d = cx_.diff(deg);
  Mat rhsm(d.rows(), 1);
  for (int r = 0; r < d.rows(); ++r) {
    Scalar s(0);
    for (int c = 0; c < d.cols(); ++c)
      if (mask[c] && x0[c] != 0 && d(r, c) != 0) s += d(r, c) * x0[c];
    rhsm(r, 0) = R.normalize(target[r] - s);
  }
  Mat du(d.rows(), static_cast<int>(unknowns.size()));
  for (int r = 0; r < d.rows(); ++r)
    for (size_t c = 0; c < unknowns.size(); ++c) du(r, static_cast<int>(c)) = d(r, unknowns[c]);
  Mat y;
  if (!solve(R, du, rhsm, &y))
    throw Error(ErrorCode::INTERNAL, "anchored correction solve failed");
  std::vector<Scalar> x(mask.size(), Scalar(0));
  for (size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) x[i] = x0[i];
  for (size_t c = 0; c < unknowns.size(); ++c) x[unknowns[c]] = y(static_cast<int>(c), 0);
  return map_of(deg, x);
}

StratMap StratHomCx::solve_mixed(int deg, const StratMap& given, const StratMap& rhs,
                                 const std::vector<int>& split) const {
  const Ring& R = cx_.ring();
  std::vector<Scalar> x0 = coords_of(given);
  std::vector<Scalar> target = coords_of(rhs);
  std::vector<bool> mask = component_mask(deg);
  std::vector<std::pair<int, int>> sg = source_gens(deg);
  std::vector<int> unknowns;
  for (size_t i = 0; i < mask.size(); ++i) {
    if (sg[i].second >= split[sg[i].first]) continue;  // prescribed or zero
    unknowns.push_back(static_cast<int>(i));
  }
  Mat d = cx_.diff(deg);
  Mat rhsm(d.rows(), 1);
  for (int r = 0; r < d.rows(); ++r) {
    Scalar s(0);
    for (int c = 0; c < d.cols(); ++c)
      if (sg[c].second >= split[sg[c].first] && mask[c] && x0[c] != 0 && d(r, c) != 0)
        s += d(r, c) * x0[c];
    rhsm(r, 0) = R.normalize(target[r] - s);
  }
  Mat du(d.rows(), static_cast<int>(unknowns.size()));
  for (int r = 0; r < d.rows(); ++r)
    for (size_t c = 0; c < unknowns.size(); ++c) du(r, static_cast<int>(c)) = d(r, unknowns[c]);
  Mat y;
  if (!solve(R, du, rhsm, &y))
    throw Error(ErrorCode::INTERNAL, "mixed correction solve failed");
  std::vector<Scalar> x(mask.size(), Scalar(0));
  for (size_t i = 0; i < mask.size(); ++i)
    if (mask[i] && sg[i].second >= split[sg[i].first]) x[i] = x0[i];
  for (size_t c = 0; c < unknowns.size(); ++c) x[unknowns[c]] = y(static_cast<int>(c), 0);
  return map_of(deg, x);
}

bool StratHomCx::is_cycle(const StratMap& f) const {
  std::vector<Scalar> v = coords_of(f);
  Mat d = cx_.diff(f.deg);
  for (int r = 0; r < d.rows(); ++r) {
    Scalar s(0);
    for (int c = 0; c < d.cols(); ++c)
      if (v[c] != 0 && d(r, c) != 0) s += d(r, c) * v[c];
    if (!cx_.ring().is_zero(s)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// composition
// ---------------------------------------------------------------------------

StratMap stratmap_compose(const StratAtlas& A, const StratObject& M, const StratObject& N,
                          const StratObject& P, const StratMap& g, const StratMap& f) {
  const Ring& R = A.ring();
  int r = M.len();
  StratMap out;
  out.deg = f.deg + g.deg;
  for (int w = 0; w < r; ++w)
    out.comps.push_back(cell_compose_coords(R, M.comps[w], N.comps[w], P.comps[w], g.deg,
                                            g.comps[w], f.deg, f.comps[w]));
  out.corr.resize(r);
  for (int k = 1; k < r; ++k) {
    // (g o f).corr_k = g.corr_k o f|_Z + (-1)^{deg g} (K (x) g_u) o f.corr_k
    StratObject Mz = strat_prefix(M, k), Nz = strat_prefix(N, k);
    StratObject KNu = ktensor(A, k, N.comps[k]);
    StratObject KPu = ktensor(A, k, P.comps[k]);
    StratMap acc = stratmap_zero(A, Mz, KPu, out.deg - 1);
    bool nz = false;
    if (g.correction(k)) {
      StratMap t = stratmap_compose(A, Mz, Nz, KPu, *g.corr[k], stratmap_prefix(f, k));
      acc = stratmap_add(A, acc, t);
      nz = true;
    }
    if (f.correction(k)) {
      StratMap kg = ktensor_map_coords(A, k, N.comps[k], P.comps[k], g.deg, g.comps[k]);
      StratMap t = stratmap_compose(A, Mz, KNu, KPu, kg, *f.corr[k]);
      if (g.deg % 2 != 0) t = stratmap_scale(A, t, Scalar(-1));
      acc = stratmap_add(A, acc, t);
      nz = true;
    }
    if (nz) out.corr[k] = std::make_shared<StratMap>(std::move(acc));
  }
  return out;
}

// ---------------------------------------------------------------------------
// cones
// ---------------------------------------------------------------------------

namespace {

// Embed a hom element of Hom(Msrc, Ntgt) into Hom(X, Y) where Msrc-gens sit
// inside X-gens at offset so and Ntgt-gens inside Y at offset to, scaled by
// a per-source-generator sign.
void embed_coords(const Ring& R, const CellObject& Msrc, const CellObject& Ntgt,
                  const CellObject& X, const CellObject& Y, int deg,
                  const std::vector<Scalar>& v, int so, int to,
                  const std::function<Scalar(int, int)>& sign, std::vector<Scalar>* out) {
  auto src_g = cell_hom_gens(Msrc, Ntgt, deg);
  auto dst_g = cell_hom_gens(X, Y, deg);
  std::map<std::array<uint32_t, 3>, int> dpos;
  for (int i = 0; i < static_cast<int>(dst_g.size()); ++i) dpos[dst_g[i]] = i;
  for (size_t i = 0; i < src_g.size(); ++i) {
    if (v[i] == 0) continue;
    auto [sg, th, T] = src_g[i];
    auto it = dpos.find({sg + static_cast<uint32_t>(so), th + static_cast<uint32_t>(to), T});
    if (it == dpos.end()) throw Error(ErrorCode::INTERNAL, "embed: missing hom generator");
    (*out)[it->second] = R.normalize((*out)[it->second] + v[i] * sign(static_cast<int>(sg), static_cast<int>(th)));
  }
}

}  // namespace

namespace {

// Recursive block embedding for cone gluings: place a hom element of one of
// the three quadrants (N->KN, M->KM shifted, M->KN correction) into the hom
// coordinates of the cone objects, including its corrections.
StratMap embed_cone_block(const StratAtlas& A, const StratMap& src, int which, int mu, int nu,
                          const std::vector<CellObject>& src_from,
                          const std::vector<CellObject>& src_into,
                          const std::vector<CellObject>& tgt_from,
                          const std::vector<CellObject>& tgt_into) {
  int mode = (which == 1) ? strat_cone_mode_m : (which == 2 ? strat_cone_mode_c : 0);
  const Ring& R = A.ring();
  int r = static_cast<int>(src.comps.size());
  StratMap out;
  // the correction quadrant maps the shifted source into the unshifted
  // target, raising the apparent degree by one
  out.deg = src.deg + (which == 2 ? 1 : 0);
  for (int w = 0; w < r; ++w) {
    auto sgens = cell_hom_gens(src_from[w], tgt_from[w], src.deg);
    auto dgens = cell_hom_gens(src_into[w], tgt_into[w], out.deg);
    std::map<std::array<uint32_t, 3>, int> dpos;
    for (int i = 0; i < static_cast<int>(dgens.size()); ++i) dpos[dgens[i]] = i;
    std::vector<Scalar> v(dgens.size(), Scalar(0));
    int moff = src_into[w].gen_count() - src_from[w].gen_count();  // = M-part size when which==0
    for (size_t i = 0; i < src.comps[w].size(); ++i) {
      if (src.comps[w][i] == 0) continue;
      auto [sg, th, T] = sgens[i];
      int sg2, th2;
      if (which == 0) {
        sg2 = moff + static_cast<int>(sg);
        th2 = (static_cast<int>(th) / nu) * (mu + nu) + mu + (static_cast<int>(th) % nu);
      } else if (which == 1) {
        sg2 = static_cast<int>(sg);
        th2 = (static_cast<int>(th) / mu) * (mu + nu) + (static_cast<int>(th) % mu);
      } else {
        sg2 = static_cast<int>(sg);
        th2 = (static_cast<int>(th) / nu) * (mu + nu) + mu + (static_cast<int>(th) % nu);
      }
      auto it = dpos.find({static_cast<uint32_t>(sg2), static_cast<uint32_t>(th2), T});
      if (it == dpos.end()) throw Error(ErrorCode::INTERNAL, "cone glue reindex");
      int e = 0;
      if (mode == 1) e = __builtin_popcount(T);
      else if (mode == 2) e = src_from[w].egen(static_cast<int>(sg)).deg;
      else if (mode == 3) e = tgt_from[w].egen(static_cast<int>(th)).deg;
      Scalar sgn = (e % 2 == 0) ? Scalar(1) : Scalar(-1);
      v[it->second] = R.normalize(v[it->second] + sgn * src.comps[w][i]);
    }
    out.comps.push_back(std::move(v));
  }
  out.corr.resize(r);
  for (int j = 1; j < r; ++j) {
    if (!src.correction(j)) continue;
    std::vector<CellObject> sf(src_from.begin(), src_from.begin() + j);
    std::vector<CellObject> si(src_into.begin(), src_into.begin() + j);
    StratObject tf = ktensor(A, j, tgt_from[j]);
    StratObject ti = ktensor(A, j, tgt_into[j]);
    StratMap child =
        embed_cone_block(A, *src.corr[j], which, mu, nu, sf, si, tf.comps, ti.comps);
    if (strat_cone_child_sign < 0) child = stratmap_scale(A, child, Scalar(-1));
    out.corr[j] = std::make_shared<StratMap>(std::move(child));
  }
  return out;
}

}  // namespace

int strat_cone_sign_m = 1;
int strat_cone_sign_c = -1;
int strat_cone_mode_m = 0;
int strat_cone_mode_c = 0;
int strat_cone_child_sign = 1;
int strat_cone_delta_block = 0;
int strat_js_use_pin = 1;

StratObject strat_cone(const StratAtlas& A, const StratMap& f, const StratObject& M,
                       const StratObject& N) {
  const Ring& R = A.ring();
  int r = M.len();
  StratObject cn;
  for (int w = 0; w < r; ++w) {
    CellMap fw = cell_cycle_to_map(M.comps[w], N.comps[w], 0, f.comps[w]);
    cn.comps.push_back(cell_cone(fw));
  }
  cn.glue.resize(r);
  if (A.gm_top() && r == 2) {
    // kernel functor is "underlying": assemble the glue blockwise through
    // the flat position maps of the cones, then complete on the M-sourced
    // coordinates
    StratObject Ktgt = ktensor(A, 1, cn.comps[1]);
    FlatCell Fc = flatten(cn.comps[1]);
    FlatCell Fm = flatten(M.comps[1]), Fn = flatten(N.comps[1]);
    int mu = M.comps[1].gen_count();
    auto dst = cell_hom_gens(cn.comps[0], Ktgt.comps[0], 0);
    std::map<std::array<uint32_t, 3>, int> dpos;
    for (int i = 0; i < static_cast<int>(dst.size()); ++i) dpos[dst[i]] = i;
    std::map<std::pair<int, int>, int> fid;
    {
      int c = 0;
      for (auto& [deg, tws] : Fc.cx.terms())
        for (int i = 0; i < static_cast<int>(tws.size()); ++i) fid[{deg, i}] = c++;
    }
    auto flatpos = [&](int conegen, uint32_t T) {
      auto p = Fc.pos.at({conegen, T});
      return fid.at(p);
    };
    StratMap g = stratmap_zero(A, strat_prefix(cn, 1), Ktgt, 0);
    auto embed_flat = [&](const StratMap& srcm, const FlatCell& Fsrc, bool npart, int srcoff,
                          int deg, const Scalar& scale) {
      StratObject Ksrc = ktensor(A, 1, npart ? N.comps[1] : M.comps[1]);
      const CellObject& s0 = npart ? N.comps[0] : M.comps[0];
      auto sgens = cell_hom_gens(s0, Ksrc.comps[0], deg);
      std::vector<std::pair<int, uint32_t>> finv;
      for (auto& [dg, v] : Fsrc.basis)
        for (auto& gt : v) finv.push_back({gt.first, gt.second});
      for (size_t i = 0; i < sgens.size(); ++i) {
        if (srcm.comps[0][i] == 0) continue;
        auto [sg, th, T] = sgens[i];
        auto [vg, vT] = finv[static_cast<int>(th)];
        int th2 = flatpos(npart ? mu + vg : vg, vT);
        int sg2 = static_cast<int>(sg) + srcoff;
        auto it = dpos.find({static_cast<uint32_t>(sg2), static_cast<uint32_t>(th2), T});
        if (it == dpos.end()) throw Error(ErrorCode::INTERNAL, "gm cone glue reindex");
        g.comps[0][it->second] = R.normalize(g.comps[0][it->second] + scale * srcm.comps[0][i]);
      }
    };
    embed_flat(*N.glue[1], Fn, true, M.comps[0].gen_count(), 0, Scalar(1));
    embed_flat(*M.glue[1], Fm, false, 0, 0, Scalar(1));
    if (f.correction(1)) embed_flat(*f.corr[1], Fn, true, 0, -1, Scalar(-1));
    {
      StratObject cz = strat_prefix(cn, 1);
      StratHomCx Hg(A, cz, Ktgt, 1);
      if (!Hg.is_cycle(g)) {
        std::vector<Scalar> x0 = Hg.coords_of(g);
        auto sgv = Hg.source_gens(0);
        std::vector<int> unknowns;
        for (size_t i = 0; i < x0.size(); ++i)
          if (sgv[i].second < M.comps[0].gen_count()) unknowns.push_back(static_cast<int>(i));
        Mat d = Hg.cx().diff(0);
        Mat rhs(d.rows(), 1);
        std::vector<Scalar> fixedv = x0;
        for (int i : unknowns) fixedv[i] = 0;
        for (int r2 = 0; r2 < d.rows(); ++r2) {
          Scalar s(0);
          for (size_t c = 0; c < fixedv.size(); ++c)
            if (fixedv[c] != 0 && d(r2, static_cast<int>(c)) != 0)
              s += d(r2, static_cast<int>(c)) * fixedv[c];
          rhs(r2, 0) = R.normalize(-s);
        }
        Mat du(d.rows(), static_cast<int>(unknowns.size()));
        for (int r2 = 0; r2 < d.rows(); ++r2)
          for (size_t c = 0; c < unknowns.size(); ++c) du(r2, static_cast<int>(c)) = d(r2, unknowns[c]);
        Mat y;
        if (!solve(R, du, rhs, &y))
          throw Error(ErrorCode::INTERNAL, "gm cone glue solve failed");
        std::vector<Scalar> x = fixedv;
        for (size_t c = 0; c < unknowns.size(); ++c) x[unknowns[c]] = y(static_cast<int>(c), 0);
        g = Hg.map_of(0, x);
      }
    }
    cn.glue[1] = std::make_shared<StratMap>(std::move(g));
    return cn;
  }
  for (int k = 1; k < r; ++k) {
    StratObject Ktgt = ktensor(A, k, cn.comps[k]);
    StratObject KMu = ktensor(A, k, M.comps[k]);
    StratObject KNu = ktensor(A, k, N.comps[k]);
    const StratMap& gM = *M.glue[k];
    const StratMap& gN = *N.glue[k];
    int mu = M.comps[k].gen_count(), nu = N.comps[k].gen_count();
    std::vector<CellObject> Mz, Nz, Cz;
    for (int w = 0; w < k; ++w) {
      Mz.push_back(M.comps[w]);
      Nz.push_back(N.comps[w]);
      Cz.push_back(cn.comps[w]);
    }
    StratMap g = embed_cone_block(A, gN, 0, mu, nu, Nz, Cz, KNu.comps, Ktgt.comps);
    StratMap gm2 = embed_cone_block(A, gM, 1, mu, nu, Mz, Cz, KMu.comps, Ktgt.comps);
    g = stratmap_add(A, g, gm2);
    // off-diagonal quadrant and all corrections are solved for jointly; the
    // embedded correction quadrant seeds the solution when it is one already
    {
      StratObject cz = strat_prefix(cn, k);
      StratHomCx Hg(A, cz, Ktgt, k);
      StratMap cand = g;
      if (f.correction(k)) {
        StratMap gc = embed_cone_block(A, *f.corr[k], 2, mu, nu, Mz, Cz, KNu.comps, Ktgt.comps);
        cand = stratmap_add(A, g, stratmap_scale(A, gc, Scalar(-1)));
      }
      if (Hg.is_cycle(cand)) {
        g = cand;
      } else {
        {
          // solve: unknowns = off-diagonal comps (shifted source to kernel
          // part of the target) and every correction coordinate
          std::vector<Scalar> x0 = Hg.coords_of(g);
          std::vector<bool> mask = Hg.component_mask(0);
          auto sgv = Hg.source_gens(0);
          auto tgv = Hg.target_gens(0);
          // the strict inclusion of N pins every N-sourced coordinate (at
          // all correction levels) to the embedded glue of N; the M-sourced
          // coordinates are the unknowns
          std::vector<int> unknowns;
          for (size_t i = 0; i < mask.size(); ++i) {
            int w = sgv[i].first;
            if (sgv[i].second < M.comps[w].gen_count()) unknowns.push_back(static_cast<int>(i));
          }
          (void)tgv;
          (void)mask;
          Mat d = Hg.cx().diff(0);
          Mat rhs(d.rows(), 1);
          const Ring& R2 = A.ring();
          for (int r2 = 0; r2 < d.rows(); ++r2) {
            Scalar s(0);
            for (int c2 = 0; c2 < d.cols(); ++c2) {
              bool unk = std::find(unknowns.begin(), unknowns.end(), c2) != unknowns.end();
              if (!unk && x0[c2] != 0 && d(r2, c2) != 0) s += d(r2, c2) * x0[c2];
            }
            rhs(r2, 0) = R2.normalize(-s);
          }
          Mat du(d.rows(), static_cast<int>(unknowns.size()));
          for (int r2 = 0; r2 < d.rows(); ++r2)
            for (size_t c2 = 0; c2 < unknowns.size(); ++c2) du(r2, static_cast<int>(c2)) = d(r2, unknowns[c2]);
          Mat y;
          if (!solve(R2, du, rhs, &y))
            throw Error(ErrorCode::INTERNAL, "cone glue solve failed");
          std::vector<Scalar> x(mask.size(), Scalar(0));
          for (size_t i = 0; i < mask.size(); ++i) {
            bool unk = std::find(unknowns.begin(), unknowns.end(), static_cast<int>(i)) != unknowns.end();
            if (!unk) x[i] = x0[i];
          }
          for (size_t c2 = 0; c2 < unknowns.size(); ++c2) x[unknowns[c2]] = y(static_cast<int>(c2), 0);
          g = Hg.map_of(0, x);
        }
      }
    }
    cn.glue[k] = std::make_shared<StratMap>(std::move(g));
  }
  return cn;
}

StratMap strat_cone_include_target(const StratAtlas& A, const StratMap& f, const StratObject& M,
                                   const StratObject& N) {
  StratObject cn = strat_cone(A, f, M, N);
  StratMap inc = stratmap_zero(A, N, cn, 0);
  for (int w = 0; w < N.len(); ++w) {
    auto sgens = cell_hom_gens(N.comps[w], cn.comps[w], 0);
    int mu = M.comps[w].gen_count();
    for (size_t i = 0; i < sgens.size(); ++i) {
      auto [sg, th, T] = sgens[i];
      if (T == 0u && static_cast<int>(th) == mu + static_cast<int>(sg))
        inc.comps[w][i] = 1;
    }
  }
  return inc;
}

// ---------------------------------------------------------------------------
// validation and tables
// ---------------------------------------------------------------------------

HomTable strat_hom(const StratAtlas& A, const StratObject& M, const StratObject& N) {
  StratHomCx H(A, M, N, M.len());
  return H.table();
}

void strat_validate(const StratAtlas& A, const StratObject& M) {
  for (auto& c : M.comps) c.validate();
  for (int k = 1; k < M.len(); ++k) {
    if (!M.glue[k]) throw Error(ErrorCode::VALIDATION_ERROR, "missing glue");
    StratObject Mz = strat_prefix(M, k);
    StratObject KMu = ktensor(A, k, M.comps[k]);
    StratHomCx H(A, Mz, KMu, k);
    if (!H.is_cycle(*M.glue[k]))
      throw Error(ErrorCode::VALIDATION_ERROR, "glue is not a cycle at step " + std::to_string(k));
  }
}

void stratmap_validate(const StratAtlas& A, const StratObject& M, const StratObject& N,
                       const StratMap& f) {
  StratHomCx H(A, M, N, M.len());
  if (!H.is_cycle(f)) throw Error(ErrorCode::VALIDATION_ERROR, "strat map is not a cycle");
}

StratObject strat_unit(const StratAtlas& A, int q, int p) {
  StratObject u;
  int len = A.count();
  for (int w = 0; w < len; ++w)
    u.comps.push_back(CellObject::tate(A.ring(), A.stratum(w).n, A.stratum(w).m, q, p));
  u.glue.resize(len);
  for (int k = 1; k < len; ++k) {
    // unit glue twisted/shifted: coordinates are twist/shift stable
    u.glue[k] = std::make_shared<StratMap>(A.unit_glue(k));
  }
  return u;
}

void StratAtlas::validate_atlas() const {
  // attach order refines the closure order
  for (auto& [v, w] : closure_)
    if (v > w) throw Error(ErrorCode::BAD_ORDER, "attach order violates closure at " +
                                                     strata_[v].id + " <= " + strata_[w].id);
  for (int w = 0; w < count(); ++w)
    if (!leq(w, w)) throw Error(ErrorCode::BAD_ORDER, "closure order not reflexive");
  if (count() == 0) throw Error(ErrorCode::VALIDATION_ERROR, "empty strata list");
  for (int k = 1; k < count(); ++k) {
    if (static_cast<int>(kernels_.size()) <= k)
      throw Error(ErrorCode::NONCOMPACT_KERNEL, "missing kernel at step " + std::to_string(k));
    for (auto& c : kernels_[k].comps)
      if (c.gen_count() > 4096)
        throw Error(ErrorCode::NONCOMPACT_KERNEL, "kernel too large to be compact");
    strat_validate(*this, kernels_[k]);
  }
  // glue cycles of the unit object
  StratObject u = strat_unit(*this);
  strat_validate(*this, u);
}


}  // namespace strat
