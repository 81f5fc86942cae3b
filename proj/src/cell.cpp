#include "strat/cell.hpp"

#include <algorithm>
#include <sstream>

namespace strat {

int shuffle_sign(uint32_t s, uint32_t t) {
  // inversions: pairs (a in s, b in t) with a > b
  int inv = 0;
  for (int a = 0; a < 32; ++a) {
    if (!(s >> a & 1u)) continue;
    uint32_t below = t & ((1u << a) - 1u);
    inv += __builtin_popcount(below);
  }
  return (inv % 2 == 0) ? 1 : -1;
}

bool EElem::homogeneous(int k) const {
  for (auto& [mask, c] : terms_)
    if (__builtin_popcount(mask) != k) return false;
  return true;
}

EElem EElem::add(const Ring& R, const EElem& o) const {
  EElem r(std::max(m_, o.m_));
  r.terms_ = terms_;
  for (auto& [mask, c] : o.terms_) {
    Scalar v = R.normalize(r.coeff(mask) + c);
    if (v == 0)
      r.terms_.erase(mask);
    else
      r.terms_[mask] = v;
  }
  return r;
}

EElem EElem::sub(const Ring& R, const EElem& o) const { return add(R, o.neg(R)); }

EElem EElem::mul(const Ring& R, const EElem& o) const {
  EElem r(std::max(m_, o.m_));
  for (auto& [s, cs] : terms_)
    for (auto& [t, ct] : o.terms_) {
      if (s & t) continue;
      Scalar v = R.normalize(cs * ct * shuffle_sign(s, t));
      if (v == 0) continue;
      uint32_t u = s | t;
      Scalar w = R.normalize(r.coeff(u) + v);
      if (w == 0)
        r.terms_.erase(u);
      else
        r.terms_[u] = w;
    }
  return r;
}

EElem EElem::scaled(const Ring& R, const Scalar& c) const {
  EElem r(m_);
  if (c == 0) return r;
  for (auto& [mask, v] : terms_) {
    Scalar w = R.normalize(v * c);
    if (w != 0) r.terms_[mask] = w;
  }
  return r;
}

EElem EElem::inv(const Ring& R) const {
  Scalar c = scalar_part();
  if (!R.is_unit(c)) throw Error(ErrorCode::INTERNAL, "EElem not invertible");
  Scalar cinv = R.inv(c);
  EElem nil = scaled(R, cinv).sub(R, EElem::scalar(m_, Scalar(1)));  // x/c - 1
  // (c(1+nil))^{-1} = c^{-1} sum (-nil)^k
  EElem acc = EElem::scalar(m_, Scalar(1));
  EElem pw = EElem::scalar(m_, Scalar(1));
  for (int k = 1; k <= m_; ++k) {
    pw = pw.mul(R, nil).neg(R);
    acc = acc.add(R, pw);
  }
  return acc.scaled(R, cinv);
}

std::string EElem::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [mask, c] : terms_) {
    if (!first) os << " + ";
    os << c.get_str();
    for (int i = 0; i < 32; ++i)
      if (mask >> i & 1u) os << "*x" << (i + 1);
    first = false;
  }
  return os.str();
}

EElem CellObject::dentry(int h, int g) const {
  auto it = d_.find({h, g});
  return it == d_.end() ? EElem(m_) : it->second;
}

void CellObject::set_dentry(int h, int g, EElem x) {
  if (x.is_zero())
    d_.erase({h, g});
  else
    d_[{h, g}] = std::move(x);
}

CellObject CellObject::shifted(int k) const {
  CellObject r(ring_, n_, m_);
  r.gens_ = gens_;
  for (auto& gen : r.gens_) gen.deg -= k;
  Scalar sgn = (k % 2 == 0) ? Scalar(1) : Scalar(-1);
  for (auto& [hg, x] : d_) r.d_[hg] = x.scaled(ring_, sgn);
  return r;
}

CellObject CellObject::twisted(int q) const {
  CellObject r(ring_, n_, m_);
  r.gens_ = gens_;
  for (auto& gen : r.gens_) gen.tw += q;
  r.d_ = d_;
  return r;
}

CellObject CellObject::direct_sum(const CellObject& o) const {
  if (!same_shape(o)) throw Error(ErrorCode::SHAPE_MISMATCH, "direct sum of different shapes");
  CellObject r(ring_, n_, m_);
  r.gens_ = gens_;
  r.gens_.insert(r.gens_.end(), o.gens_.begin(), o.gens_.end());
  r.d_ = d_;
  int off = gen_count();
  for (auto& [hg, x] : o.d_) r.d_[{hg.first + off, hg.second + off}] = x;
  return r;
}

CellObject CellObject::tate(const Ring& R, int n, int m, int q, int p) {
  CellObject c(R, n, m);
  c.add_gen(-p, q);
  return c;
}

void CellObject::validate() const {
  for (auto& [hg, x] : d_) {
    const EGen& h = gens_[hg.first];
    const EGen& g = gens_[hg.second];
    int k = g.deg + 1 - h.deg;
    if (h.tw - g.tw != k || k < 0 || k > m_ || !x.homogeneous(k))
      throw Error(ErrorCode::VALIDATION_ERROR, "inhomogeneous differential entry");
  }
  FlatCell f = flatten(*this);
  f.cx.validate();
  for (int i = 0; i < m_; ++i) f.xi[i].validate();
}

FlatCell flatten(const CellObject& M) {
  const Ring& R = M.ring();
  int m = M.m();
  FlatCell F;
  F.cx = GradedComplex(R);
  std::map<int, std::vector<int>> tws;
  for (int g = 0; g < M.gen_count(); ++g)
    for (uint32_t T = 0; T < (1u << m); ++T) {
      int k = __builtin_popcount(T);
      int deg = M.egen(g).deg + k;
      F.pos[{g, T}] = {deg, static_cast<int>(F.basis[deg].size())};
      F.basis[deg].push_back({g, T});
      tws[deg].push_back(M.egen(g).tw - k);
    }
  for (auto& [deg, v] : tws) F.cx.set_term(deg, v);
  // differential: d(xi_T e_g) = (-1)^{|T|} sum_h (xi_T * x_{hg}) e_h
  for (auto& [deg, v] : F.basis) {
    int n1 = F.cx.dim(deg + 1);
    if (n1 == 0) continue;
    Mat d(n1, static_cast<int>(v.size()));
    bool nz = false;
    for (int col = 0; col < static_cast<int>(v.size()); ++col) {
      auto [g, T] = v[col];
      Scalar sgn = (__builtin_popcount(T) % 2 == 0) ? Scalar(1) : Scalar(-1);
      for (auto& [hg, x] : M.dentries()) {
        if (hg.second != g) continue;
        EElem xt = EElem::monomial(m, T, sgn).mul(R, x);
        for (auto& [mask, c] : xt.terms()) {
          auto it = F.pos.find({hg.first, mask});
          if (it == F.pos.end() || it->second.first != deg + 1) continue;
          d(it->second.second, col) = R.normalize(d(it->second.second, col) + c);
          nz = true;
        }
      }
    }
    if (nz) F.cx.set_diff(deg, std::move(d));
  }
  // xi actions: xi_i (xi_T e_g) = sign * xi_{T+i} e_g, as maps M -> M(1)[1]
  GradedComplex tgt = F.cx.twisted(1).shifted(1);
  for (int i = 0; i < m; ++i) {
    ComplexMap a(F.cx, tgt);
    for (auto& [deg, v] : F.basis) {
      Mat mt(tgt.dim(deg), static_cast<int>(v.size()));
      bool nz = false;
      for (int col = 0; col < static_cast<int>(v.size()); ++col) {
        auto [g, T] = v[col];
        if (T >> i & 1u) continue;
        int sgn = shuffle_sign(1u << i, T);
        auto it = F.pos.find({g, T | (1u << i)});
        if (it == F.pos.end()) continue;
        mt(it->second.second, col) = sgn;
        nz = true;
      }
      if (nz) a.set_comp(deg, std::move(mt));
    }
    F.xi.push_back(std::move(a));
  }
  return F;
}

EElem CellMap::entry(int h, int g) const {
  auto it = entries_.find({h, g});
  return it == entries_.end() ? EElem(src_.m()) : it->second;
}

void CellMap::set_entry(int h, int g, EElem x) {
  if (x.is_zero())
    entries_.erase({h, g});
  else
    entries_[{h, g}] = std::move(x);
}

CellMap CellMap::identity(const CellObject& M) {
  CellMap f(M, M);
  for (int g = 0; g < M.gen_count(); ++g) f.set_entry(g, g, EElem::scalar(M.m(), Scalar(1)));
  return f;
}

CellMap CellMap::zero(const CellObject& src, const CellObject& tgt) { return CellMap(src, tgt); }

CellMap CellMap::compose(const CellMap& inner) const {
  // (this o inner)(e_g) = this(sum phi_{hg} e_h) = sum phi_{hg} this(e_h)
  const Ring& R = src_.ring();
  CellMap r(inner.src_, tgt_);
  for (auto& [hg, phi] : inner.entries_)
    for (auto& [kh, psi] : entries_) {
      if (kh.second != hg.first) continue;
      EElem prod = phi.mul(R, psi);
      EElem cur = r.entry(kh.first, hg.second);
      r.set_entry(kh.first, hg.second, cur.add(R, prod));
    }
  return r;
}

CellMap CellMap::add(const CellMap& o) const {
  const Ring& R = src_.ring();
  CellMap r(src_, tgt_);
  r.entries_ = entries_;
  for (auto& [hg, x] : o.entries_)
    r.set_entry(hg.first, hg.second, r.entry(hg.first, hg.second).add(R, x));
  return r;
}

CellMap CellMap::scaled(const Scalar& c) const {
  CellMap r(src_, tgt_);
  for (auto& [hg, x] : entries_) r.set_entry(hg.first, hg.second, x.scaled(src_.ring(), c));
  return r;
}

CellMap CellMap::shifted(int k) const {
  CellMap r(src_.shifted(k), tgt_.shifted(k));
  r.entries_ = entries_;
  return r;
}

CellMap CellMap::twisted(int q) const {
  CellMap r(src_.twisted(q), tgt_.twisted(q));
  r.entries_ = entries_;
  return r;
}

ComplexMap CellMap::flat() const {
  const Ring& R = src_.ring();
  int m = src_.m();
  FlatCell FS = flatten(src_), FT = flatten(tgt_);
  ComplexMap f(FS.cx, FT.cx);
  for (auto& [deg, v] : FS.basis) {
    Mat mt(FT.cx.dim(deg), static_cast<int>(v.size()));
    bool nz = false;
    for (int col = 0; col < static_cast<int>(v.size()); ++col) {
      auto [g, T] = v[col];
      // f(xi_T e_g) = xi_T f(e_g) (f has degree 0)
      for (auto& [hg, phi] : entries_) {
        if (hg.second != g) continue;
        EElem xt = EElem::monomial(m, T, Scalar(1)).mul(R, phi);
        for (auto& [mask, c] : xt.terms()) {
          auto it = FT.pos.find({hg.first, mask});
          if (it == FT.pos.end() || it->second.first != deg) continue;
          mt(it->second.second, col) = R.normalize(mt(it->second.second, col) + c);
          nz = true;
        }
      }
    }
    if (nz) f.set_comp(deg, std::move(mt));
  }
  return f;
}

void CellMap::validate() const {
  if (!src_.same_shape(tgt_)) throw Error(ErrorCode::SHAPE_MISMATCH, "cell map across shapes");
  for (auto& [hg, x] : entries_) {
    const EGen& h = tgt_.egens()[hg.first];
    const EGen& g = src_.egens()[hg.second];
    int k = g.deg - h.deg;
    if (h.tw - g.tw != k || k < 0 || !x.homogeneous(k))
      throw Error(ErrorCode::VALIDATION_ERROR, "inhomogeneous cell map entry");
  }
  ComplexMap f = flat();
  f.validate();
  // E-linearity at the flat level: f(1)[1] o xi_i = xi_i o f
  FlatCell FS = flatten(src_), FT = flatten(tgt_);
  for (int i = 0; i < src_.m(); ++i) {
    ComplexMap lhs = f.twisted(1).shifted(1).compose(FS.xi[i]);
    ComplexMap rhs = FT.xi[i].compose(f);
    for (int deg = FS.cx.min_deg(); deg <= FS.cx.max_deg(); ++deg)
      if (lhs.comp(deg) != rhs.comp(deg))
        throw Error(ErrorCode::VALIDATION_ERROR, "cell map is not E-linear");
  }
}

CellObject cell_cone(const CellMap& f) {
  // cone = A[1] (+) B; the E-action on a shifted dg-module acquires the sign
  // (-1)^{|x|}, so the A-block entries are -(-1)^{|x|} x rather than -x.
  const CellObject& A = f.src();
  const CellObject& B = f.tgt();
  const Ring& R = A.ring();
  CellObject r(R, A.n(), A.m());
  int na = A.gen_count();
  for (auto& g : A.egens()) r.add_gen(g.deg - 1, g.tw);
  for (auto& g : B.egens()) r.add_gen(g.deg, g.tw);
  for (auto& [hg, x] : A.dentries()) {
    int k = A.egen(hg.second).deg + 1 - A.egen(hg.first).deg;
    Scalar s = (k % 2 == 0) ? Scalar(-1) : Scalar(1);
    r.set_dentry(hg.first, hg.second, x.scaled(R, s));
  }
  for (auto& [hg, x] : f.entries()) r.set_dentry(na + hg.first, hg.second, x);
  for (auto& [hg, x] : B.dentries()) r.set_dentry(na + hg.first, na + hg.second, x);
  return r;
}

CellMap cell_cone_include_target(const CellMap& f) {
  CellObject cn = cell_cone(f);
  CellMap inc(f.tgt(), cn);
  int na = f.src().gen_count();
  for (int g = 0; g < f.tgt().gen_count(); ++g)
    inc.set_entry(na + g, g, EElem::scalar(f.src().m(), Scalar(1)));
  return inc;
}


std::vector<std::array<uint32_t, 3>> cell_hom_gens(const CellObject& M, const CellObject& N, int deg) {
  std::vector<std::array<uint32_t, 3>> out;
  for (uint32_t g = 0; g < static_cast<uint32_t>(M.gen_count()); ++g)
    for (uint32_t h = 0; h < static_cast<uint32_t>(N.gen_count()); ++h)
      for (uint32_t T = 0; T < (1u << M.m()); ++T) {
        int k = __builtin_popcount(T);
        if (N.egen(static_cast<int>(h)).deg + k - M.egen(static_cast<int>(g)).deg == deg)
          out.push_back({g, h, T});
      }
  return out;
}

GradedComplex cell_hom_complex(const CellObject& M, const CellObject& N) {
  if (!M.same_shape(N)) throw Error(ErrorCode::SHAPE_MISMATCH, "hom across shapes");
  const Ring& R = M.ring();
  int m = M.m();
  GradedComplex H(R);
  if (M.gen_count() == 0 || N.gen_count() == 0) return H;
  int lo = 1 << 30, hi = -(1 << 30);
  for (auto& g : M.egens()) { lo = std::min(lo, -g.deg); hi = std::max(hi, -g.deg); }
  int nlo = 1 << 30, nhi = -(1 << 30);
  for (auto& h : N.egens()) { nlo = std::min(nlo, h.deg); nhi = std::max(nhi, h.deg); }
  std::map<int, std::vector<std::array<uint32_t, 3>>> basis;
  std::map<std::array<uint32_t, 3>, std::pair<int, int>> pos;
  for (int deg = nlo + lo; deg <= nhi + hi + m; ++deg) {
    auto v = cell_hom_gens(M, N, deg);
    if (v.empty()) continue;
    std::vector<int> tws;
    for (auto& [g, h, T] : v) {
      pos[{g, h, T}] = {deg, static_cast<int>(tws.size())};
      tws.push_back(N.egen(static_cast<int>(h)).tw - __builtin_popcount(T) -
                    M.egen(static_cast<int>(g)).tw);
    }
    basis[deg] = v;
    H.set_term(deg, std::move(tws));
  }
  // d psi = d_N o psi - (-1)^{|psi|} psi o d_M
  for (auto& [deg, v] : basis) {
    int n1 = H.dim(deg + 1);
    if (n1 == 0) continue;
    Mat d(n1, static_cast<int>(v.size()));
    bool nz = false;
    auto put = [&](uint32_t g, uint32_t h, uint32_t T, int col, const Scalar& c) {
      if (c == 0) return;
      auto it = pos.find({g, h, T});
      if (it == pos.end() || it->second.first != deg + 1) return;
      d(it->second.second, col) = R.normalize(d(it->second.second, col) + c);
      nz = true;
    };
    for (int col = 0; col < static_cast<int>(v.size()); ++col) {
      auto [g, h, T] = v[col];
      int Tk = __builtin_popcount(T);
      Scalar sT = (Tk % 2 == 0) ? Scalar(1) : Scalar(-1);
      for (auto& [kh, y] : N.dentries()) {
        if (kh.second != static_cast<int>(h)) continue;
        EElem xt = EElem::monomial(m, T, sT).mul(R, y);
        for (auto& [mask, c] : xt.terms()) put(g, static_cast<uint32_t>(kh.first), mask, col, c);
      }
      Scalar spsi = (deg % 2 == 0) ? Scalar(1) : Scalar(-1);
      for (auto& [gg, x] : M.dentries()) {
        if (gg.first != static_cast<int>(g)) continue;
        int xk = M.egen(gg.second).deg + 1 - M.egen(gg.first).deg;
        Scalar sx = ((xk * deg) % 2 == 0) ? Scalar(1) : Scalar(-1);
        EElem xt = x.mul(R, EElem::monomial(m, T, Scalar(1)));
        Scalar coef = R.normalize(Scalar(-1) * spsi * sx);
        for (auto& [mask, c] : xt.terms())
          put(static_cast<uint32_t>(gg.second), h, mask, col, R.normalize(coef * c));
      }
    }
    if (nz) H.set_diff(deg, std::move(d));
  }
  return H;
}

HomTable cell_hom(const CellObject& M, const CellObject& N) {
  return hom_table_of(cell_hom_complex(M, N));
}

CellMap cell_cycle_to_map(const CellObject& M, const CellObject& N, int k,
                          const std::vector<Scalar>& coords) {
  const Ring& R = M.ring();
  auto gens = cell_hom_gens(M, N, k);
  if (coords.size() != gens.size()) throw Error(ErrorCode::INTERNAL, "cell hom coords size mismatch");
  CellMap f(M, N.shifted(k));
  for (size_t i = 0; i < gens.size(); ++i) {
    if (coords[i] == 0) continue;
    auto [g, h, T] = gens[i];
    EElem cur = f.entry(static_cast<int>(h), static_cast<int>(g));
    f.set_entry(static_cast<int>(h), static_cast<int>(g),
                cur.add(R, EElem::monomial(M.m(), T, coords[i])));
  }
  return f;
}

CellObject cell_tensor(const CellObject& M, const CellObject& N) {
  // Relative tensor over E (underived: both sides are free complexes), the
  // monoidal structure with unit E. Generators are pairs e_g (x) f_h and
  // d(e (x) f) = de (x) f + (-1)^{deg e} e (x) df, with the Koszul sign for
  // moving an E-coefficient across the left factor.
  if (!M.same_shape(N)) throw Error(ErrorCode::SHAPE_MISMATCH, "tensor across shapes");
  const Ring& R = M.ring();
  CellObject r(R, M.n(), M.m());
  auto pid = [&](int g, int h) { return g * N.gen_count() + h; };
  for (int g = 0; g < M.gen_count(); ++g)
    for (int h = 0; h < N.gen_count(); ++h)
      r.add_gen(M.egen(g).deg + N.egen(h).deg, M.egen(g).tw + N.egen(h).tw);
  for (auto& [gg, x] : M.dentries())
    for (int h = 0; h < N.gen_count(); ++h) {
      EElem cur = r.dentry(pid(gg.first, h), pid(gg.second, h));
      r.set_dentry(pid(gg.first, h), pid(gg.second, h), cur.add(R, x));
    }
  for (auto& [hh, y] : N.dentries())
    for (int g = 0; g < M.gen_count(); ++g) {
      int yk = N.egen(hh.second).deg + 1 - N.egen(hh.first).deg;
      int e = M.egen(g).deg * (1 + yk);
      Scalar s = (e % 2 == 0) ? Scalar(1) : Scalar(-1);
      EElem cur = r.dentry(pid(g, hh.first), pid(g, hh.second));
      r.set_dentry(pid(g, hh.first), pid(g, hh.second), cur.add(R, y.scaled(R, s)));
    }
  return r;
}

CellMinimizeResult cell_minimize(const CellObject& M0) {
  const Ring& R = M0.ring();
  CellObject cur = M0;
  CellMap F = CellMap::identity(M0), G = CellMap::identity(M0);
  for (;;) {
    int pi = -1, pj = -1;
    for (auto& [hg, x] : cur.dentries()) {
      if (!x.homogeneous(0)) continue;
      if (R.is_unit(x.scalar_part())) { pi = hg.first; pj = hg.second; break; }
    }
    if (pi < 0) break;
    Scalar phi = cur.dentry(pi, pj).scalar_part();
    Scalar phinv = R.inv(phi);
    CellObject nxt(R, cur.n(), cur.m());
    std::vector<int> newidx(cur.gen_count(), -1);
    for (int g = 0; g < cur.gen_count(); ++g) {
      if (g == pi || g == pj) continue;
      newidx[g] = nxt.add_gen(cur.egen(g).deg, cur.egen(g).tw);
    }
    // x'_{hg} = x_{hg} - phi^{-1} x_{pi,g} x_{h,pj}
    for (int g = 0; g < cur.gen_count(); ++g) {
      if (newidx[g] < 0) continue;
      for (int h = 0; h < cur.gen_count(); ++h) {
        if (newidx[h] < 0) continue;
        EElem x = cur.dentry(h, g);
        EElem corr = cur.dentry(pi, g).mul(R, cur.dentry(h, pj)).scaled(R, phinv);
        x = x.sub(R, corr);
        nxt.set_dentry(newidx[h], newidx[g], std::move(x));
      }
    }
    CellMap f(cur, nxt), g2(nxt, cur);
    for (int g = 0; g < cur.gen_count(); ++g) {
      if (newidx[g] < 0) continue;
      f.set_entry(newidx[g], g, EElem::scalar(cur.m(), Scalar(1)));
      g2.set_entry(g, newidx[g], EElem::scalar(cur.m(), Scalar(1)));
    }
    for (int g = 0; g < cur.gen_count(); ++g) {
      if (newidx[g] < 0) continue;
      EElem fcorr = cur.dentry(g, pj).scaled(R, phinv).neg(R);
      if (!fcorr.is_zero()) f.set_entry(newidx[g], pi, fcorr);
      EElem gcorr = cur.dentry(pi, g).scaled(R, phinv).neg(R);
      if (!gcorr.is_zero()) g2.set_entry(pj, newidx[g], gcorr);
    }
    F = f.compose(F);
    G = G.compose(g2);
    cur = nxt;
  }
  return {cur, F, G};
}

int gen_weight(const EGen& g) { return -g.deg - 2 * g.tw; }

CellWTrunc cell_brutal_weight_trunc(const CellObject& M, int k) {
  const Ring& R = M.ring();
  CellObject lo(R, M.n(), M.m()), hi(R, M.n(), M.m());
  std::vector<int> li(M.gen_count(), -1), hidx(M.gen_count(), -1);
  for (int g = 0; g < M.gen_count(); ++g) {
    if (gen_weight(M.egen(g)) <= k)
      li[g] = lo.add_gen(M.egen(g).deg, M.egen(g).tw);
    else
      hidx[g] = hi.add_gen(M.egen(g).deg, M.egen(g).tw);
  }
  for (auto& [hg, x] : M.dentries()) {
    if (li[hg.first] >= 0 && li[hg.second] >= 0) lo.set_dentry(li[hg.first], li[hg.second], x);
    if (hidx[hg.first] >= 0 && hidx[hg.second] >= 0) hi.set_dentry(hidx[hg.first], hidx[hg.second], x);
  }
  CellWTrunc r{lo, hi, CellMap(lo, M), CellMap(M, hi)};
  for (int g = 0; g < M.gen_count(); ++g) {
    if (li[g] >= 0) r.incl.set_entry(g, li[g], EElem::scalar(M.m(), Scalar(1)));
    if (hidx[g] >= 0) r.proj.set_entry(hidx[g], g, EElem::scalar(M.m(), Scalar(1)));
  }
  return r;
}

}  // namespace strat
