#include "strat/gradedcomplex.hpp"

#include <algorithm>
#include <sstream>

namespace strat {

std::string GradedModule::str() const {
  if (comps.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [tw, c] : comps) {
    for (int i = 0; i < c.first; ++i) {
      if (!first) os << " + ";
      os << "L(" << tw << ")";
      first = false;
    }
    for (auto& t : c.second) {
      if (!first) os << " + ";
      os << "L/(" << t.get_str() << ")(" << tw << ")";
      first = false;
    }
  }
  return os.str();
}

Mat GradedComplex::diff(int c) const {
  auto it = diffs_.find(c);
  if (it != diffs_.end()) return it->second;
  return Mat::zero(dim(c + 1), dim(c));
}

int GradedComplex::total_dim() const {
  int n = 0;
  for (auto& [c, g] : terms_) n += static_cast<int>(g.size());
  return n;
}

void GradedComplex::set_term(int c, std::vector<int> tws) {
  if (tws.empty())
    terms_.erase(c);
  else
    terms_[c] = std::move(tws);
}

void GradedComplex::set_diff(int c, Mat d) {
  if (d.rows() != dim(c + 1) || d.cols() != dim(c))
    throw Error(ErrorCode::VALIDATION_ERROR, "differential shape mismatch at degree " + std::to_string(c));
  d.normalize(ring_);
  if (d.is_zero())
    diffs_.erase(c);
  else
    diffs_[c] = std::move(d);
}

void GradedComplex::validate() const {
  for (auto& [c, d] : diffs_) {
    if (d.rows() != dim(c + 1) || d.cols() != dim(c))
      throw Error(ErrorCode::VALIDATION_ERROR, "differential shape mismatch at degree " + std::to_string(c));
    const auto& src = gens(c);
    const auto& tgt = gens(c + 1);
    for (int i = 0; i < d.rows(); ++i)
      for (int j = 0; j < d.cols(); ++j)
        if (d(i, j) != 0 && tgt[i] != src[j])
          throw Error(ErrorCode::VALIDATION_ERROR, "twist-violating differential entry at degree " + std::to_string(c));
  }
  for (auto& [c, d] : diffs_) {
    auto it = diffs_.find(c + 1);
    if (it == diffs_.end()) continue;
    if (!it->second.mul(ring_, d).is_zero())
      throw Error(ErrorCode::VALIDATION_ERROR, "d*d != 0 at degree " + std::to_string(c));
  }
}

GradedComplex GradedComplex::shifted(int n) const {
  GradedComplex r(ring_);
  for (auto& [c, g] : terms_) r.terms_[c - n] = g;
  Scalar sgn = (n % 2 == 0) ? Scalar(1) : Scalar(-1);
  for (auto& [c, d] : diffs_) {
    Mat m = d.scaled(ring_, sgn);
    if (!m.is_zero()) r.diffs_[c - n] = std::move(m);
  }
  return r;
}

GradedComplex GradedComplex::twisted(int q) const {
  GradedComplex r(ring_);
  for (auto& [c, g] : terms_) {
    std::vector<int> tws = g;
    for (auto& t : tws) t += q;
    r.terms_[c] = std::move(tws);
  }
  r.diffs_ = diffs_;
  return r;
}

GradedComplex GradedComplex::direct_sum(const GradedComplex& o) const {
  GradedComplex r(ring_);
  int lo = std::min(min_deg(), o.min_deg()), hi = std::max(max_deg(), o.max_deg());
  if (is_zero_object() && o.is_zero_object()) return r;
  for (int c = lo; c <= hi; ++c) {
    std::vector<int> g = gens(c);
    const auto& g2 = o.gens(c);
    g.insert(g.end(), g2.begin(), g2.end());
    r.set_term(c, std::move(g));
  }
  for (int c = lo; c < hi; ++c) {
    Mat d = Mat::block_diag(diff(c), o.diff(c));
    r.set_diff(c, std::move(d));
  }
  return r;
}

void GradedComplex::prune() {
  for (auto it = diffs_.begin(); it != diffs_.end();) {
    if (it->second.is_zero() || it->second.rows() == 0 || it->second.cols() == 0)
      it = diffs_.erase(it);
    else
      ++it;
  }
}

namespace {
std::vector<int> indices_with_tw(const std::vector<int>& tws, int g) {
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(tws.size()); ++i)
    if (tws[i] == g) idx.push_back(i);
  return idx;
}
}  // namespace

GradedModule GradedComplex::homology(int c) const {
  GradedModule H;
  std::vector<int> tws_here = gens(c);
  std::vector<int> distinct = tws_here;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (int g : distinct) {
    auto src_idx = indices_with_tw(gens(c), g);
    auto out_rows = indices_with_tw(gens(c + 1), g);
    auto in_cols = indices_with_tw(gens(c - 1), g);
    Mat B = diff(c).submatrix(out_rows, src_idx);
    Mat A = diff(c - 1).submatrix(src_idx, in_cols);
    Mat K = kernel_basis(ring_, B);
    if (K.cols() == 0) continue;
    Mat X;
    if (!solve(ring_, K, A, &X))
      throw Error(ErrorCode::INTERNAL, "image not contained in kernel");
    CokerNF nf = cokernel(ring_, X);
    H.insert(g, nf.free_rank, nf.torsion);
  }
  return H;
}

std::map<int, GradedModule> GradedComplex::homology_all() const {
  std::map<int, GradedModule> r;
  for (int c = min_deg(); c <= max_deg(); ++c) {
    GradedModule h = homology(c);
    if (!h.is_zero()) r[c] = std::move(h);
  }
  return r;
}

bool GradedComplex::is_acyclic() const { return homology_all().empty(); }

std::map<int, long> GradedComplex::euler() const {
  std::map<int, long> e;
  for (auto& [c, g] : terms_) {
    long s = (c % 2 == 0) ? 1 : -1;
    for (int tw : g) e[tw] += s;
  }
  for (auto it = e.begin(); it != e.end();)
    it = (it->second == 0) ? e.erase(it) : std::next(it);
  return e;
}

GradedComplex GradedComplex::unit(const Ring& R, int tw, int shift) {
  GradedComplex c(R);
  c.set_term(-shift, {tw});
  return c;
}

Mat ComplexMap::comp(int c) const {
  auto it = comps_.find(c);
  if (it != comps_.end()) return it->second;
  return Mat::zero(tgt_.dim(c), src_.dim(c));
}

void ComplexMap::set_comp(int c, Mat m) {
  if (m.rows() != tgt_.dim(c) || m.cols() != src_.dim(c))
    throw Error(ErrorCode::VALIDATION_ERROR, "map component shape mismatch at degree " + std::to_string(c));
  m.normalize(ring());
  if (m.is_zero())
    comps_.erase(c);
  else
    comps_[c] = std::move(m);
}

void ComplexMap::validate() const {
  const Ring& R = src_.ring();
  for (auto& [c, m] : comps_) {
    const auto& s = src_.gens(c);
    const auto& t = tgt_.gens(c);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0 && t[i] != s[j])
          throw Error(ErrorCode::VALIDATION_ERROR, "twist-violating map entry at degree " + std::to_string(c));
  }
  int lo = std::min(src_.min_deg(), tgt_.min_deg()) - 1;
  int hi = std::max(src_.max_deg(), tgt_.max_deg()) + 1;
  for (int c = lo; c <= hi; ++c) {
    Mat lhs = tgt_.diff(c).mul(R, comp(c));
    Mat rhs = comp(c + 1).mul(R, src_.diff(c));
    if (lhs != rhs)
      throw Error(ErrorCode::VALIDATION_ERROR, "map does not commute with differential at degree " + std::to_string(c));
  }
}

ComplexMap ComplexMap::identity(const GradedComplex& c) {
  ComplexMap f(c, c);
  for (auto& [deg, g] : c.terms()) f.set_comp(deg, Mat::identity(static_cast<int>(g.size())));
  return f;
}

ComplexMap ComplexMap::zero(const GradedComplex& src, const GradedComplex& tgt) {
  return ComplexMap(src, tgt);
}

ComplexMap ComplexMap::compose(const ComplexMap& inner) const {
  ComplexMap r(inner.src_, tgt_);
  const Ring& R = ring();
  int lo = std::min(inner.src_.min_deg(), src_.min_deg());
  int hi = std::max(inner.src_.max_deg(), src_.max_deg());
  for (int c = lo; c <= hi; ++c) {
    Mat m = comp(c).mul(R, inner.comp(c));
    r.set_comp(c, std::move(m));
  }
  return r;
}

ComplexMap ComplexMap::add(const ComplexMap& o) const {
  ComplexMap r(src_, tgt_);
  int lo = std::min(src_.min_deg(), tgt_.min_deg());
  int hi = std::max(src_.max_deg(), tgt_.max_deg());
  for (int c = lo; c <= hi; ++c) r.set_comp(c, comp(c).add(ring(), o.comp(c)));
  return r;
}

ComplexMap ComplexMap::scaled(const Scalar& c) const {
  ComplexMap r(src_, tgt_);
  for (auto& [deg, m] : comps_) r.set_comp(deg, m.scaled(ring(), c));
  return r;
}

ComplexMap ComplexMap::shifted(int n) const {
  ComplexMap r(src_.shifted(n), tgt_.shifted(n));
  for (auto& [deg, m] : comps_) r.set_comp(deg - n, m);
  return r;
}

ComplexMap ComplexMap::twisted(int q) const {
  ComplexMap r(src_.twisted(q), tgt_.twisted(q));
  for (auto& [deg, m] : comps_) r.set_comp(deg, m);
  return r;
}

bool ComplexMap::is_zero_map() const {
  for (auto& [deg, m] : comps_)
    if (!m.is_zero()) return false;
  return true;
}

GradedComplex cone(const ComplexMap& f) {
  // cone(f)^c = A^{c+1} (+) B^c with d = [[-dA, 0], [f, dB]].
  const GradedComplex& A = f.src();
  const GradedComplex& B = f.tgt();
  const Ring& R = A.ring();
  GradedComplex r(R);
  int lo = std::min(A.min_deg() - 1, B.min_deg());
  int hi = std::max(A.max_deg() - 1, B.max_deg());
  for (int c = lo; c <= hi; ++c) {
    std::vector<int> g = A.gens(c + 1);
    const auto& gb = B.gens(c);
    g.insert(g.end(), gb.begin(), gb.end());
    r.set_term(c, std::move(g));
  }
  for (int c = lo; c < hi; ++c) {
    int na1 = A.dim(c + 2), na0 = A.dim(c + 1), nb1 = B.dim(c + 1), nb0 = B.dim(c);
    Mat d(na1 + nb1, na0 + nb0);
    Mat dA = A.diff(c + 1), dB = B.diff(c), fc = f.comp(c + 1);
    for (int i = 0; i < na1; ++i)
      for (int j = 0; j < na0; ++j) d(i, j) = R.neg(dA(i, j));
    for (int i = 0; i < nb1; ++i)
      for (int j = 0; j < na0; ++j) d(na1 + i, j) = fc(i, j);
    for (int i = 0; i < nb1; ++i)
      for (int j = 0; j < nb0; ++j) d(na1 + i, na0 + j) = dB(i, j);
    r.set_diff(c, std::move(d));
  }
  return r;
}

ComplexMap cone_include_target(const ComplexMap& f) {
  GradedComplex cn = cone(f);
  ComplexMap inc(f.tgt(), cn);
  for (int c = cn.min_deg(); c <= cn.max_deg(); ++c) {
    int na = f.src().dim(c + 1), nb = f.tgt().dim(c);
    if (nb == 0) continue;
    Mat m(na + nb, nb);
    for (int i = 0; i < nb; ++i) m(na + i, i) = 1;
    inc.set_comp(c, std::move(m));
  }
  return inc;
}

ComplexMap cone_project_shifted_source(const ComplexMap& f) {
  GradedComplex cn = cone(f);
  GradedComplex a1 = f.src().shifted(1);
  ComplexMap pr(cn, a1);
  for (int c = cn.min_deg(); c <= cn.max_deg(); ++c) {
    int na = f.src().dim(c + 1), nb = f.tgt().dim(c);
    if (na == 0) continue;
    Mat m(na, na + nb);
    for (int i = 0; i < na; ++i) m(i, i) = 1;
    pr.set_comp(c, std::move(m));
  }
  return pr;
}

namespace {

// Generator bookkeeping for tensor/hom complexes: in each total degree, the
// list of (source-degree, i, j) triples in deterministic order.
struct PairIndex {
  std::map<int, std::vector<std::array<int, 3>>> by_deg;
  std::map<std::array<int, 4>, int> pos;  // (deg,p,i,j) -> index within deg
  void add(int deg, int p, int i, int j) {
    pos[{deg, p, i, j}] = static_cast<int>(by_deg[deg].size());
    by_deg[deg].push_back({p, i, j});
  }
  int find(int deg, int p, int i, int j) const {
    auto it = pos.find({deg, p, i, j});
    return it == pos.end() ? -1 : it->second;
  }
};

}  // namespace

GradedComplex tensor(const GradedComplex& A, const GradedComplex& B) {
  const Ring& R = A.ring();
  GradedComplex r(R);
  if (A.is_zero_object() || B.is_zero_object()) return r;
  PairIndex idx;
  for (int n = A.min_deg() + B.min_deg(); n <= A.max_deg() + B.max_deg(); ++n) {
    std::vector<int> tws;
    for (int p = A.min_deg(); p <= A.max_deg(); ++p) {
      int q = n - p;
      const auto& ga = A.gens(p);
      const auto& gb = B.gens(q);
      for (int i = 0; i < static_cast<int>(ga.size()); ++i)
        for (int j = 0; j < static_cast<int>(gb.size()); ++j) {
          idx.add(n, p, i, j);
          tws.push_back(ga[i] + gb[j]);
        }
    }
    r.set_term(n, std::move(tws));
  }
  for (int n = r.min_deg(); n < r.max_deg(); ++n) {
    auto it0 = idx.by_deg.find(n);
    auto it1 = idx.by_deg.find(n + 1);
    if (it0 == idx.by_deg.end() || it1 == idx.by_deg.end()) continue;
    Mat d(static_cast<int>(it1->second.size()), static_cast<int>(it0->second.size()));
    for (int col = 0; col < static_cast<int>(it0->second.size()); ++col) {
      auto [p, i, j] = it0->second[col];
      Mat dA = A.diff(p), dB = B.diff(n - p);
      for (int i2 = 0; i2 < dA.rows(); ++i2) {
        if (dA(i2, i) == 0) continue;
        int row = idx.find(n + 1, p + 1, i2, j);
        if (row >= 0) d(row, col) = R.normalize(d(row, col) + dA(i2, i));
      }
      Scalar sgn = (p % 2 == 0) ? Scalar(1) : Scalar(-1);
      for (int j2 = 0; j2 < dB.rows(); ++j2) {
        if (dB(j2, j) == 0) continue;
        int row = idx.find(n + 1, p, i, j2);
        if (row >= 0) d(row, col) = R.normalize(d(row, col) + sgn * dB(j2, j));
      }
    }
    r.set_diff(n, std::move(d));
  }
  return r;
}

ComplexMap tensor_map(const ComplexMap& f, const ComplexMap& g) {
  GradedComplex S = tensor(f.src(), g.src());
  GradedComplex T = tensor(f.tgt(), g.tgt());
  const Ring& R = S.ring();
  ComplexMap r(S, T);
  // Rebuild the same pair indexing as tensor() and map (p,i,j) -> (p,i',j').
  for (int n = S.min_deg(); n <= S.max_deg(); ++n) {
    Mat m(T.dim(n), S.dim(n));
    // enumerate source pairs in tensor order
    int col = 0;
    for (int p = f.src().min_deg(); p <= f.src().max_deg(); ++p) {
      int q = n - p;
      int sa = f.src().dim(p), sb = g.src().dim(q);
      if (sa == 0 || sb == 0) continue;
      Mat fc = f.comp(p), gc = g.comp(q);
      for (int i = 0; i < sa; ++i)
        for (int j = 0; j < sb; ++j, ++col) {
          // image: sum_{i',j'} f(i',i) g(j',j) e_{p,i'} (x) e_{q,j'}
          int row = 0;
          for (int p2 = f.tgt().min_deg(); p2 <= f.tgt().max_deg(); ++p2) {
            int q2 = n - p2;
            int ta = f.tgt().dim(p2), tb = g.tgt().dim(q2);
            if (ta == 0 || tb == 0) continue;
            for (int i2 = 0; i2 < ta; ++i2)
              for (int j2 = 0; j2 < tb; ++j2, ++row) {
                if (p2 != p) continue;
                if (fc(i2, i) == 0 || gc(j2, j) == 0) continue;
                m(row, col) = R.normalize(fc(i2, i) * gc(j2, j));
              }
          }
        }
    }
    r.set_comp(n, std::move(m));
  }
  return r;
}

GradedComplex hom_complex(const GradedComplex& A, const GradedComplex& B) {
  const Ring& R = A.ring();
  GradedComplex r(R);
  if (A.is_zero_object() || B.is_zero_object()) return r;
  PairIndex idx;
  int lo = B.min_deg() - A.max_deg(), hi = B.max_deg() - A.min_deg();
  for (int n = lo; n <= hi; ++n) {
    std::vector<int> tws;
    for (int p = A.min_deg(); p <= A.max_deg(); ++p) {
      const auto& ga = A.gens(p);
      const auto& gb = B.gens(p + n);
      for (int i = 0; i < static_cast<int>(ga.size()); ++i)
        for (int j = 0; j < static_cast<int>(gb.size()); ++j) {
          idx.add(n, p, i, j);
          tws.push_back(gb[j] - ga[i]);
        }
    }
    r.set_term(n, std::move(tws));
  }
  for (int n = lo; n < hi; ++n) {
    auto it0 = idx.by_deg.find(n);
    auto it1 = idx.by_deg.find(n + 1);
    if (it0 == idx.by_deg.end() || it1 == idx.by_deg.end()) continue;
    Mat d(static_cast<int>(it1->second.size()), static_cast<int>(it0->second.size()));
    Scalar sgn = (n % 2 == 0) ? Scalar(-1) : Scalar(1);  // -(-1)^n
    for (int col = 0; col < static_cast<int>(it0->second.size()); ++col) {
      auto [p, i, j] = it0->second[col];
      // d_B-post-composition: e_{p,i,j} -> sum_{j'} (dB)_{j',j} e_{p,i,j'}
      Mat dB = B.diff(p + n);
      for (int j2 = 0; j2 < dB.rows(); ++j2) {
        if (dB(j2, j) == 0) continue;
        int row = idx.find(n + 1, p, i, j2);
        if (row >= 0) d(row, col) = R.normalize(d(row, col) + dB(j2, j));
      }
      // -(-1)^n pre-composition with d_A: contributes to e_{p-1, i', j}
      Mat dA = A.diff(p - 1);
      for (int i2 = 0; i2 < dA.cols(); ++i2) {
        if (dA(i, i2) == 0) continue;
        int row = idx.find(n + 1, p - 1, i2, j);
        if (row >= 0) d(row, col) = R.normalize(d(row, col) + sgn * dA(i, i2));
      }
    }
    r.set_diff(n, std::move(d));
  }
  return r;
}

HomTable hom_table_of(const GradedComplex& homcx) {
  HomTable t;
  auto H = homcx.homology_all();
  for (auto& [p, h] : H)
    for (auto& [tw, comp] : h.comps) {
      GradedModule m;
      m.insert(0, comp.first, comp.second);  // record at twist 0; table key carries q
      t.entries[{-tw, p}] = std::move(m);
    }
  return t;
}

HomTable hom_table(const GradedComplex& a, const GradedComplex& b) {
  return hom_table_of(hom_complex(a, b));
}

std::string HomTable::str() const {
  std::ostringstream os;
  for (auto& [qp, m] : entries)
    os << "(" << qp.first << "," << qp.second << "): " << m.str() << "\n";
  return os.str();
}

std::vector<std::array<int, 3>> hom_gens(const GradedComplex& A, const GradedComplex& B, int n) {
  std::vector<std::array<int, 3>> g;
  for (int p = A.min_deg(); p <= A.max_deg(); ++p) {
    int na = A.dim(p), nb = B.dim(p + n);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j) g.push_back({p, i, j});
  }
  return g;
}

ComplexMap hom_cycle_to_map(const GradedComplex& A, const GradedComplex& B, int n,
                            const std::vector<Scalar>& coords) {
  GradedComplex Bn = B.shifted(n);
  ComplexMap f(A, Bn);
  auto gens = hom_gens(A, B, n);
  if (coords.size() != gens.size()) throw Error(ErrorCode::INTERNAL, "hom coords size mismatch");
  std::map<int, Mat> comps;
  for (size_t k = 0; k < gens.size(); ++k) {
    if (coords[k] == 0) continue;
    auto [p, i, j] = gens[k];
    auto it = comps.find(p);
    if (it == comps.end()) it = comps.emplace(p, Mat::zero(Bn.dim(p), A.dim(p))).first;
    it->second(j, i) = A.ring().normalize(it->second(j, i) + coords[k]);
  }
  for (auto& [p, m] : comps) f.set_comp(p, std::move(m));
  return f;
}

std::vector<Scalar> map_to_hom_coords(const GradedComplex& A, const GradedComplex& B, int n,
                                      const ComplexMap& f) {
  auto gens = hom_gens(A, B, n);
  std::vector<Scalar> coords(gens.size(), Scalar(0));
  for (size_t k = 0; k < gens.size(); ++k) {
    auto [p, i, j] = gens[k];
    coords[k] = f.comp(p)(j, i);
  }
  return coords;
}

HomologyBasis::HomologyBasis(const GradedComplex& C, int c, int tw)
    : ring_(C.ring()), dim_c_(C.dim(c)) {
  const Ring& R = ring_;
  for (int i = 0; i < C.dim(c); ++i)
    if (C.gens(c)[i] == tw) coord_idx_.push_back(i);
  std::vector<int> out_rows, in_cols;
  for (int i = 0; i < C.dim(c + 1); ++i)
    if (C.gens(c + 1)[i] == tw) out_rows.push_back(i);
  for (int i = 0; i < C.dim(c - 1); ++i)
    if (C.gens(c - 1)[i] == tw) in_cols.push_back(i);
  Mat B = C.diff(c).submatrix(out_rows, coord_idx_);
  Mat A = C.diff(c - 1).submatrix(coord_idx_, in_cols);
  Z_ = kernel_basis(R, B);
  Mat X;
  if (!solve(R, Z_, A, &X)) throw Error(ErrorCode::INTERNAL, "image not in kernel");
  sx_ = smith(R, X);
  rank_ = sx_.rank;
  uinv_ = inverse(R, sx_.U);
  for (int i = 0; i < Z_.cols(); ++i) {
    if (i < rank_) {
      if (!R.is_unit(sx_.D(i, i))) {
        torsion_.push_back(sx_.D(i, i));
        torsion_rows_.push_back(i);
      }
    } else {
      free_rows_.push_back(i);
    }
  }
  free_rank_ = static_cast<int>(free_rows_.size());
}

std::vector<Scalar> HomologyBasis::classify(const std::vector<Scalar>& cycle) const {
  const Ring& R = ring_;
  if (static_cast<int>(cycle.size()) != dim_c_) throw Error(ErrorCode::INTERNAL, "cycle size mismatch");
  Mat v(static_cast<int>(coord_idx_.size()), 1);
  for (size_t i = 0; i < coord_idx_.size(); ++i) v(static_cast<int>(i), 0) = cycle[coord_idx_[i]];
  Mat y;
  if (!solve(R, Z_, v, &y)) throw Error(ErrorCode::INTERNAL, "not a cycle");
  Mat w = sx_.U.mul(R, y);
  std::vector<Scalar> out;
  for (int i : free_rows_) out.push_back(w(i, 0));
  for (size_t k = 0; k < torsion_rows_.size(); ++k) {
    Scalar d = torsion_[k];
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), w(torsion_rows_[k], 0).get_num().get_mpz_t(), d.get_num().get_mpz_t());
    out.push_back(Scalar(r));
  }
  return out;
}

std::vector<Scalar> HomologyBasis::representative(int k) const {
  const Ring& R = ring_;
  Mat w(Z_.cols(), 1);
  if (k < free_rank_)
    w(free_rows_[k], 0) = 1;
  else
    w(torsion_rows_[k - free_rank_], 0) = 1;
  Mat y = uinv_.mul(R, w);
  Mat v = Z_.mul(R, y);
  std::vector<Scalar> out(dim_c_, Scalar(0));
  for (size_t i = 0; i < coord_idx_.size(); ++i) out[coord_idx_[i]] = v(static_cast<int>(i), 0);
  return out;
}

MinimizeResult minimize(const GradedComplex& c0) {
  const Ring& R = c0.ring();
  GradedComplex cur = c0;
  ComplexMap F = ComplexMap::identity(c0);
  ComplexMap G = ComplexMap::identity(c0);
  Homotopy h;
  auto unit_ok = [&](const Scalar& x) { return x != 0 && R.is_unit(x); };
  for (;;) {
    int pc = 0, pi = -1, pj = -1;
    bool found = false;
    for (auto& [deg, d] : cur.diffs()) {
      for (int i = 0; i < d.rows() && !found; ++i)
        for (int j = 0; j < d.cols() && !found; ++j)
          if (unit_ok(d(i, j))) { pc = deg; pi = i; pj = j; found = true; }
      if (found) break;
    }
    if (!found) break;
    // Gaussian elimination of the contractible pair (gen pj in deg pc,
    // gen pi in deg pc+1).
    Mat d = cur.diff(pc);
    Scalar phi = d(pi, pj);
    Scalar phinv = R.inv(phi);
    int n0 = cur.dim(pc), n1 = cur.dim(pc + 1);
    GradedComplex nxt(R);
    for (auto& [deg, g] : cur.terms()) {
      std::vector<int> tws;
      for (int i = 0; i < static_cast<int>(g.size()); ++i) {
        if (deg == pc && i == pj) continue;
        if (deg == pc + 1 && i == pi) continue;
        tws.push_back(g[i]);
      }
      nxt.set_term(deg, std::move(tws));
    }
    auto keep = [](int n, int skip) {
      std::vector<int> v;
      for (int i = 0; i < n; ++i)
        if (i != skip) v.push_back(i);
      return v;
    };
    auto all = [](int n) {
      std::vector<int> v;
      for (int i = 0; i < n; ++i) v.push_back(i);
      return v;
    };
    std::vector<int> rows_keep = keep(n1, pi), cols_keep = keep(n0, pj);
    // new differential at pc: eps - gamma phi^{-1} delta
    Mat eps = d.submatrix(rows_keep, cols_keep);
    for (size_t a = 0; a < rows_keep.size(); ++a)
      for (size_t b = 0; b < cols_keep.size(); ++b)
        eps(static_cast<int>(a), static_cast<int>(b)) =
            R.normalize(eps(static_cast<int>(a), static_cast<int>(b)) - d(rows_keep[a], pj) * phinv * d(pi, cols_keep[b]));
    nxt.set_diff(pc, eps);
    // neighbours: drop row pj of d_{pc-1}, drop column pi of d_{pc+1}
    if (nxt.dim(pc - 1) > 0 && nxt.dim(pc) > 0) {
      Mat dm = cur.diff(pc - 1).submatrix(cols_keep, all(cur.dim(pc - 1)));
      nxt.set_diff(pc - 1, dm);
    }
    if (nxt.dim(pc + 1) > 0 && nxt.dim(pc + 2) > 0) {
      Mat dp = cur.diff(pc + 1).submatrix(all(cur.dim(pc + 2)), rows_keep);
      nxt.set_diff(pc + 1, dp);
    }
    for (auto& [deg, dd] : cur.diffs()) {
      if (deg == pc - 1 || deg == pc || deg == pc + 1) continue;
      nxt.set_diff(deg, dd);
    }
    // step maps
    ComplexMap f(cur, nxt), g(nxt, cur);
    for (auto& [deg, gg] : cur.terms()) {
      int n = static_cast<int>(gg.size());
      if (deg == pc) {
        Mat fm(n - 1, n);
        for (size_t a = 0; a < cols_keep.size(); ++a) fm(static_cast<int>(a), cols_keep[a]) = 1;
        f.set_comp(deg, fm);
        Mat gm(n, n - 1);
        for (size_t a = 0; a < cols_keep.size(); ++a) gm(cols_keep[a], static_cast<int>(a)) = 1;
        for (size_t b = 0; b < cols_keep.size(); ++b)
          gm(pj, static_cast<int>(b)) = R.normalize(-phinv * d(pi, cols_keep[b]));
        g.set_comp(deg, gm);
      } else if (deg == pc + 1) {
        Mat fm(n - 1, n);
        for (size_t a = 0; a < rows_keep.size(); ++a) fm(static_cast<int>(a), rows_keep[a]) = 1;
        for (size_t a = 0; a < rows_keep.size(); ++a)
          fm(static_cast<int>(a), pi) = R.normalize(-d(rows_keep[a], pj) * phinv);
        f.set_comp(deg, fm);
        Mat gm(n, n - 1);
        for (size_t a = 0; a < rows_keep.size(); ++a) gm(rows_keep[a], static_cast<int>(a)) = 1;
        g.set_comp(deg, gm);
      } else {
        f.set_comp(deg, Mat::identity(n));
        g.set_comp(deg, Mat::identity(n));
      }
    }
    Homotopy hs;
    {
      Mat hm(cur.dim(pc), cur.dim(pc + 1));
      hm(pj, pi) = phinv;
      hs.comps[pc + 1] = std::move(hm);
    }
    // compose: h := h + G o hs o F (with the maps before this step)
    for (int deg = cur.min_deg(); deg <= cur.max_deg() + 1; ++deg) {
      Mat hstep = hs.comp(deg, cur, cur);
      if (hstep.is_zero()) continue;
      Mat m = G.comp(deg - 1).mul(R, hstep).mul(R, F.comp(deg));
      auto it = h.comps.find(deg);
      if (it == h.comps.end())
        h.comps[deg] = m;
      else
        it->second = it->second.add(R, m);
    }
    F = f.compose(F);
    G = G.compose(g);
    cur = nxt;
  }
  cur.prune();
  MinimizeResult res{cur, ComplexMap(c0, cur), ComplexMap(cur, c0), h};
  res.to_min = F;
  res.from_min = G;
  return res;
}

void check_minimize(const MinimizeResult& r, const GradedComplex& orig) {
  const Ring& R = orig.ring();
  r.min.validate();
  r.to_min.validate();
  r.from_min.validate();
  ComplexMap fg = r.to_min.compose(r.from_min);
  ComplexMap idm = ComplexMap::identity(r.min);
  for (int c = r.min.min_deg(); c <= r.min.max_deg(); ++c)
    if (fg.comp(c) != idm.comp(c)) throw Error(ErrorCode::INTERNAL, "F G != id");
  ComplexMap gf = r.from_min.compose(r.to_min);
  for (int c = orig.min_deg(); c <= orig.max_deg(); ++c) {
    Mat lhs = Mat::identity(orig.dim(c)).sub(R, gf.comp(c));
    Mat hc = r.h.comp(c, orig, orig);
    Mat hc1 = r.h.comp(c + 1, orig, orig);
    Mat rhs = orig.diff(c - 1).mul(R, hc).add(R, hc1.mul(R, orig.diff(c)));
    if (lhs != rhs) throw Error(ErrorCode::INTERNAL, "id - G F != dh + hd at degree " + std::to_string(c));
  }
}

}  // namespace strat
