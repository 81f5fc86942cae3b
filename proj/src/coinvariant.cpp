#include "strat/coinvariant.hpp"

#include <algorithm>
#include <functional>

namespace strat {

Poly Poly::variable(int i, int rank) {
  Poly p;
  std::vector<int> e(rank, 0);
  e[i] = 1;
  p.terms[e] = 1;
  return p;
}

Poly Poly::constant(int rank, const Scalar& c) {
  Poly p;
  if (c != 0) p.terms[std::vector<int>(rank, 0)] = c;
  return p;
}

Poly Poly::add(const Ring& R, const Poly& o) const {
  Poly r = *this;
  for (auto& [e, c] : o.terms) {
    Scalar v = R.normalize(r.terms.count(e) ? r.terms[e] + c : c);
    if (v == 0)
      r.terms.erase(e);
    else
      r.terms[e] = v;
  }
  return r;
}

Poly Poly::sub(const Ring& R, const Poly& o) const { return add(R, o.scaled(R, Scalar(-1))); }

Poly Poly::mul(const Ring& R, const Poly& o) const {
  Poly r;
  for (auto& [e, c] : terms)
    for (auto& [f, d] : o.terms) {
      std::vector<int> g(e.size());
      for (size_t i = 0; i < e.size(); ++i) g[i] = e[i] + f[i];
      Scalar v = R.normalize((r.terms.count(g) ? r.terms[g] : Scalar(0)) + c * d);
      if (v == 0)
        r.terms.erase(g);
      else
        r.terms[g] = v;
    }
  return r;
}

Poly Poly::scaled(const Ring& R, const Scalar& c) const {
  Poly r;
  if (c == 0) return r;
  for (auto& [e, d] : terms) {
    Scalar v = R.normalize(d * c);
    if (v != 0) r.terms[e] = v;
  }
  return r;
}

Poly Coinvariant::apply_w(int w, const Poly& f) const {
  // variables transform by the transpose action on weights
  const Ring& R = R_;
  Poly out;
  Mat m(rank_, rank_);
  {
    // recompute the matrix of w on the weight lattice from simple reflections
    Mat id = Mat::identity(rank_);
    Mat acc = id;
    Ring Z = Ring::Z();
    for (int i : W_->reduced_word(w)) {
      Mat s = Mat::identity(rank_);
      for (int k = 0; k < rank_; ++k) s(k, i) -= W_->cartan()[k][i];
      acc = acc.mul(Z, s);
    }
    m = acc;
  }
  for (auto& [e, c] : f.terms) {
    Poly term = Poly::constant(rank_, c);
    for (int i = 0; i < rank_; ++i) {
      // x_i -> sum_k m(k,i) x_k
      Poly img;
      for (int k = 0; k < rank_; ++k) {
        if (m(k, i) == 0) continue;
        Poly t = Poly::variable(k, rank_).scaled(R, m(k, i));
        img = img.add(R, t);
      }
      for (int p = 0; p < e[i]; ++p) term = term.mul(R, img);
    }
    out = out.add(R, term);
  }
  return out;
}

Poly Coinvariant::alpha(int i) const {
  Poly a;
  for (int k = 0; k < rank_; ++k) {
    int c = W_->cartan()[k][i];
    if (c) a = a.add(R_, Poly::variable(k, rank_).scaled(R_, c));
  }
  return a;
}

namespace {
void gen_monos(int rank, int deg, std::vector<std::vector<int>>* out) {
  std::vector<int> e(rank, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == rank - 1) {
      e[i] = left;
      out->push_back(e);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      e[i] = v;
      rec(i + 1, left - v);
    }
  };
  if (rank == 0) return;
  rec(0, deg);
}
}  // namespace

Coinvariant::Coinvariant(const WeylGroup& W, const Ring& R) : W_(&W), R_(R) {
  rank_ = W.rank();
  if (R.kind() == Ring::Kind::PrimeField || R.kind() == Ring::Kind::Integers) {
    long t = W.torsion_index();
    if (R.kind() == Ring::Kind::PrimeField && t % static_cast<long>(R.p()) == 0)
      throw Error(ErrorCode::TORSION_NOT_INVERTIBLE,
                  "torsion index " + std::to_string(t) + " vanishes in " + R.name());
    if (R.kind() == Ring::Kind::Integers && t != 1)
      throw Error(ErrorCode::TORSION_NOT_INVERTIBLE,
                  "torsion index " + std::to_string(t) + " is not invertible over Z");
  }
  // number of positive roots = l(w0) = top polynomial degree
  top_ = W.length(W.longest());
  // per-degree: invariants, ideal, basis of the quotient
  std::vector<std::vector<Poly>> inv_by_deg(top_ + 2);
  degs_.resize(top_ + 2);
  int total_rank = 0;
  for (int d = 0; d <= top_ + 1; ++d) {
    DegData& D = degs_[d];
    gen_monos(rank_, d, &D.monos);
    for (int i = 0; i < static_cast<int>(D.monos.size()); ++i) D.mono_idx[D.monos[i]] = i;
    int nm = static_cast<int>(D.monos.size());
    // invariants of degree d (d >= 1): common kernel of (s_i - 1)
    if (d >= 1) {
      Mat stack(0, nm);
      for (int i = 0; i < rank_; ++i) {
        Mat rows(nm, nm);
        for (int c = 0; c < nm; ++c) {
          Poly m;
          m.terms[D.monos[c]] = 1;
          Poly diff = apply_w(W.simple(i), m).sub(R, m);
          for (auto& [e, cf] : diff.terms) rows(D.mono_idx.at(e), c) = cf;
        }
        stack = (stack.rows() == 0) ? rows : Mat::vcat(stack, rows);
      }
      Mat K = kernel_basis(R, stack);
      for (int c = 0; c < K.cols(); ++c) {
        Poly p;
        for (int r2 = 0; r2 < nm; ++r2)
          if (K(r2, c) != 0) p.terms[D.monos[r2]] = K(r2, c);
        inv_by_deg[d].push_back(p);
      }
    }
    // ideal in degree d: sum over e >= 1 of S_{d-e} * Inv_e
    std::vector<std::vector<Scalar>> cols;
    for (int e = 1; e <= d; ++e)
      for (const Poly& g : inv_by_deg[e])
        for (auto& mono : degs_[d - e].monos) {
          Poly m;
          m.terms[mono] = 1;
          Poly prod = m.mul(R, g);
          std::vector<Scalar> col(nm, Scalar(0));
          for (auto& [ee, cf] : prod.terms) col[D.mono_idx.at(ee)] = cf;
          cols.push_back(std::move(col));
        }
    Mat I(nm, static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c)
      for (int r2 = 0; r2 < nm; ++r2) I(r2, static_cast<int>(c)) = cols[c][r2];
    D.ideal = I;
    // quotient basis via SNF over the ring
    SmithResult s = smith(R, I.transpose());
    // rows of I^T = relations on monomial space; quotient basis from the
    // V-complement of the row space: easier: smith of I: coker basis
    SmithResult si = smith(R, I);
    // coker(I): rows not hit; check freeness
    for (int i = 0; i < si.rank; ++i)
      if (!R.is_unit(si.D(i, i)))
        throw Error(ErrorCode::TORSION_NOT_INVERTIBLE, "quotient is not free in degree " + std::to_string(d));
    (void)s;
    // basis representatives: preimages of the free coker coordinates
    Mat Uinv = inverse(R, si.U);
    for (int i = si.rank; i < nm; ++i) {
      Poly rep;
      for (int r2 = 0; r2 < nm; ++r2)
        if (Uinv(r2, i) != 0) rep.terms[D.monos[r2]] = Uinv(r2, i);
      D.basis_ids.push_back(total_rank);
      basis_deg_.push_back(d);
      basis_rep_.push_back(rep);
      ++total_rank;
    }
    D.solve_mat = Mat::hcat(I, [&] {
      Mat B(nm, static_cast<int>(D.basis_ids.size()));
      for (size_t b = 0; b < D.basis_ids.size(); ++b) {
        const Poly& rep = basis_rep_[D.basis_ids[b]];
        for (auto& [e, cf] : rep.terms) B(D.mono_idx.at(e), static_cast<int>(b)) = cf;
      }
      return B;
    }());
  }
  if (total_rank != W.order())
    throw Error(ErrorCode::TORSION_NOT_INVERTIBLE,
                "coinvariant rank " + std::to_string(total_rank) + " != |W| = " +
                    std::to_string(W.order()));
  // variable actions and Demazure operators in the chosen basis
  int n = dim();
  for (int i = 0; i < rank_; ++i) {
    Mat va(n, n), de(n, n);
    for (int b = 0; b < n; ++b) {
      Poly xb = Poly::variable(i, rank_).mul(R, basis_rep_[b]);
      std::vector<Scalar> red = reduce(xb);
      for (int r2 = 0; r2 < n; ++r2) va(r2, b) = red[r2];
      // Demazure: (f - s_i f) / alpha_i
      Poly num = basis_rep_[b].sub(R, apply_w(W.simple(i), basis_rep_[b]));
      // exact division by alpha_i: solve mult(alpha, q) = num degreewise
      Poly q;
      if (!num.is_zero()) {
        int d = basis_deg_[b];
        const DegData& Dn = degs_[d - 1];
        int nm1 = static_cast<int>(Dn.monos.size());
        Mat M(static_cast<int>(degs_[d].monos.size()), nm1);
        Poly a = alpha(i);
        for (int c = 0; c < nm1; ++c) {
          Poly m;
          m.terms[Dn.monos[c]] = 1;
          Poly prod = m.mul(R, a);
          for (auto& [e, cf] : prod.terms) M(degs_[d].mono_idx.at(e), c) = cf;
        }
        Mat rhs(static_cast<int>(degs_[d].monos.size()), 1);
        for (auto& [e, cf] : num.terms) rhs(degs_[d].mono_idx.at(e), 0) = cf;
        Mat x;
        if (!solve(R, M, rhs, &x)) throw Error(ErrorCode::INTERNAL, "Demazure division failed");
        for (int c = 0; c < nm1; ++c)
          if (x(c, 0) != 0) q.terms[Dn.monos[c]] = x(c, 0);
      }
      std::vector<Scalar> red2 = reduce(q);
      for (int r2 = 0; r2 < n; ++r2) de(r2, b) = red2[r2];
    }
    var_act_.push_back(std::move(va));
    dem_.push_back(std::move(de));
  }
}

std::vector<Scalar> Coinvariant::reduce(const Poly& f) const {
  const Ring& R = R_;
  std::vector<Scalar> out(dim(), Scalar(0));
  // split by degree
  std::map<int, Poly> by_deg;
  for (auto& [e, c] : f.terms) {
    int d = 0;
    for (int x : e) d += x;
    Poly& p = by_deg[d];
    p.terms[e] = c;
  }
  for (auto& [d, p] : by_deg) {
    if (d >= static_cast<int>(degs_.size())) continue;  // beyond the socle: zero in C
    const DegData& D = degs_[d];
    Mat rhs(static_cast<int>(D.monos.size()), 1);
    for (auto& [e, c] : p.terms) rhs(D.mono_idx.at(e), 0) = c;
    Mat x;
    if (!solve(R_, D.solve_mat, rhs, &x))
      throw Error(ErrorCode::INTERNAL, "reduction failed");
    int off = D.ideal.cols();
    for (size_t b = 0; b < D.basis_ids.size(); ++b)
      out[D.basis_ids[b]] = x(off + static_cast<int>(b), 0);
  }
  return out;
}

Poly Coinvariant::basis_poly_combination(const std::vector<Scalar>& coords) const {
  Poly out;
  for (int b = 0; b < dim(); ++b)
    if (coords[b] != 0) out = out.add(R_, basis_rep_[b].scaled(R_, coords[b]));
  return out;
}

Laurent Coinvariant::graded_rank() const {
  Laurent r;
  for (int b = 0; b < dim(); ++b) r = r + Laurent(1, 2 * basis_deg_[b]);
  return r;
}

void Coinvariant::si_decompose(int i, const std::vector<Scalar>& c, std::vector<Scalar>* p,
                               std::vector<Scalar>* q) const {
  const Ring& R = R_;
  // q = Demazure_i(c); p = c - q * x_i
  Mat cv(dim(), 1);
  for (int b = 0; b < dim(); ++b) cv(b, 0) = c[b];
  Mat qv = dem_[i].mul(R, cv);
  Mat pv = cv.sub(R, var_act_[i].mul(R, qv));
  p->assign(dim(), Scalar(0));
  q->assign(dim(), Scalar(0));
  for (int b = 0; b < dim(); ++b) {
    (*p)[b] = pv(b, 0);
    (*q)[b] = qv(b, 0);
  }
}

}  // namespace strat
