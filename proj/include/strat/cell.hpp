#pragma once

#include <cstdint>

#include "strat/gradedcomplex.hpp"

namespace strat {

/// Element of the exterior algebra E_m on generators xi_1..xi_m, each of
/// bidegree (cohomological +1, twist label -1). Basis monomials xi_T are
/// indexed by bitmasks with ascending factor order.
class EElem {
 public:
  EElem() : m_(0) {}
  explicit EElem(int m) : m_(m) {}
  static EElem scalar(int m, const Scalar& c) {
    EElem e(m);
    if (c != 0) e.terms_[0] = c;
    return e;
  }
  static EElem xi(int m, int i) {
    EElem e(m);
    e.terms_[1u << i] = 1;
    return e;
  }
  static EElem monomial(int m, uint32_t mask, const Scalar& c) {
    EElem e(m);
    if (c != 0) e.terms_[mask] = c;
    return e;
  }

  int m() const { return m_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<uint32_t, Scalar>& terms() const { return terms_; }
  Scalar coeff(uint32_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? Scalar(0) : it->second;
  }
  Scalar scalar_part() const { return coeff(0); }

  /// Homogeneous of xi-degree k (all monomials have popcount k)?
  bool homogeneous(int k) const;

  EElem add(const Ring& R, const EElem& o) const;
  EElem sub(const Ring& R, const EElem& o) const;
  EElem mul(const Ring& R, const EElem& o) const;
  EElem scaled(const Ring& R, const Scalar& c) const;
  EElem neg(const Ring& R) const { return scaled(R, Scalar(-1)); }
  /// Inverse when the scalar part is a unit (E is local, higher part nilpotent).
  EElem inv(const Ring& R) const;

  bool operator==(const EElem& o) const { return m_ == o.m_ && terms_ == o.terms_; }
  std::string str() const;

 private:
  int m_;
  std::map<uint32_t, Scalar> terms_;
};

/// Sign of xi_S * xi_T as (-1)^{#inversions}; requires S, T disjoint.
int shuffle_sign(uint32_t s, uint32_t t);

/// Generator of a free E_m-summand: the generator element sits in
/// cohomological degree deg with twist label tw (the summand is E(tw)
/// placed so its generator has that bidegree).
struct EGen {
  int deg;
  int tw;
  bool operator==(const EGen& o) const { return deg == o.deg && tw == o.tw; }
};

class CellMap;

/// Reduced Tate motive on the cell A^n x Gm^m: a bounded complex of finite
/// free graded E_m-modules. Differential entries x_{hg} (target h, source g)
/// are homogeneous E-elements: d(e_g) = sum_h x_{hg} e_h with
/// deg x = deg_g + 1 - deg_h = tw_h - tw_g.
class CellObject {
 public:
  CellObject(const Ring& R, int n, int m) : ring_(R), n_(n), m_(m) {}

  const Ring& ring() const { return ring_; }
  int n() const { return n_; }
  int m() const { return m_; }

  int gen_count() const { return static_cast<int>(gens_.size()); }
  const std::vector<EGen>& egens() const { return gens_; }
  const EGen& egen(int g) const { return gens_[g]; }
  int add_gen(int deg, int tw) {
    gens_.push_back({deg, tw});
    return gen_count() - 1;
  }

  EElem dentry(int h, int g) const;
  void set_dentry(int h, int g, EElem x);
  const std::map<std::pair<int, int>, EElem>& dentries() const { return d_; }

  bool is_zero_object() const { return gens_.empty(); }

  /// Same data on a different affine factor (homotopy invariance).
  CellObject with_shape_n(int n2) const {
    CellObject r = *this;
    r.n_ = n2;
    return r;
  }

  CellObject shifted(int k) const;  // [k]
  CellObject twisted(int q) const;  // (q)
  CellObject direct_sum(const CellObject& o) const;

  /// Throws unless entries are homogeneous of the forced xi-degree and the
  /// flattened complex satisfies d*d = 0.
  void validate() const;

  static CellObject tate(const Ring& R, int n, int m, int q = 0, int p = 0);

  bool same_shape(const CellObject& o) const { return n_ == o.n_ && m_ == o.m_ && ring_ == o.ring_; }

 private:
  Ring ring_;
  int n_, m_;
  std::vector<EGen> gens_;
  std::map<std::pair<int, int>, EElem> d_;
  friend class CellMap;
};

/// Underlying graded complex together with the xi-action chain maps
/// M -> M(1)[1] and the flat basis enumeration ((g, mask) per degree).
struct FlatCell {
  GradedComplex cx;
  std::vector<ComplexMap> xi;
  std::map<std::pair<int, uint32_t>, std::pair<int, int>> pos;  // (g,T) -> (deg, index)
  std::map<int, std::vector<std::pair<int, uint32_t>>> basis;   // deg -> list of (g,T)
  FlatCell() : cx(Ring::Q()) {}
};

FlatCell flatten(const CellObject& M);

/// Degree-0 E-linear chain map between cell objects of the same shape.
class CellMap {
 public:
  CellMap(CellObject src, CellObject tgt) : src_(std::move(src)), tgt_(std::move(tgt)) {}

  const CellObject& src() const { return src_; }
  const CellObject& tgt() const { return tgt_; }

  EElem entry(int h, int g) const;
  void set_entry(int h, int g, EElem x);
  const std::map<std::pair<int, int>, EElem>& entries() const { return entries_; }

  static CellMap identity(const CellObject& M);
  static CellMap zero(const CellObject& src, const CellObject& tgt);
  CellMap compose(const CellMap& inner) const;
  CellMap add(const CellMap& o) const;
  CellMap scaled(const Scalar& c) const;
  CellMap shifted(int k) const;
  CellMap twisted(int q) const;

  /// Flatten to a ComplexMap and check chain + E-linearity conditions.
  ComplexMap flat() const;
  void validate() const;

 private:
  CellObject src_, tgt_;
  std::map<std::pair<int, int>, EElem> entries_;
};

/// cone(f)^ = src[1] (+) tgt with block differential [[-d_src, 0],[f, d_tgt]].
CellObject cell_cone(const CellMap& f);
CellMap cell_cone_include_target(const CellMap& f);

/// E-linear hom complex of free complexes (= derived Hom since sources are
/// free): basis psi_{h,g,T} : e_g -> xi_T f_h at bidegree
/// (deg_h + |T| - deg_g, tw_h - |T| - tw_g).
GradedComplex cell_hom_complex(const CellObject& M, const CellObject& N);
/// Enumeration matching cell_hom_complex: per degree, triples (g, h, mask).
std::vector<std::array<uint32_t, 3>> cell_hom_gens(const CellObject& M, const CellObject& N, int deg);
HomTable cell_hom(const CellObject& M, const CellObject& N);

/// Interpret a degree-k twist-0 cycle of cell_hom_complex as a map M -> N[k].
CellMap cell_cycle_to_map(const CellObject& M, const CellObject& N, int k,
                          const std::vector<Scalar>& coords);

/// Lambda-linear tensor product with diagonal xi-action, re-expressed on the
/// standard free basis e_g (x) xi_T f_h.
CellObject cell_tensor(const CellObject& M, const CellObject& N);

struct CellMinimizeResult {
  CellObject min;
  CellMap to_min, from_min;
};
/// Gaussian elimination of unit scalar differential entries (the invertible
/// elements of E are exactly those with unit scalar part, and homogeneity
/// forces removable entries to be scalars).
CellMinimizeResult cell_minimize(const CellObject& M);

/// Generator weight statistic w(e) = -deg - 2*tw; differentials strictly
/// lower it, so gens of weight <= k span a subcomplex.
int gen_weight(const EGen& g);
struct CellWTrunc {
  CellObject low, high;     // w<=k part, w>=k+1 part
  CellMap incl, proj;       // low -> M, M -> high
};
CellWTrunc cell_brutal_weight_trunc(const CellObject& M, int k);

}  // namespace strat
