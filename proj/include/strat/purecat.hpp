#pragma once

#include "strat/tilting.hpp"

namespace strat {

/// Additive category of pure (weight-zero) objects presented by tables:
/// generators with supports, graded Hom bases between twisted generators,
/// bilinear composition, and optional stalk/costalk tables per stratum.
class PureCategory {
 public:
  struct Gen {
    std::string id;
    int stratum = -1;
  };
  std::vector<Gen> gens;
  /// hom_rank[(a,b)]: Laurent-style map twist -> rank of Hom(G_a, G_b<t>)
  std::map<std::pair<int, int>, std::map<int, int>> hom_rank;
  /// composition structure constants:
  /// comp[((a,b,t1,i),(b,c,t2,j))] -> coefficients over basis of (a,c,t1+t2)
  /// with basis elements indexed within their (pair, twist) block
  std::map<std::tuple<int, int, int, int, int, int>, std::vector<Scalar>> comp;
  /// stalk tables: (gen, stratum) -> multiset of twists q of Lambda(q)[2q]
  std::map<std::pair<int, int>, std::vector<int>> stalk, costalk;

  int hom_dim(int a, int b, int t) const {
    auto it = hom_rank.find({a, b});
    if (it == hom_rank.end()) return 0;
    auto jt = it->second.find(t);
    return jt == it->second.end() ? 0 : jt->second;
  }
  void validate(const Ring& R) const;
};

/// Bounded complex over a PureCategory: terms are formal sums of twisted
/// generators, differentials are matrices of Hom-basis combinations.
class PureComplex {
 public:
  explicit PureComplex(const PureCategory* cat) : cat_(cat) {}
  const PureCategory* cat() const { return cat_; }
  /// term entries: (gen, twist)
  std::map<int, std::vector<std::pair<int, int>>> terms;
  /// differential entry (c, row, col) -> coefficients over the hom basis of
  /// the corresponding (gen, twist)-pair
  std::map<std::tuple<int, int, int>, std::vector<Scalar>> diff;
  void validate(const Ring& R) const;

 private:
  const PureCategory* cat_;
};

/// Hom table of bounded complexes over the pure category.
HomTable pure_hom(const Ring& R, const PureComplex& P, const PureComplex& Q);

/// Gaussian elimination of invertible differential components.
PureComplex minimize_pure(const Ring& R, const PureComplex& P);

/// The pure category of an atlas: generators are the objects listed in
/// pure_generators (their weight-normalized pushforwards), Hom tables from
/// strat_hom; stalk tables from the recollement restrictions.
struct AtlasPure {
  PureCategory cat;
  std::vector<StratObject> gen_objects;
};
AtlasPure pure_category_of_atlas(const StratAtlas& A);

/// Weight complex via the weight Postnikov tower; HYPOTHESES_FAIL when a
/// graded piece does not decompose into the supplied generators.
PureComplex weight_complex(const StratAtlas& A, const AtlasPure& P, const StratObject& M);

/// Pointwise application of a six functor through the stalk tables.
PureComplex ar_functor(const Ring& R, const AtlasPure& P, const PureComplex& X, int stratum,
                       const std::string& which);

}  // namespace strat
