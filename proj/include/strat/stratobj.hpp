#pragma once

#include <memory>
#include <set>
#include <string>

#include "strat/polymod.hpp"

namespace strat {

struct Stratum {
  std::string id;
  int n = 0;  // affine dimension
  int m = 0;  // number of Gm factors
};

class StratObject;
class StratMap;
class StratAtlas;

/// Map of stratified objects of homological degree `deg`: per-stratum hom
/// elements (coordinates over cell_hom_gens(M_w, N_w, deg)) plus, per
/// attachment step, a correction of degree deg-1 witnessing the gluing
/// square. A degree-0 element with vanishing hom differential is a morphism
/// in the lax-limit model; corrections encode the homotopy coherence.
class StratMap {
 public:
  StratMap() : deg(0) {}
  int deg;
  std::vector<std::vector<Scalar>> comps;       // one coordinate vector per stratum
  std::vector<std::shared_ptr<StratMap>> corr;  // index k = 1..r-1; may hold nullptr
  const StratMap* correction(int k) const {
    if (k < static_cast<int>(corr.size()) && corr[k]) return corr[k].get();
    return nullptr;
  }
};

/// Reduced stratified Tate motive in the iterated lax-limit model: one cell
/// object per stratum along the attach order, and for each step k >= 1 a
/// degree-0 gluing cycle  alpha_k : M|_{<k} -> K_k (x) M_k.
class StratObject {
 public:
  StratObject() {}
  std::vector<CellObject> comps;
  std::vector<std::shared_ptr<StratMap>> glue;  // glue[k] for k >= 1 (glue[0] unused)
  int len() const { return static_cast<int>(comps.size()); }
};

/// Stratified atlas: strata in attach order (closed strata first), closure
/// partial order, and per-step kernels K_k = i^* j_{k,*} Lambda on the
/// prefix, together with the unit object's gluing maps.
class StratAtlas {
 public:
  StratAtlas(const Ring& R) : ring_(R) {}

  const Ring& ring() const { return ring_; }
  int count() const { return static_cast<int>(strata_.size()); }
  const Stratum& stratum(int w) const { return strata_[w]; }
  const std::vector<Stratum>& strata() const { return strata_; }
  int index_of(const std::string& id) const;

  /// true if v lies in the closure of w (v <= w).
  bool leq(int v, int w) const { return closure_.count({v, w}) > 0; }
  void add_stratum(const Stratum& s) { strata_.push_back(s); }
  Stratum& stratum_mut(int w) { return strata_[w]; }
  StratObject& kernel_mut(int k) { return kernels_[k]; }
  void set_leq(int v, int w) { closure_.insert({v, w}); }
  const std::set<std::pair<int, int>>& closure() const { return closure_; }

  /// Kernel of step k (a strat object on the prefix of length k) and the
  /// unit's gluing at step k. Step k attaches stratum k to the prefix.
  const StratObject& kernel(int k) const { return kernels_[k]; }
  const StratMap& unit_glue(int k) const { return *unit_glue_[k]; }
  void set_kernel(int k, StratObject K, StratMap unit_glue);

  /// The one shipped Gm case: a two-stratum atlas whose top stratum is a
  /// torus and whose kernel functor is "underlying graded complex".
  bool gm_top() const { return gm_top_; }
  void set_gm_top(bool b) { gm_top_ = b; }

  bool affine_only() const;
  bool iota_star_t_exact = false;
  bool admits_resolutions = false;
  std::vector<int> pure_generators;  // strata with shipped pure generator data
  std::string name;

  /// Poset/order coherence, kernel compactness, optional t-exactness check.
  void validate_atlas() const;

 private:
  Ring ring_;
  std::vector<Stratum> strata_;
  std::set<std::pair<int, int>> closure_;
  std::vector<StratObject> kernels_;
  std::vector<std::shared_ptr<StratMap>> unit_glue_;
  bool gm_top_ = false;
};

// ---- object and map algebra ----

StratObject strat_zero(const StratAtlas& A, int len);
StratObject strat_unit(const StratAtlas& A, int q = 0, int p = 0);  // Lambda(q)[p] on the whole atlas
StratObject strat_unit_prefix(const StratAtlas& A, int len, int q, int p);
StratObject strat_shift(const StratAtlas& A, const StratObject& M, int k);
StratObject strat_twist(const StratAtlas& A, const StratObject& M, int q);
StratObject strat_dirsum(const StratAtlas& A, const StratObject& M, const StratObject& N);
bool strat_is_strictly_zero(const StratObject& M);

StratMap stratmap_zero(const StratAtlas& A, const StratObject& M, const StratObject& N, int deg);
StratMap stratmap_identity(const StratAtlas& A, const StratObject& M);
StratMap stratmap_add(const StratAtlas& A, const StratMap& f, const StratMap& g);
StratMap stratmap_scale(const StratAtlas& A, const StratMap& f, const Scalar& c);
StratMap stratmap_shift(const StratAtlas& A, const StratMap& f, int k);
StratMap stratmap_twist(const StratAtlas& A, const StratMap& f, int q);
StratMap stratmap_dirsum(const StratAtlas& A, const StratMap& f, const StratMap& g);

/// Kernel tensor of step k: K_k (x) V for V a cell object on stratum k
/// (coefficientwise tensor; for the Gm-top case the underlying complex on
/// the closed point). Also the functor on cell maps.
StratObject ktensor(const StratAtlas& A, int k, const CellObject& V);
StratMap ktensor_map(const StratAtlas& A, int k, const CellMap& f);
StratMap ktensor_map_coords(const StratAtlas& A, int k, const CellObject& Vsrc,
                            const CellObject& Vtgt, int deg, const std::vector<Scalar>& coords);

/// Structured hom complex of the iterated lax limit:
///   fib( Hom(M_Z, N_Z) (+) Hom(M_u, N_u) --> Hom(M_Z, K (x) N_u) )
/// iterated along the attach order. `blocks` records the recursive block
/// structure so cycles convert to and from StratMap values.
class StratHomCx {
 public:
  StratHomCx(const StratAtlas& A, const StratObject& M, const StratObject& N, int len);

  const GradedComplex& cx() const { return cx_; }
  HomTable table() const { return hom_table_of(cx_); }

  std::vector<Scalar> coords_of(const StratMap& f) const;
  StratMap map_of(int deg, const std::vector<Scalar>& coords) const;

  /// Hom differential applied to a StratMap (validity: cycle <=> D f = 0).
  StratMap differential(const StratMap& f) const;
  bool is_cycle(const StratMap& f) const;

  /// True for coordinates belonging to per-stratum components (as opposed
  /// to gluing corrections) in the recursive block layout.
  std::vector<bool> component_mask(int deg) const;

  /// Given per-stratum components of a would-be morphism, solve for
  /// correction coordinates making it a cycle. Throws if no exact solution
  /// exists.
  StratMap complete_cycle(int deg, const StratMap& partial) const;

  /// Solve only for the outermost correction block, keeping the given
  /// prefix data (components and inner corrections) fixed.
  StratMap complete_cycle_top(int deg, const StratMap& partial) const;

  /// (stratum, target generator) of each coordinate at the given degree.
  std::vector<std::pair<int, int>> target_gens(int deg) const;

  /// (stratum, source generator) of each coordinate at the given degree;
  /// every block of the recursive layout has the source object's components
  /// as its hom source, so this is well defined.
  std::vector<std::pair<int, int>> source_gens(int deg) const;

  /// Solve D(f) = rhs for the non-component coordinates of f, with the
  /// coordinates whose source generator index is >= split[stratum] forced to
  /// zero (anchoring against phantom ambiguity). comps of f are kept.
  StratMap solve_anchored(int deg, const StratMap& comps_part, const StratMap& rhs,
                          const std::vector<int>& split) const;

  /// Solve D(f) = rhs where coordinates with source generator >= split
  /// are prescribed by `given` (components) or zero (corrections), and all
  /// coordinates sourced below the split are free.
  StratMap solve_mixed(int deg, const StratMap& given, const StratMap& rhs,
                       const std::vector<int>& split) const;

 public:
  struct Block;

 private:
  std::shared_ptr<Block> root_;
  GradedComplex cx_;
  const StratAtlas* atlas_;
};

/// Composition of strat maps (degrees add).
StratMap stratmap_compose(const StratAtlas& A, const StratObject& M, const StratObject& N,
                          const StratObject& P, const StratMap& g, const StratMap& f);

extern int strat_cone_mode_m;
extern int strat_cone_child_sign;
extern int strat_cone_delta_block;
extern int strat_js_use_pin;
extern int strat_cone_mode_c;
extern int strat_cone_sign_m;  // experimental sign knobs, frozen by tests
extern int strat_cone_sign_c;

/// Cone of a degree-0 cycle f : M -> N, with the canonical inclusion of N
/// and the class of M[1]; fib is the shifted cone.
StratObject strat_cone(const StratAtlas& A, const StratMap& f, const StratObject& M,
                       const StratObject& N);
StratMap strat_cone_include_target(const StratAtlas& A, const StratMap& f, const StratObject& M,
                                   const StratObject& N);

HomTable strat_hom(const StratAtlas& A, const StratObject& M, const StratObject& N);

void strat_validate(const StratAtlas& A, const StratObject& M);
void stratmap_validate(const StratAtlas& A, const StratObject& M, const StratObject& N,
                       const StratMap& f);

}  // namespace strat
