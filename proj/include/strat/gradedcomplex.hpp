#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strat/smith.hpp"

namespace strat {

/// Finitely generated Z-graded module in normal form: per twist label q a
/// free rank (summands Lambda(q)) plus torsion divisors (Lambda/(d))(q) with
/// d nonzero nonunit in divisibility order. Over a field no torsion occurs.
struct GradedModule {
  std::map<int, std::pair<int, std::vector<Scalar>>> comps;

  bool is_zero() const { return comps.empty(); }
  int free_rank(int tw) const {
    auto it = comps.find(tw);
    return it == comps.end() ? 0 : it->second.first;
  }
  const std::vector<Scalar>* torsion(int tw) const {
    auto it = comps.find(tw);
    return it == comps.end() ? nullptr : &it->second.second;
  }
  int total_free_rank() const {
    int r = 0;
    for (auto& [tw, c] : comps) r += c.first;
    return r;
  }
  bool has_torsion() const {
    for (auto& [tw, c] : comps)
      if (!c.second.empty()) return true;
    return false;
  }
  void insert(int tw, int free_rank, std::vector<Scalar> tors) {
    if (free_rank == 0 && tors.empty()) return;
    auto& c = comps[tw];
    c.first += free_rank;
    for (auto& t : tors) c.second.push_back(t);
  }
  bool operator==(const GradedModule& o) const { return comps == o.comps; }
  std::string str() const;
};

/// Bounded complex of finitely generated graded free Lambda-modules.
/// Cohomological indexing is ascending: d_c maps C^c -> C^{c+1}. Every
/// differential entry is twist-preserving and d*d = 0; both are enforced by
/// validate() and checked by the constructors of derived objects.
class GradedComplex {
 public:
  explicit GradedComplex(const Ring& R) : ring_(R) {}

  const Ring& ring() const { return ring_; }

  /// Generator twist labels in degree c (empty if none).
  const std::vector<int>& gens(int c) const {
    static const std::vector<int> none;
    auto it = terms_.find(c);
    return it == terms_.end() ? none : it->second;
  }
  int dim(int c) const { return static_cast<int>(gens(c).size()); }
  const std::map<int, std::vector<int>>& terms() const { return terms_; }

  /// d_c : C^c -> C^{c+1}; zero matrix if absent.
  Mat diff(int c) const;
  const std::map<int, Mat>& diffs() const { return diffs_; }

  bool is_zero_object() const { return terms_.empty(); }
  int min_deg() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_deg() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  int total_dim() const;

  void set_term(int c, std::vector<int> tws);
  void set_diff(int c, Mat d);

  /// Throws VALIDATION_ERROR unless twist-preserving and d*d = 0.
  void validate() const;

  GradedComplex shifted(int n) const;  // C[n]^c = C^{n+c}, sign (-1)^n
  GradedComplex twisted(int q) const;  // add q to all generator labels
  GradedComplex direct_sum(const GradedComplex& o) const;

  /// Drop zero rows/cols bookkeeping: remove empty terms map entries.
  void prune();

  GradedModule homology(int c) const;
  std::map<int, GradedModule> homology_all() const;
  bool is_acyclic() const;

  /// Graded Euler characteristic as Laurent polynomial in v (twist), with
  /// degree evaluated at t = -1: map tw -> sum_c (-1)^c dim_tw(C^c).
  std::map<int, long> euler() const;

  bool operator==(const GradedComplex& o) const {
    return terms_ == o.terms_ && diffs_ == o.diffs_;
  }

  static GradedComplex unit(const Ring& R, int tw = 0, int shift = 0);

 private:
  Ring ring_;
  std::map<int, std::vector<int>> terms_;
  std::map<int, Mat> diffs_;
};

/// Degree-zero chain map between graded complexes: components f_c commute
/// with the differentials exactly and preserve twists.
class ComplexMap {
 public:
  ComplexMap(GradedComplex src, GradedComplex tgt)
      : src_(std::move(src)), tgt_(std::move(tgt)) {}

  const GradedComplex& src() const { return src_; }
  const GradedComplex& tgt() const { return tgt_; }

  Mat comp(int c) const;
  void set_comp(int c, Mat m);
  const std::map<int, Mat>& comps() const { return comps_; }

  void validate() const;

  static ComplexMap identity(const GradedComplex& c);
  static ComplexMap zero(const GradedComplex& src, const GradedComplex& tgt);
  ComplexMap compose(const ComplexMap& inner) const;  // this after inner
  ComplexMap add(const ComplexMap& o) const;
  ComplexMap scaled(const Scalar& c) const;
  ComplexMap shifted(int n) const;
  ComplexMap twisted(int q) const;
  bool is_zero_map() const;

 private:
  Ring ring() const { return src_.ring(); }
  GradedComplex src_, tgt_;
  std::map<int, Mat> comps_;
};

/// Degree -1 homotopy data h_c : C^c -> D^{c-1}.
struct Homotopy {
  std::map<int, Mat> comps;
  Mat comp(int c, const GradedComplex& src, const GradedComplex& tgt) const {
    auto it = comps.find(c);
    if (it != comps.end()) return it->second;
    return Mat::zero(tgt.dim(c - 1), src.dim(c));
  }
};

GradedComplex cone(const ComplexMap& f);
/// Inclusion of the target into cone(f) and projection cone(f) -> src[1].
ComplexMap cone_include_target(const ComplexMap& f);
ComplexMap cone_project_shifted_source(const ComplexMap& f);

GradedComplex tensor(const GradedComplex& a, const GradedComplex& b);
ComplexMap tensor_map(const ComplexMap& f, const ComplexMap& g);
GradedComplex hom_complex(const GradedComplex& a, const GradedComplex& b);

/// Hom table: entry (q, p) = H^p of the hom complex in twist -q, i.e. the
/// group of maps M -> N(q)[p] in the homotopy category.
struct HomTable {
  std::map<std::pair<int, int>, GradedModule> entries;
  int rank(int q, int p) const {
    auto it = entries.find({q, p});
    return it == entries.end() ? 0 : it->second.total_free_rank();
  }
  const GradedModule* entry(int q, int p) const {
    auto it = entries.find({q, p});
    return it == entries.end() ? nullptr : &it->second;
  }
  bool operator==(const HomTable& o) const { return entries == o.entries; }
  std::string str() const;
};

HomTable hom_table_of(const GradedComplex& homcx);
HomTable hom_table(const GradedComplex& a, const GradedComplex& b);

/// Generators of hom_complex(A,B) in degree n, as (p, i, j): source gen i in
/// A^p, target gen j in B^{p+n}. Matches the internal enumeration used by
/// hom_complex.
std::vector<std::array<int, 3>> hom_gens(const GradedComplex& A, const GradedComplex& B, int n);

/// Interpret a degree-n twist-0 cycle of hom_complex(A,B) as a chain map
/// A -> B[n].
ComplexMap hom_cycle_to_map(const GradedComplex& A, const GradedComplex& B, int n,
                            const std::vector<Scalar>& coords);

/// Coordinates of a chain map A -> B[n] as a hom-complex element of degree n.
std::vector<Scalar> map_to_hom_coords(const GradedComplex& A, const GradedComplex& B, int n,
                                      const ComplexMap& f);

/// Homology of C at (degree c, twist tw) with an explicit basis: classify
/// cycles into normal-form coordinates and produce representative cycles.
class HomologyBasis {
 public:
  HomologyBasis(const GradedComplex& C, int c, int tw);

  int free_rank() const { return free_rank_; }
  const std::vector<Scalar>& torsion() const { return torsion_; }
  int class_count() const { return free_rank_ + static_cast<int>(torsion_.size()); }

  /// Normal-form coordinates of a cycle given in full C^c coordinates
  /// (free part first, then torsion reduced mod its divisor).
  std::vector<Scalar> classify(const std::vector<Scalar>& cycle) const;
  /// Representative cycle of the k-th basis class, in full C^c coordinates.
  std::vector<Scalar> representative(int k) const;

 private:
  Ring ring_;
  int dim_c_;
  std::vector<int> coord_idx_;
  Mat Z_;             // cycle basis in restricted coords
  SmithResult sx_;    // smith of the boundary presentation
  Mat uinv_;
  int rank_ = 0;
  int free_rank_ = 0;
  std::vector<Scalar> torsion_;
  std::vector<int> free_rows_, torsion_rows_;
};

struct MinimizeResult {
  GradedComplex min;
  ComplexMap to_min;    // F : C -> C_min, F o G = id exactly
  ComplexMap from_min;  // G : C_min -> C
  Homotopy h;           // id_C - G o F = d h + h d
};

/// Gaussian elimination of contractible summands: removes unit differential
/// entries (+-1 over Z, any nonzero over a field).
MinimizeResult minimize(const GradedComplex& c);

/// Check id - G F = d h + h d and F G = id.
void check_minimize(const MinimizeResult& r, const GradedComplex& orig);

}  // namespace strat
