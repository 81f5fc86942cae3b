#pragma once

#include "strat/cell.hpp"

namespace strat {

/// Module over R = Sym(Lambda^m<1>) inside graded complexes: a bounded
/// complex of graded free Lambda-modules (generators with (deg, tw)) together
/// with m commuting degree-0 action maps z_i raising the twist label by +1
/// and commuting with the differential. The underlying complex is perfect,
/// so this is the finite Koszul-dual model of a compact cell object.
class PolyModule {
 public:
  PolyModule(const Ring& R, int n, int m) : cx_(R), n_(n), m_(m) {}

  const Ring& ring() const { return cx_.ring(); }
  int n() const { return n_; }
  int m() const { return m_; }

  const GradedComplex& cx() const { return cx_; }
  GradedComplex& cx() { return cx_; }

  /// z_i component at degree c: maps C^c -> C^c with twist labels + 1 on the
  /// target side (stored against the twisted target complex).
  Mat z(int i, int c) const;
  void set_z(int i, int c, Mat m);
  const std::map<std::pair<int, int>, Mat>& zcomps() const { return z_; }

  void validate() const;

  PolyModule shifted(int k) const;
  PolyModule twisted(int q) const;

 private:
  GradedComplex cx_;
  int n_, m_;
  std::map<std::pair<int, int>, Mat> z_;  // (i, degree) -> matrix
};

/// Koszul dual of a compact cell object: the label-window truncation of the
/// divided-power resolution tensored with M. Homology in labels below the
/// minimal generator label vanishes, so the window [min tw, max tw] captures
/// the quasi-isomorphism type as a strict R-module.
PolyModule koszul_dual(const CellObject& M);

/// Back from the polynomial model: E (x) P with the twisted differential
/// d_P + sum_i xi_i z_i; free over E on the Lambda-basis of P.
CellObject koszul_undual(const PolyModule& P);

/// Counit undual(dual(M)) -> M, a quasi-isomorphism of free E-complexes.
CellMap koszul_counit(const CellObject& M);

/// Derived Hom over R via the finite semifree Koszul resolution
/// R (x) Wedge^*(Lambda^m) (x) P; table indexed like cell_hom under the
/// dictionary L(i)[j] <-> L<i>[j].
HomTable polymod_hom(const PolyModule& P, const PolyModule& Q);

/// Smart truncation of the underlying complex at degree c; both halves are
/// R-submodule / quotient complexes with free terms.
struct PolyTrunc {
  PolyModule low, high;
  // maps: low -> P (inclusion-like) and P -> high (projection-like)
  std::map<int, Mat> incl, proj;
};
PolyTrunc polymod_truncate(const PolyModule& P, int c);

/// Perverse truncation of a compact cell object, computed in the Koszul-dual
/// model where the forgetful functor is t-exact, transported back along the
/// counit. The heart convention places L(q)[n+m] in perverse degree 0.
struct CellTTrunc {
  CellObject low, high;
  CellMap to_M;      // tau^{<=k} M -> M
  CellMap from_M;    // M -> tau^{>=k+1} M
};
CellTTrunc cell_t_truncate(const CellObject& M, int k);

/// Perverse degrees with nonzero homology of KD(M) (degree + n + m shift).
std::map<int, GradedModule> perverse_homology(const CellObject& M);

/// Weight truncation: brutal truncation of the minimized complex along the
/// generator weight statistic, with asserted orthogonality.
struct CellWTruncFull {
  CellObject low, high;
  CellMap to_M;
  CellMap from_M;
};
CellWTruncFull cell_w_truncate(const CellObject& M, int k);

}  // namespace strat
