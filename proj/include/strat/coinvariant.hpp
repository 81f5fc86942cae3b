#pragma once

#include "strat/hecke.hpp"
#include "strat/smith.hpp"

namespace strat {

/// Multivariate polynomial over the coefficient ring in the fundamental
/// weight basis; exponent vectors are the keys. The v-degree of a linear
/// form is 2.
class Poly {
 public:
  std::map<std::vector<int>, Scalar> terms;
  static Poly variable(int i, int rank);
  static Poly constant(int rank, const Scalar& c);
  Poly add(const Ring& R, const Poly& o) const;
  Poly sub(const Ring& R, const Poly& o) const;
  Poly mul(const Ring& R, const Poly& o) const;
  Poly scaled(const Ring& R, const Scalar& c) const;
  bool is_zero() const { return terms.empty(); }
};

/// Coinvariant algebra C = S / (S^W_+) with a chosen graded basis, exact
/// structure constants, Demazure operators and the C^{s_i}-decompositions.
/// Construction fails with TORSION_NOT_INVERTIBLE when the torsion index of
/// the group type is not invertible in the ring (and also if a free basis
/// cannot be chosen, which is the computational shadow of the same issue).
class Coinvariant {
 public:
  Coinvariant(const WeylGroup& W, const Ring& R);

  const WeylGroup& weyl() const { return *W_; }
  const Ring& ring() const { return R_; }
  int top_degree() const { return top_; }          // polynomial degree of the socle
  int dim() const { return static_cast<int>(basis_deg_.size()); }
  int basis_degree(int b) const { return basis_deg_[b]; }  // polynomial degree
  /// graded rank as a Laurent polynomial in v (degrees doubled)
  Laurent graded_rank() const;

  /// express an S-polynomial in the chosen basis of C
  std::vector<Scalar> reduce(const Poly& f) const;
  /// multiplication matrix of the class of variable i on C
  const Mat& var_action(int i) const { return var_act_[i]; }
  /// Demazure operator matrix on C (degree -1 in polynomial degree)
  const Mat& demazure(int i) const { return dem_[i]; }
  /// f = p + q * x_i with p, q invariant under s_i: returns (p, q) of a basis
  /// element as coordinate vectors
  void si_decompose(int i, const std::vector<Scalar>& c, std::vector<Scalar>* p,
                    std::vector<Scalar>* q) const;

  /// polynomial representative of a basis-coordinate vector
  Poly basis_poly_combination(const std::vector<Scalar>& coords) const;

 private:
  const WeylGroup* W_;
  Ring R_;
  int rank_, top_;
  std::vector<int> basis_deg_;
  std::vector<Poly> basis_rep_;
  // per polynomial degree: monomials, ideal basis, reduction data
  struct DegData {
    std::vector<std::vector<int>> monos;
    std::map<std::vector<int>, int> mono_idx;
    Mat ideal;           // columns span I_d in monomial coordinates
    std::vector<int> basis_ids;  // global basis indices living in this degree
    Mat solve_mat;       // [ideal | basis reps] for reduction
  };
  std::vector<DegData> degs_;
  std::vector<Mat> var_act_, dem_;
  Poly apply_w(int w, const Poly& f) const;
  Poly alpha(int i) const;
};

}  // namespace strat
