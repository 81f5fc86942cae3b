#pragma once

#include <random>

#include "strat/gradedcomplex.hpp"

namespace strat::testing {

inline GradedComplex two_term(const Ring& R, int lo_deg, int tw, const Scalar& entry) {
  GradedComplex c(R);
  c.set_term(lo_deg, {tw});
  c.set_term(lo_deg + 1, {tw});
  Mat d(1, 1);
  d(0, 0) = entry;
  c.set_diff(lo_deg, d);
  return c;
}

/// Random chain map X -> Y[n]: a random combination of a cycle basis of the
/// hom complex in (degree n, twist 0).
inline ComplexMap random_hom_map(std::mt19937& rng, const GradedComplex& X, const GradedComplex& Y,
                                 int n = 0, int coeff_range = 2) {
  const Ring& R = X.ring();
  GradedComplex H = hom_complex(X, Y);
  auto gens = hom_gens(X, Y, n);
  std::vector<int> idx;
  const auto& tws = H.gens(n);
  for (int i = 0; i < static_cast<int>(tws.size()); ++i)
    if (tws[i] == 0) idx.push_back(i);
  std::vector<int> rows;
  const auto& tws1 = H.gens(n + 1);
  for (int i = 0; i < static_cast<int>(tws1.size()); ++i)
    if (tws1[i] == 0) rows.push_back(i);
  Mat B = H.diff(n).submatrix(rows, idx);
  Mat K = kernel_basis(R, B);
  std::uniform_int_distribution<int> coef(-coeff_range, coeff_range);
  std::vector<Scalar> coords(gens.size(), Scalar(0));
  for (int k = 0; k < K.cols(); ++k) {
    Scalar c = R.normalize(Scalar(coef(rng)));
    if (c == 0) continue;
    for (size_t i = 0; i < idx.size(); ++i)
      coords[idx[i]] = R.normalize(coords[idx[i]] + c * K(static_cast<int>(i), k));
  }
  return hom_cycle_to_map(X, Y, n, coords);
}

/// Random bounded complex built from twisted shifted units by iterated cones
/// of random chain maps.
inline GradedComplex random_complex(std::mt19937& rng, const Ring& R, int steps = 3,
                                    int tw_range = 2, int shift_range = 2) {
  std::uniform_int_distribution<int> tw(-tw_range, tw_range), sh(-shift_range, shift_range);
  GradedComplex cur = GradedComplex::unit(R, tw(rng), sh(rng));
  for (int s = 0; s < steps; ++s) {
    GradedComplex next = GradedComplex::unit(R, tw(rng), sh(rng));
    if (s % 2 == 0) {
      ComplexMap f = random_hom_map(rng, next, cur);
      cur = cone(f);
    } else {
      ComplexMap f = random_hom_map(rng, cur, next);
      cur = cone(f);
    }
  }
  cur.validate();
  return cur;
}

}  // namespace strat::testing
