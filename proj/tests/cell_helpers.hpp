#pragma once

#include <random>

#include "strat/cell.hpp"

namespace strat::testing {

/// Random degree-k cell map: random combination of a cycle basis of the
/// E-linear hom complex in (degree k, twist 0).
inline CellMap random_cell_map(std::mt19937& rng, const CellObject& X, const CellObject& Y,
                               int k = 0, int coeff_range = 2) {
  const Ring& R = X.ring();
  GradedComplex H = cell_hom_complex(X, Y);
  auto gens = cell_hom_gens(X, Y, k);
  std::vector<int> idx;
  const auto& tws = H.gens(k);
  for (int i = 0; i < static_cast<int>(tws.size()); ++i)
    if (tws[i] == 0) idx.push_back(i);
  std::vector<int> rows;
  const auto& tws1 = H.gens(k + 1);
  for (int i = 0; i < static_cast<int>(tws1.size()); ++i)
    if (tws1[i] == 0) rows.push_back(i);
  Mat B = H.diff(k).submatrix(rows, idx);
  Mat K = kernel_basis(R, B);
  std::uniform_int_distribution<int> coef(-coeff_range, coeff_range);
  std::vector<Scalar> coords(gens.size(), Scalar(0));
  for (int c = 0; c < K.cols(); ++c) {
    Scalar cc = R.normalize(Scalar(coef(rng)));
    if (cc == 0) continue;
    for (size_t i = 0; i < idx.size(); ++i)
      coords[idx[i]] = R.normalize(coords[idx[i]] + cc * K(static_cast<int>(i), c));
  }
  return cell_cycle_to_map(X, Y, k, coords);
}

/// Random compact cell object built from Tate objects by iterated cones.
inline CellObject random_cell(std::mt19937& rng, const Ring& R, int n, int m, int steps = 2,
                              int tw_range = 2, int shift_range = 1) {
  std::uniform_int_distribution<int> tw(-tw_range, tw_range), sh(-shift_range, shift_range);
  CellObject cur = CellObject::tate(R, n, m, tw(rng), sh(rng));
  for (int s = 0; s < steps; ++s) {
    CellObject nx = CellObject::tate(R, n, m, tw(rng), sh(rng));
    if (s % 2 == 0)
      cur = cell_cone(random_cell_map(rng, nx, cur));
    else
      cur = cell_cone(random_cell_map(rng, cur, nx));
  }
  cur.validate();
  return cur;
}

}  // namespace strat::testing
