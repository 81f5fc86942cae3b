#pragma once

#include "strat/stratobj.hpp"

namespace strat {

/// Built-in atlases: point, A1, Gm-in-A1, P1, P2, P3, flag-A1, flag-A2,
/// flag-B2. Kernels beyond the two-stratum cases are derived in-engine
/// (projective spaces via Euler-class cones, flag varieties from the
/// R-polynomial stalk patterns) and oracle-validated by the test suite.
StratAtlas builtin_atlas(const std::string& name, const Ring& R);
StratAtlas flag_atlas(const Ring& R, const std::string& type);
std::vector<std::string> builtin_atlas_names();

/// All n_w incremented: the product with an affine line. Hom tables are
/// unchanged (homotopy invariance).
StratAtlas thicken(const StratAtlas& A);

}  // namespace strat
