#pragma once

#include "strat/truncation.hpp"

namespace strat {

struct TiltingResult {
  StratObject T;
  /// Delta-flag certificate: multiset of (stratum, twist) with multiplicity,
  /// accumulated by the universal-extension construction.
  std::vector<std::tuple<int, int, int>> delta_flag;  // (stratum, twist, mult)
  /// Nabla-flag certificate read off the Hom tables against costandards.
  std::vector<std::tuple<int, int, int>> nabla_flag;
};

/// Tilting object for the stratum w: perverse, supported on the closure,
/// restricting to Lambda[n_w] on the stratum, built by universal extensions
/// killing Ext^1 from twisted standards (HYPOTHESES_FAIL when the atlas
/// lacks the dagger hypotheses).
TiltingResult tilting_object(const StratAtlas& A, int w);

}  // namespace strat
