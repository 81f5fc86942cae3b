#pragma once

#include "strat/sixfun.hpp"

namespace strat {

enum class TruncKind { Perverse, Weight };

struct StratTrunc {
  StratObject low, high;
  StratMap to_M;    // low -> M
  StratMap from_M;  // M -> high
};

/// Glued truncation along the attach order: correct on the open stratum via
/// the cell-level truncation, then on the closed part through the fib of
/// the comparison, with the aisle memberships asserted afterwards
/// (TRUNCATION_ASSERT_FAILED on any drift).
StratTrunc strat_truncate(const StratAtlas& A, const StratObject& M, int k, TruncKind kind);

/// Aisle membership: iota_w^* M in degrees <= k for all w (lower aisle) or
/// iota_w^! M in degrees >= k for all w (upper aisle).
bool strat_in_lower_aisle(const StratAtlas& A, const StratObject& M, int k, TruncKind kind);
bool strat_in_upper_aisle(const StratAtlas& A, const StratObject& M, int k, TruncKind kind);

/// Membership of a single cell object (perverse degrees via the Koszul-dual
/// homology, weights via generator weights of the minimized complex).
bool cell_in_lower_aisle(const CellObject& M, int k, TruncKind kind);
bool cell_in_upper_aisle(const CellObject& M, int k, TruncKind kind);

/// Pointwise purity per the two restriction families.
bool is_pointwise_pure(const StratAtlas& A, const StratObject& M, char variant);

/// iota_w^* is the component; iota_w^! peels the higher strata by fibs.
CellObject cell_iota_shriek(const StratAtlas& A, const StratObject& M, int w);

}  // namespace strat
