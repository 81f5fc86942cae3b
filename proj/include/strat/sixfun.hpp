#pragma once

#include "strat/atlas.hpp"

namespace strat {

/// Objects on open or closed unions of strata are carried as ambient objects
/// supported on the union (zero components elsewhere); open restrictions and
/// extensions by zero are then exact coordinate operations.

bool is_closed_union(const StratAtlas& A, const std::vector<int>& strata);
bool is_open_union(const StratAtlas& A, const std::vector<int>& strata);
std::vector<int> down_closure(const StratAtlas& A, int w);
std::vector<int> complement(const StratAtlas& A, const std::vector<int>& strata);

/// j_! j^* M for the open union O (zero out the closed part), with the
/// canonical inclusion into M.
StratObject open_part(const StratAtlas& A, const StratObject& M, const std::vector<int>& O);
StratMap open_part_inclusion(const StratAtlas& A, const StratObject& M, const std::vector<int>& O);

/// i_* i^* M for the closed union D, with the canonical projection from M.
StratObject closed_part(const StratAtlas& A, const StratObject& M, const std::vector<int>& D);
StratMap closed_part_projection(const StratAtlas& A, const StratObject& M, const std::vector<int>& D);

/// i_* i^! M for the closed union D together with the counit into M.
struct ShriekResult {
  StratObject obj;
  StratMap counit;
};
ShriekResult lower_shriek_part(const StratAtlas& A, const StratObject& M, const std::vector<int>& D);

/// j_* j^* M via the strict fib-of-difference recursion, with its unit.
StratObject star_pushforward_part(const StratAtlas& A, const StratObject& M, const std::vector<int>& O);
struct StarUnitResult {
  StratObject obj;
  StratMap unit;  // M -> obj, strict
};
StarUnitResult star_pushforward_with_unit(const StratAtlas& A, const StratObject& M,
                                          const std::vector<int>& O);

/// Named six-functor application per the external interface: Y must be open
/// for the j-functors and closed for the i-functors; objects on Y are the
/// supported ambient objects.
StratObject six(const StratAtlas& A, const StratObject& M, const std::vector<int>& Y,
                const std::string& which);

/// Standard and costandard objects (affine atlases).
StratObject standard_object(const StratAtlas& A, int w, int q);
StratObject costandard_object(const StratAtlas& A, int w, int q);

/// All components contractible (hence the object is zero in the lax model).
bool strat_acyclic(const StratObject& M);

struct LocalizationReport {
  bool first_ok = false;   // j_! j^! M -> M -> i_* i^* M
  bool second_ok = false;  // i_* i^! M -> M -> j_* j^* M
};
LocalizationReport localization_check(const StratAtlas& A, const StratObject& M,
                                      const std::vector<int>& O);
StratObject ishriek_obj_public(const StratAtlas& A, const StratObject& M, int len,
                               const std::vector<int>& D);

/// Reinterpret a degree-d hom element as a degree-0 element out of the
/// shifted source (coordinates agree under the conventions in use).
StratMap reinterpret_from_shifted_source(const StratMap& f);

/// For F = fib(glue : Mz -> K), the tautological degree -1 element
/// theta : F -> K with D(theta) = -(glue o proj), anchored on the identity
/// block of the shifted kernel part.
StratMap fib_taut_homotopy(const StratAtlas& A, const StratObject& F, const StratObject& Mz,
                           const StratObject& K, const StratMap& glue);
/// The strict projection F -> Mz.
StratMap fib_projection(const StratAtlas& A, const StratObject& F, const StratObject& Mz);

}  // namespace strat
