#pragma once

#include <memory>

#include "strat/coinvariant.hpp"

namespace strat {

/// Finite graded module over the coinvariant algebra: a Lambda-basis with
/// v-degrees and exact action matrices for the variable classes. Modules
/// carry their Hecke-character provenance when known.
class SoergelModule {
 public:
  SoergelModule(std::shared_ptr<const Coinvariant> C) : C_(std::move(C)) {}

  const Coinvariant& algebra() const { return *C_; }
  std::shared_ptr<const Coinvariant> algebra_ptr() const { return C_; }
  const Ring& ring() const { return C_->ring(); }

  int dim() const { return static_cast<int>(vdeg_.size()); }
  int vdeg(int b) const { return vdeg_[b]; }
  const Mat& action(int i) const { return act_[i]; }

  int add_basis(int vdegree) {
    vdeg_.push_back(vdegree);
    return dim() - 1;
  }
  void set_actions(std::vector<Mat> acts) { act_ = std::move(acts); }

  SoergelModule twisted(int k) const;        // shift all v-degrees by k
  SoergelModule dirsum(const SoergelModule& o) const;
  void validate() const;

  bool has_character = false;
  HeckeElt character;  // valid when has_character

 private:
  std::shared_ptr<const Coinvariant> C_;
  std::vector<int> vdeg_;
  std::vector<Mat> act_;
};

/// The augmentation module Lambda.
SoergelModule trivial_module(std::shared_ptr<const Coinvariant> C);
/// Bott-Samelson module C (x)_{C^{s_1}} ( ... (x)_{C^{s_k}} Lambda ) with
/// the twist normalization ch(BS(word)) = prod b_{s_i}.
SoergelModule bs_module(std::shared_ptr<const Coinvariant> C, const std::vector<int>& word);

/// Graded Hom space of module maps as a Laurent polynomial rank.
Laurent smod_hom_rank(const SoergelModule& M, const SoergelModule& N);
/// Basis of degree-d module maps, as matrices.
std::vector<Mat> smod_hom_basis(const SoergelModule& M, const SoergelModule& N, int d);

/// Direct-sum decomposition over a field: (label, twist) pairs with the
/// indecomposables B_x labelled by Weyl elements (NOT_A_FIELD over Z).
struct Summand {
  int label;  // W element
  int twist;
};
std::vector<Summand> decompose(const SoergelModule& M);

/// Character of a direct sum of Bott-Samelson summands (UNSUPPORTED_MODULE
/// when no provenance is attached).
HeckeElt character_of(const SoergelModule& M);

/// The indecomposable B_x over a field, by peeling Bott-Samelson modules.
SoergelModule indecomposable(std::shared_ptr<const Coinvariant> C, int x);

}  // namespace strat
