#pragma once

#include <string>
#include <vector>

#include "strat/mat.hpp"

namespace strat {

/// Finite Weyl group from a Cartan matrix, acting on the weight lattice in
/// the fundamental-weight basis: s_i(x) = x - <x, alpha_i^v> alpha_i.
/// Elements are stored as integer matrices; lengths, reduced words, Bruhat
/// order and R-polynomials are computed on construction (desk scale only).
class WeylGroup {
 public:
  /// types: "A1", "A1xA1", "A2", "B2", "G2"
  static WeylGroup of_type(const std::string& type);
  explicit WeylGroup(std::vector<std::vector<int>> cartan, std::string type_name = "");

  int rank() const { return rank_; }
  int order() const { return static_cast<int>(elts_.size()); }
  const std::string& type_name() const { return type_; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  int identity() const { return id_; }
  int mul(int a, int b) const { return mul_[a][b]; }
  int simple(int i) const { return gens_[i]; }
  int length(int w) const { return len_[w]; }
  const std::vector<int>& reduced_word(int w) const { return words_[w]; }
  bool bruhat_leq(int v, int w) const { return leq_[v][w]; }
  int longest() const { return w0_; }
  /// Laurent-free R-polynomial R_{x,w}(q) as coefficient vector (index = power).
  const std::vector<long>& rpoly(int x, int w) const { return rpoly_[x][w]; }

  /// elements sorted by (length, discovery index): the attach order
  const std::vector<int>& by_length() const { return by_length_; }
  std::string name_of(int w) const;  // reduced word like "sts" or "e"
  int element_by_name(const std::string& s) const;

  /// torsion index of the ambient group type (1 for A/C, 2 for B/D/G2, ...)
  long torsion_index() const;

 private:
  int rank_;
  std::string type_;
  std::vector<std::vector<int>> cartan_;
  std::vector<Mat> elts_;  // matrices on the weight lattice
  std::vector<std::vector<int>> mul_;
  std::vector<int> gens_, len_;
  std::vector<std::vector<int>> words_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<std::vector<long>>> rpoly_;
  std::vector<int> by_length_;
  int id_ = 0, w0_ = 0;
};

}  // namespace strat
