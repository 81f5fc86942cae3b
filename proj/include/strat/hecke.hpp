#pragma once

#include <map>

#include "strat/coxeter.hpp"

namespace strat {

/// Laurent polynomial in v with integer coefficients.
class Laurent {
 public:
  Laurent() {}
  explicit Laurent(long c, int power = 0) {
    if (c) c_[power] = c;
  }
  static Laurent v(int power) { return Laurent(1, power); }

  const std::map<int, long>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long coeff(int p) const {
    auto it = c_.find(p);
    return it == c_.end() ? 0 : it->second;
  }
  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator*(const Laurent& o) const;
  Laurent operator*(long k) const;
  bool operator==(const Laurent& o) const { return c_ == o.c_; }
  /// v -> v^{-1}
  Laurent bar() const;
  std::string str() const;

 private:
  std::map<int, long> c_;
};

/// Element of the Hecke algebra in the standard basis {H_w} with
/// H_s^2 = (v^{-1} - v) H_s + H_e, so that b_s := H_s + v H_e satisfies
/// b_s^2 = (v + v^{-1}) b_s.
class HeckeElt {
 public:
  std::map<int, Laurent> c;  // W element -> coefficient
  Laurent coeff(int w) const {
    auto it = c.find(w);
    return it == c.end() ? Laurent() : it->second;
  }
  void add(int w, const Laurent& l);
  HeckeElt operator+(const HeckeElt& o) const;
  HeckeElt operator-(const HeckeElt& o) const;
  bool operator==(const HeckeElt& o) const;
};

class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(const WeylGroup& W);

  const WeylGroup& weyl() const { return *W_; }
  HeckeElt std_basis(int w) const;
  HeckeElt mul(const HeckeElt& a, const HeckeElt& b) const;
  /// Kazhdan-Lusztig basis element b_w (self-dual, with the degree bound).
  HeckeElt kl_basis(int w) const;
  HeckeElt kl_gen(int i) const { return kl_basis(W_->simple(i)); }
  /// bar involution: v -> v^{-1}, H_w -> H_{w^{-1}}^{-1}
  HeckeElt bar(const HeckeElt& a) const;
  /// the pairing with <H_x, H_y> = delta_{xy}: graded Hom rank predictor
  Laurent pairing(const HeckeElt& a, const HeckeElt& b) const;
  /// product of b_{s_i} over a word
  HeckeElt bott_samelson(const std::vector<int>& word) const;
  std::string str(const HeckeElt& a) const;

 private:
  HeckeElt mul_gen_right(const HeckeElt& a, int i) const;
  const WeylGroup* W_;
  mutable std::map<int, HeckeElt> kl_memo_;
};

}  // namespace strat
