#include "strat/hecke.hpp"

#include <sstream>

namespace strat {

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent r = *this;
  for (auto& [p, c] : o.c_) {
    r.c_[p] += c;
    if (r.c_[p] == 0) r.c_.erase(p);
  }
  return r;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (o * -1); }

Laurent Laurent::operator*(const Laurent& o) const {
  Laurent r;
  for (auto& [p, c] : c_)
    for (auto& [q, d] : o.c_) {
      r.c_[p + q] += c * d;
      if (r.c_[p + q] == 0) r.c_.erase(p + q);
    }
  return r;
}

Laurent Laurent::operator*(long k) const {
  Laurent r;
  if (k == 0) return r;
  for (auto& [p, c] : c_) r.c_[p] = c * k;
  return r;
}

Laurent Laurent::bar() const {
  Laurent r;
  for (auto& [p, c] : c_) r.c_[-p] = c;
  return r;
}

std::string Laurent::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [p, c] : c_) {
    if (!first && c > 0) os << "+";
    if (c == -1 && p != 0)
      os << "-";
    else if (!(c == 1 && p != 0))
      os << c;
    if (p != 0) {
      os << "v";
      if (p != 1) os << "^" << p;
    }
    first = false;
  }
  return os.str();
}

void HeckeElt::add(int w, const Laurent& l) {
  if (l.is_zero()) return;
  auto it = c.find(w);
  if (it == c.end()) {
    c[w] = l;
  } else {
    it->second = it->second + l;
    if (it->second.is_zero()) c.erase(w);
  }
}

HeckeElt HeckeElt::operator+(const HeckeElt& o) const {
  HeckeElt r = *this;
  for (auto& [w, l] : o.c) r.add(w, l);
  return r;
}

HeckeElt HeckeElt::operator-(const HeckeElt& o) const {
  HeckeElt r = *this;
  for (auto& [w, l] : o.c) r.add(w, l * -1);
  return r;
}

bool HeckeElt::operator==(const HeckeElt& o) const { return c == o.c; }

HeckeAlgebra::HeckeAlgebra(const WeylGroup& W) : W_(&W) {}

HeckeElt HeckeAlgebra::std_basis(int w) const {
  HeckeElt r;
  r.add(w, Laurent(1));
  return r;
}

HeckeElt HeckeAlgebra::mul_gen_right(const HeckeElt& a, int i) const {
  HeckeElt r;
  int s = W_->simple(i);
  for (auto& [x, l] : a.c) {
    int xs = W_->mul(x, s);
    if (W_->length(xs) > W_->length(x)) {
      r.add(xs, l);
    } else {
      r.add(xs, l);
      r.add(x, l * (Laurent::v(-1) - Laurent::v(1)));
    }
  }
  return r;
}

HeckeElt HeckeAlgebra::mul(const HeckeElt& a, const HeckeElt& b) const {
  HeckeElt r;
  for (auto& [y, ly] : b.c) {
    // a * (ly H_y): multiply a by the reduced word of y on the right
    HeckeElt cur = a;
    for (int i : W_->reduced_word(y)) cur = mul_gen_right(cur, i);
    for (auto& [x, lx] : cur.c) r.add(x, lx * ly);
  }
  return r;
}

HeckeElt HeckeAlgebra::kl_basis(int w) const {
  auto it = kl_memo_.find(w);
  if (it != kl_memo_.end()) return it->second;
  HeckeElt b;
  if (W_->length(w) == 0) {
    b = std_basis(w);
  } else {
    int i = W_->reduced_word(w)[0];
    int s = W_->simple(i);
    int w1 = W_->mul(s, w);  // shorter
    HeckeElt bs;
    bs.add(s, Laurent(1));
    bs.add(W_->identity(), Laurent::v(1));
    HeckeElt c = mul(bs, kl_basis(w1));
    // subtract constant-term corrections from maximal to minimal
    std::vector<int> order;
    for (auto& [y, l] : c.c) order.push_back(y);
    std::sort(order.begin(), order.end(),
              [&](int a2, int b2) { return W_->length(a2) > W_->length(b2); });
    for (int y : order) {
      if (y == w) continue;
      long m = c.coeff(y).coeff(0);
      if (m != 0) c = c - [&] { HeckeElt t; for (auto& [z, l] : kl_basis(y).c) t.add(z, l * m); return t; }();
    }
    b = c;
  }
  kl_memo_[w] = b;
  return b;
}

HeckeElt HeckeAlgebra::bar(const HeckeElt& a) const {
  // bar(H_s) = H_s^{-1} = H_s + (v - v^{-1}) H_e
  HeckeElt r;
  for (auto& [x, l] : a.c) {
    // bar(H_x) = product of inverses along the reversed reduced word
    // bar(H_x) = (H_{s_k}^{-1} ... H_{s_1}^{-1})^{reversed} for x = s_1...s_k,
    // with H_s^{-1} = H_s + (v - v^{-1}) H_e
    HeckeElt cur = std_basis(W_->identity());
    std::vector<int> word = W_->reduced_word(x);
    for (auto itw = word.begin(); itw != word.end(); ++itw) {
      HeckeElt nxt;
      int s = W_->simple(*itw);
      for (auto& [y, ly] : cur.c) {
        int ys = W_->mul(y, s);
        if (W_->length(ys) > W_->length(y)) {
          nxt.add(ys, ly);
        } else {
          nxt.add(ys, ly);
          nxt.add(y, ly * (Laurent::v(-1) - Laurent::v(1)));
        }
        nxt.add(y, ly * (Laurent::v(1) - Laurent::v(-1)));
      }
      cur = nxt;
    }
    for (auto& [y, ly] : cur.c) r.add(y, ly * l.bar());
  }
  return r;
}

Laurent HeckeAlgebra::pairing(const HeckeElt& a, const HeckeElt& b) const {
  Laurent r;
  for (auto& [x, l] : a.c) r = r + l * b.coeff(x);
  return r;
}

HeckeElt HeckeAlgebra::bott_samelson(const std::vector<int>& word) const {
  HeckeElt r = std_basis(W_->identity());
  for (int i : word) r = mul(r, kl_gen(i));
  return r;
}

std::string HeckeAlgebra::str(const HeckeElt& a) const {
  if (a.c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [w, l] : a.c) {
    if (!first) os << " + ";
    os << "(" << l.str() << ")H[" << W_->name_of(w) << "]";
    first = false;
  }
  return os.str();
}

}  // namespace strat
