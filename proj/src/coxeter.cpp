#include "strat/coxeter.hpp"

#include <algorithm>
#include <map>

#include "strat/ring.hpp"

namespace strat {

namespace {
Mat simple_reflection(const std::vector<std::vector<int>>& cartan, int i) {
  int r = static_cast<int>(cartan.size());
  // s_i(w_j) = w_j - delta_ij alpha_i, alpha_i = sum_k cartan[k][i] w_k
  Mat m = Mat::identity(r);
  for (int k = 0; k < r; ++k) m(k, i) -= cartan[k][i];
  return m;
}
std::string key_of(const Mat& m) {
  std::string s;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += m(i, j).get_str() + ",";
  return s;
}
}  // namespace

WeylGroup WeylGroup::of_type(const std::string& type) {
  if (type == "A1") return WeylGroup({{2}}, "A1");
  if (type == "A1xA1") return WeylGroup({{2, 0}, {0, 2}}, "A1xA1");
  if (type == "A2") return WeylGroup({{2, -1}, {-1, 2}}, "A2");
  if (type == "B2" || type == "C2") return WeylGroup({{2, -1}, {-2, 2}}, "B2");
  if (type == "G2") return WeylGroup({{2, -1}, {-3, 2}}, "G2");
  if (type == "A3") return WeylGroup({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, "A3");
  throw Error(ErrorCode::PARSE_ERROR, "unknown Coxeter type '" + type + "'");
}

WeylGroup::WeylGroup(std::vector<std::vector<int>> cartan, std::string type_name)
    : rank_(static_cast<int>(cartan.size())), type_(std::move(type_name)), cartan_(std::move(cartan)) {
  Ring Z = Ring::Z();
  std::vector<Mat> gens;
  for (int i = 0; i < rank_; ++i) gens.push_back(simple_reflection(cartan_, i));
  std::map<std::string, int> seen;
  elts_.push_back(Mat::identity(rank_));
  words_.push_back({});
  seen[key_of(elts_[0])] = 0;
  // BFS by word length gives lengths and canonical reduced words
  for (size_t head = 0; head < elts_.size(); ++head) {
    if (elts_.size() > 100000) throw Error(ErrorCode::VALIDATION_ERROR, "Coxeter group too large");
    for (int i = 0; i < rank_; ++i) {
      Mat m = gens[i].mul(Z, elts_[head]);  // s_i * w
      std::string k = key_of(m);
      auto it = seen.find(k);
      if (it == seen.end()) {
        seen[k] = static_cast<int>(elts_.size());
        elts_.push_back(m);
        std::vector<int> wrd = {i};
        for (int x : words_[head]) wrd.push_back(x);
        words_.push_back(std::move(wrd));
      }
    }
  }
  int n = order();
  len_.resize(n);
  for (int w = 0; w < n; ++w) len_[w] = static_cast<int>(words_[w].size());
  gens_.resize(rank_);
  for (int i = 0; i < rank_; ++i) gens_[i] = seen.at(key_of(gens[i]));
  mul_.assign(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul_[a][b] = seen.at(key_of(elts_[a].mul(Z, elts_[b])));
  w0_ = 0;
  for (int w = 0; w < n; ++w)
    if (len_[w] > len_[w0_]) w0_ = w;
  // Bruhat order via the subword property on canonical reduced words of w,
  // testing all subwords is fine at this scale; use the standard recursive
  // criterion instead: v <= w iff v = w, or for s with sw < w:
  //   v <= sw (if sv > v) or sv <= sw (if sv < v).
  leq_.assign(n, std::vector<bool>(n, false));
  std::vector<int> order_idx;
  for (int w = 0; w < n; ++w) order_idx.push_back(w);
  std::sort(order_idx.begin(), order_idx.end(), [&](int a, int b) { return len_[a] < len_[b]; });
  for (int w : order_idx) {
    leq_[w][w] = true;
    if (len_[w] == 0) continue;
    int s = words_[w][0];  // s w < w since words are reduced with leading s
    int sw = mul_[gens_[s]][w];
    for (int v = 0; v < n; ++v) {
      int sv = mul_[gens_[s]][v];
      bool res;
      if (len_[sv] > len_[v])
        res = leq_[v][sw];
      else
        res = leq_[sv][sw];
      if (res) leq_[v][w] = true;
    }
  }
  // R-polynomials
  rpoly_.assign(n, std::vector<std::vector<long>>(n));
  std::function<const std::vector<long>&(int, int)> R = [&](int x, int w) -> const std::vector<long>& {
    auto& memo = rpoly_[x][w];
    if (!memo.empty() || x == w) {
      if (memo.empty()) memo = {1};
      return memo;
    }
    if (!leq_[x][w]) {
      memo = {0};
      return memo;
    }
    int s = words_[w][0];
    int sw = mul_[gens_[s]][w];
    int sx = mul_[gens_[s]][x];
    if (len_[sx] < len_[x]) {
      memo = R(sx, sw);
      return memo;
    }
    // R_{x,w} = (q-1) R_{x,sw} + q R_{sx,sw}
    const std::vector<long> a = R(x, sw);
    const std::vector<long> b = R(sx, sw);
    std::vector<long> out(std::max(a.size() + 1, b.size() + 1), 0);
    for (size_t i = 0; i < a.size(); ++i) {
      out[i + 1] += a[i];
      out[i] -= a[i];
    }
    for (size_t i = 0; i < b.size(); ++i) out[i + 1] += b[i];
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    memo = out;
    return memo;
  };
  for (int x = 0; x < n; ++x)
    for (int w = 0; w < n; ++w) R(x, w);
  by_length_ = order_idx;
  id_ = 0;
}

std::string WeylGroup::name_of(int w) const {
  if (len_[w] == 0) return "e";
  std::string s;
  for (int i : words_[w]) s += static_cast<char>('s' + i);
  return s;
}

int WeylGroup::element_by_name(const std::string& s) const {
  if (s == "e" || s.empty()) return id_;
  int w = id_;
  for (char c : s) {
    int i = c - 's';
    if (i < 0 || i >= rank_) throw Error(ErrorCode::PARSE_ERROR, "bad generator letter in '" + s + "'");
    w = mul_[w][gens_[i]];
  }
  return w;
}

long WeylGroup::torsion_index() const {
  if (type_ == "A1" || type_ == "A1xA1" || type_ == "A2" || type_ == "A3" || type_ == "C2")
    return 1;
  if (type_ == "B2" || type_ == "G2") return 2;
  return 1;
}

}  // namespace strat
