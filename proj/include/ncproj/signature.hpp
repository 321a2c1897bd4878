#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncproj/lyndon.hpp"
#include "ncproj/util.hpp"

namespace ncproj {

// Generators x_0..x_n, brackets of length > q vanish.
struct Signature {
  int n = 1;
  int q = 2;
  bool operator==(const Signature& o) const { return n == o.n && q == o.q; }
};

// Free nilpotent Lie algebra on x_0..x_n with nilpotency class q, presented on
// the Hall basis of Lyndon words. Basis order is (degree, lex), so indices
// 0..n are the generators and every later index names a radical element.
class LieAlgebra {
public:
  using Elem = std::map<int, Rat>;  // basis index -> coefficient

  explicit LieAlgebra(Signature sig) : sig_(sig) {
    require_internal(sig.n >= 0 && sig.q >= 1, "signature wants n >= 0, q >= 1");
    words_ = lyndon_words(sig.n + 1, sig.q);
    std::stable_sort(words_.begin(), words_.end(), [](const Word& a, const Word& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    for (int i = 0; i < (int)words_.size(); ++i) index_[words_[i]] = i;
    expansions_.resize(words_.size());
  }

  const Signature& sig() const { return sig_; }
  int n() const { return sig_.n; }
  int q() const { return sig_.q; }
  int dim() const { return (int)words_.size(); }
  int degree(int i) const { return (int)words_[i].size(); }
  bool is_radical(int i) const { return i > sig_.n; }
  const Word& word(int i) const { return words_[i]; }

  int index_of_word(const Word& w) const {
    auto it = index_.find(w);
    require_internal(it != index_.end(), "word outside the Hall basis");
    return it->second;
  }

  std::string name(int i) const {
    require_internal(i >= 0 && i < dim(), "basis index out of range");
    return (i <= sig_.n ? "x" : "z") + std::to_string(i);
  }

  std::optional<int> index_of_name(const std::string& s) const {
    if (s.size() < 2 || (s[0] != 'x' && s[0] != 'z')) return std::nullopt;
    for (size_t k = 1; k < s.size(); ++k)
      if (!isdigit((unsigned char)s[k])) return std::nullopt;
    int i = std::stoi(s.substr(1));
    if (i < 0 || i >= dim()) return std::nullopt;
    if (s[0] == 'x' && i > sig_.n) return std::nullopt;
    if (s[0] == 'z' && i <= sig_.n) return std::nullopt;
    return i;
  }

  std::vector<long> dimensions_by_degree() const {
    std::vector<long> dims(sig_.q + 1, 0);
    for (auto& w : words_) dims[w.size()]++;
    return dims;
  }

  // Basis indices of a given degree, ascending.
  std::vector<int> indices_of_degree(int m) const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
      if (degree(i) == m) out.push_back(i);
    return out;
  }

  // [z_i, z_j]; memoized on first use.
  const Elem& bracket(int i, int j) {
    require_internal(i >= 0 && j >= 0 && i < dim() && j < dim(), "bracket index out of range");
    static const Elem kZero{};
    if (i == j || degree(i) + degree(j) > sig_.q) return kZero;
    bool flip = i > j;
    if (flip) std::swap(i, j);
    auto key = std::make_pair(i, j);
    auto it = bracket_memo_.find(key);
    if (it == bracket_memo_.end()) {
      Tensor t = tensor_sub(tensor_mul(expansion(i), expansion(j)),
                            tensor_mul(expansion(j), expansion(i)));
      it = bracket_memo_.emplace(key, decompose(std::move(t))).first;
    }
    if (!flip) return it->second;
    auto nkey = std::make_pair(j, i);
    auto nit = neg_memo_.find(nkey);
    if (nit == neg_memo_.end()) {
      Elem neg;
      for (auto& [u, c] : it->second) neg[u] = -c;
      nit = neg_memo_.emplace(nkey, std::move(neg)).first;
    }
    return nit->second;
  }

  Elem bracket(const Elem& a, const Elem& b) {
    Elem r;
    for (auto& [i, ci] : a)
      for (auto& [j, cj] : b)
        for (auto& [u, cu] : bracket(i, j)) {
          Rat v = r[u] += ci * cj * cu;
          if (v == 0) r.erase(u);
        }
    return r;
  }

  // Weighted degree of a homogeneous element; error if mixed or zero.
  int elem_degree(const Elem& a) const {
    require_internal(!a.empty(), "degree of zero element");
    int d = degree(a.begin()->first);
    for (auto& [i, c] : a)
      require_internal(degree(i) == d, "element is not degree homogeneous");
    return d;
  }

private:
  using Tensor = std::map<Word, Rat>;

  const Tensor& expansion(int i) {
    if (!expansions_[i].has_value()) {
      const Word& w = words_[i];
      if (w.size() == 1) {
        expansions_[i] = Tensor{{w, Rat(1)}};
      } else {
        auto [u, v] = std_factor(w);
        const Tensor a = expansion(index_of_word(u));  // copies: recursion may reallocate
        const Tensor b = expansion(index_of_word(v));
        expansions_[i] = tensor_sub(tensor_mul(a, b), tensor_mul(b, a));
      }
    }
    return *expansions_[i];
  }

  Tensor tensor_mul(const Tensor& a, const Tensor& b) const {
    Tensor r;
    for (auto& [wa, ca] : a)
      for (auto& [wb, cb] : b) {
        if ((int)(wa.size() + wb.size()) > sig_.q) continue;
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        Rat v = r[w] += ca * cb;
        if (v == 0) r.erase(w);
      }
    return r;
  }

  static Tensor tensor_sub(Tensor a, const Tensor& b) {
    for (auto& [w, c] : b) {
      Rat v = a[w] -= c;
      if (v == 0) a.erase(w);
    }
    return a;
  }

  // Triangular rewrite into the basis: the lex-smallest surviving word is
  // Lyndon and its bracketing expands as that word plus lex-larger ones.
  Elem decompose(Tensor t) {
    Elem out;
    while (!t.empty()) {
      auto [w, c] = *t.begin();
      require_internal(is_lyndon(w), "leading word of a Lie element must be Lyndon");
      int u = index_of_word(w);
      out[u] = c;
      for (auto& [wu, cu] : expansion(u)) {
        Rat v = t[wu] -= c * cu;
        if (v == 0) t.erase(wu);
      }
      require_internal(!t.count(w), "triangular elimination failed to clear leading word");
    }
    return out;
  }

  Signature sig_;
  std::vector<Word> words_;
  std::map<Word, int> index_;
  std::vector<std::optional<Tensor>> expansions_;
  std::map<std::pair<int, int>, Elem> bracket_memo_;
  std::map<std::pair<int, int>, Elem> neg_memo_;
};

}  // namespace ncproj
