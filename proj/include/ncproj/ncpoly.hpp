#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ncproj/commutative.hpp"
#include "ncproj/signature.hpp"
#include "ncproj/util.hpp"

namespace ncproj {

// Key of a PBW monomial: weighted degree first so grading splits are cheap,
// then the exponent vector in descending dense lex (x0^2 before x0*x1).
using MonoKey = std::pair<long, Expo>;

struct MonoKeyOrder {
  bool operator()(const MonoKey& a, const MonoKey& b) const {
    if (a.first != b.first) return a.first < b.first;
    return a.second.cmp_lex(b.second) > 0;
  }
};

// Element of the graded enveloping algebra in the ordered-monomial basis.
// Pure value type; products and anything else that needs straightening or
// degree weights live on SqAlgebra.
class NCPoly {
public:
  using Terms = std::map<MonoKey, Rat, MonoKeyOrder>;

  NCPoly() = default;
  explicit NCPoly(const Rat& c) {
    if (c != 0) terms_[{0, Expo{}}] = c;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  void add_term(long wdeg, const Expo& e, const Rat& c) {
    if (c == 0) return;
    MonoKey k{wdeg, e};
    Rat v = terms_[k] += c;
    if (v == 0) terms_.erase(k);
  }

  NCPoly& operator+=(const NCPoly& o) {
    for (auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    for (auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
    return *this;
  }
  NCPoly operator+(const NCPoly& o) const { NCPoly r = *this; r += o; return r; }
  NCPoly operator-(const NCPoly& o) const { NCPoly r = *this; r -= o; return r; }
  NCPoly operator-() const {
    NCPoly r;
    for (auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
  }
  NCPoly operator*(const Rat& c) const {
    NCPoly r;
    if (c != 0)
      for (auto& [k, v] : terms_) r.terms_[k] = v * c;
    return r;
  }

  bool operator==(const NCPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const NCPoly& o) const { return terms_ != o.terms_; }

  bool is_homogeneous() const {
    return terms_.empty() || terms_.begin()->first.first == std::prev(terms_.end())->first.first;
  }

  long degree() const {  // top weighted degree, -1 for zero
    return terms_.empty() ? -1 : std::prev(terms_.end())->first.first;
  }

  NCPoly graded_component(long d) const {
    NCPoly r;
    // x0^d is the first key of weighted degree d under descending lex.
    auto lo = terms_.lower_bound({d, Expo::unit(0, (int)d)});
    for (auto it = lo; it != terms_.end() && it->first.first == d; ++it) r.terms_[it->first] = it->second;
    return r;
  }

  std::vector<long> degrees() const {
    std::vector<long> out;
    for (auto& [k, c] : terms_)
      if (out.empty() || out.back() != k.first) out.push_back(k.first);
    return out;
  }

private:
  Terms terms_;
};

// Context for the enveloping algebra of one signature: owns the Lie data,
// the straightening cache, and every grading- or product-aware operation.
class SqAlgebra {
public:
  explicit SqAlgebra(Signature s) : lie_(s) {}

  LieAlgebra& lie() { return lie_; }
  const LieAlgebra& lie() const { return lie_; }
  const Signature& sig() const { return lie_.sig(); }
  int n() const { return lie_.n(); }
  int q() const { return lie_.q(); }

  long wdeg(const Expo& e) const {
    long d = 0;
    e.for_each([&](int i, int p) { d += (long)lie_.degree(i) * p; });
    return d;
  }

  long xdeg(const Expo& e) const {
    long d = 0;
    e.for_each([&](int i, int p) { if (i <= n()) d += p; });
    return d;
  }

  long layer(const Expo& e) const { return wdeg(e) - xdeg(e); }

  NCPoly monomial(const Expo& e, const Rat& c = Rat(1)) const {
    NCPoly p;
    p.add_term(wdeg(e), e, c);
    return p;
  }

  NCPoly generator(int i) const { return monomial(Expo::unit(i)); }

  NCPoly from_lie(const LieAlgebra::Elem& a) const {
    NCPoly p;
    for (auto& [i, c] : a) p.add_term(lie_.degree(i), Expo::unit(i), c);
    return p;
  }

  // Ordered functional calculus: commuting-model monomials become the
  // ascending PBW product, which is already a basis monomial.
  NCPoly tau(const CommPoly& f) const {
    NCPoly p;
    for (auto& [e, c] : f.terms()) {
      require_internal(e.max_index() <= n(), "tau wants a polynomial in the generators");
      p.add_term(e.total(), e, c);
    }
    return p;
  }

  // Quotient map killing every monomial with radical content; ring map.
  CommPoly epsilon(const NCPoly& f) const {
    CommPoly r;
    for (auto& [k, c] : f.terms())
      if (k.second.max_index() <= n()) r.add_term(k.second, c);
    return r;
  }

  NCPoly mul(const NCPoly& a, const NCPoly& b) {
    NCPoly r;
    for (auto& [ka, ca] : a.terms())
      for (auto& [kb, cb] : b.terms()) {
        Rat c = ca * cb;
        // Already ordered: ascending concatenation stays a basis monomial.
        if (ka.second.empty() || kb.second.empty() ||
            ka.second.max_index() <= min_index(kb.second)) {
          r.add_term(ka.first + kb.first, ka.second + kb.second, c);
          continue;
        }
        Word w = ka.second.flatten();
        Word wb = kb.second.flatten();
        w.insert(w.end(), wb.begin(), wb.end());
        for (auto& [k, v] : straighten(w)) r.add_term(k.first, k.second, v * c);
      }
    return r;
  }

  NCPoly mul(std::initializer_list<NCPoly> fs) {
    NCPoly r(Rat(1));
    for (auto& f : fs) r = mul(r, f);
    return r;
  }

  NCPoly pow(const NCPoly& a, int k) {
    require_internal(k >= 0, "negative power");
    NCPoly r(Rat(1));
    for (int i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  NCPoly commutator(const NCPoly& a, const NCPoly& b) { return mul(a, b) - mul(b, a); }

  // Diagonal product of the commuting model: plain exponent addition.
  NCPoly diag_mul(const NCPoly& a, const NCPoly& b) const {
    NCPoly r;
    for (auto& [ka, ca] : a.terms())
      for (auto& [kb, cb] : b.terms())
        r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }

  // Scaled derivative, value ((-1)^{|beta|}/beta!) d^beta on monomials.
  NCPoly dbar(const NCPoly& f, const Expo& beta) const {
    if (beta.empty()) return f;
    NCPoly r;
    Rat sign = (beta.total() % 2 == 0) ? 1 : -1;
    long bw = wdeg(beta);
    for (auto& [k, c] : f.terms()) {
      Expo rest;
      if (!k.second.try_sub(beta, rest)) continue;
      r.add_term(k.first - bw, rest, c * sign * binom_product(k.second, beta));
    }
    return r;
  }

  // Companion family with the single global minus: -(1/beta!) d^beta.
  NCPoly dpart(const NCPoly& f, const Expo& beta) const {
    if (beta.empty()) return f;
    NCPoly r;
    long bw = wdeg(beta);
    for (auto& [k, c] : f.terms()) {
      Expo rest;
      if (!k.second.try_sub(beta, rest)) continue;
      r.add_term(k.first - bw, rest, -c * binom_product(k.second, beta));
    }
    return r;
  }

  // First-order plain partial in z_i.
  NCPoly partial(const NCPoly& f, int i) const { return -dbar(f, Expo::unit(i)); }

  // Component in x-degree e and radical weighted degree m.
  NCPoly layer_component(const NCPoly& f, long e, long m) const {
    NCPoly r;
    for (auto& [k, c] : f.terms())
      if (k.first == e + m && xdeg(k.second) == e) r.add_term(k.first, k.second, c);
    return r;
  }

  // Split by radical weighted degree; pairs (m, component), m ascending.
  std::vector<std::pair<long, NCPoly>> layers(const NCPoly& f) const {
    std::map<long, NCPoly> by;
    for (auto& [k, c] : f.terms()) by[layer(k.second)].add_term(k.first, k.second, c);
    return {by.begin(), by.end()};
  }

  // Monomial frames.
  std::vector<Expo> x_monomials(int e) const { return monomials_of_degree(n() + 1, e); }

  // Radical exponent vectors of weighted degree m.
  const std::vector<Expo>& radical_monomials(int m) const {
    auto it = rad_frames_.find(m);
    if (it != rad_frames_.end()) return it->second;
    std::vector<Expo> out;
    std::vector<std::pair<int, int>> cur;
    std::function<void(int, int)> rec = [&](int idx, int rem) {
      if (rem == 0) { out.push_back(Expo(std::vector<std::pair<int,int>>(cur))); return; }
      if (idx >= lie_.dim()) return;
      int w = lie_.degree(idx);
      rec(idx + 1, rem);
      for (int k = 1; k * w <= rem; ++k) {
        cur.push_back({idx, k});
        rec(idx + 1, rem - k * w);
        cur.pop_back();
      }
    };
    if (m >= 0) rec(n() + 1, m);
    std::sort(out.begin(), out.end(), [](const Expo& a, const Expo& b) { return ExpoOrder{}(a, b); });
    return rad_frames_.emplace(m, std::move(out)).first->second;
  }

  // All PBW monomials of weighted degree d, canonical order.
  std::vector<Expo> monomials_of_wdeg(int d) const {
    std::vector<Expo> out;
    for (int m = 0; m <= d; ++m)
      for (auto& y : radical_monomials(m))
        for (auto& x : x_monomials(d - m)) out.push_back(x + y);
    std::sort(out.begin(), out.end(), [](const Expo& a, const Expo& b) { return ExpoOrder{}(a, b); });
    return out;
  }

  std::string to_string(const NCPoly& f) const {
    return to_string(f, [&](int i) { return lie_.name(i); });
  }

  std::string to_string(const NCPoly& f, const std::function<std::string(int)>& var_name) const {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [k, c] : f.terms()) {
      Rat a = c;
      if (first) {
        if (a < 0) { out += "-"; a = -a; }
      } else {
        out += (a < 0) ? " - " : " + ";
        if (a < 0) a = -a;
      }
      first = false;
      std::string mono;
      k.second.for_each([&](int i, int p) {
        if (!mono.empty()) mono += "*";
        mono += var_name(i);
        if (p > 1) mono += "^" + std::to_string(p);
      });
      if (mono.empty()) out += rat_to_string(a);
      else if (a == 1) out += mono;
      else out += rat_to_string(a) + "*" + mono;
    }
    return out;
  }

private:
  static int min_index(const Expo& e) { return e.entries().front().first; }

  // Rewrite an arbitrary factor word into the ordered basis by swapping the
  // leftmost descent; the bracket table is memoized, and so is the whole
  // rewrite of each word seen.
  const NCPoly::Terms& straighten(const Word& w) {
    auto it = straight_memo_.find(w);
    if (it != straight_memo_.end()) return it->second;
    NCPoly::Terms out;
    int k = -1;
    for (int i = 0; i + 1 < (int)w.size(); ++i)
      if (w[i] > w[i + 1]) { k = i; break; }
    if (k < 0) {
      Expo e;
      for (int i : w) e = e + Expo::unit(i);
      out[{wdeg(e), e}] = 1;
    } else {
      Word swapped = w;
      std::swap(swapped[k], swapped[k + 1]);
      for (auto& [key, c] : straighten(swapped)) {
        auto& slot = out[key];
        slot += c;
        if (slot == 0) out.erase(key);
      }
      for (auto& [u, cu] : lie_.bracket(w[k], w[k + 1])) {
        Word contracted;
        contracted.reserve(w.size() - 1);
        for (int i = 0; i < (int)w.size(); ++i) {
          if (i == k + 1) continue;
          contracted.push_back(i == k ? u : w[i]);
        }
        for (auto& [key, c] : straighten(contracted)) {
          auto& slot = out[key];
          slot += cu * c;
          if (slot == 0) out.erase(key);
        }
      }
    }
    return straight_memo_.emplace(w, std::move(out)).first->second;
  }

  LieAlgebra lie_;
  std::map<Word, NCPoly::Terms> straight_memo_;
  mutable std::map<int, std::vector<Expo>> rad_frames_;
};

}  // namespace ncproj
