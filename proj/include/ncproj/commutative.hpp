#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncproj/linalg.hpp"
#include "ncproj/util.hpp"

namespace ncproj {

// Canonical term order: total degree, then descending dense lex on exponents
// (x0^2 before x0 x1 before x1^2). All printing and pivoting uses it.
struct ExpoOrder {
  bool operator()(const Expo& a, const Expo& b) const {
    long da = a.total(), db = b.total();
    if (da != db) return da < db;
    return a.cmp_lex(b) > 0;
  }
};

// Polynomial in the commuting coordinate model, exponents over generator
// indices 0..n only.
class CommPoly {
public:
  using Terms = std::map<Expo, Rat, ExpoOrder>;

  CommPoly() = default;
  explicit CommPoly(const Rat& c) {
    if (c != 0) terms_[Expo{}] = c;
  }
  static CommPoly monomial(const Expo& e, const Rat& c = Rat(1)) {
    CommPoly p;
    if (c != 0) p.terms_[e] = c;
    return p;
  }
  static CommPoly variable(int i) { return monomial(Expo::unit(i)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

  Rat constant_term() const {
    auto it = terms_.find(Expo{});
    return it == terms_.end() ? Rat(0) : it->second;
  }

  long degree() const {
    long d = -1;
    for (auto& [e, c] : terms_) d = std::max(d, e.total());
    return d;
  }

  bool is_homogeneous() const {
    long d = -2;
    for (auto& [e, c] : terms_) {
      if (d == -2) d = e.total();
      else if (e.total() != d) return false;
    }
    return true;
  }

  CommPoly homogeneous_part(long d) const {
    CommPoly r;
    for (auto& [e, c] : terms_)
      if (e.total() == d) r.terms_[e] = c;
    return r;
  }

  void add_term(const Expo& e, const Rat& c) {
    if (c == 0) return;
    Rat v = terms_[e] += c;
    if (v == 0) terms_.erase(e);
  }

  CommPoly& operator+=(const CommPoly& o) {
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  CommPoly& operator-=(const CommPoly& o) {
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  CommPoly operator+(const CommPoly& o) const { CommPoly r = *this; r += o; return r; }
  CommPoly operator-(const CommPoly& o) const { CommPoly r = *this; r -= o; return r; }
  CommPoly operator-() const { CommPoly r; for (auto& [e, c] : terms_) r.terms_[e] = -c; return r; }

  CommPoly operator*(const CommPoly& o) const {
    CommPoly r;
    for (auto& [ea, ca] : terms_)
      for (auto& [eb, cb] : o.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  CommPoly operator*(const Rat& c) const {
    CommPoly r;
    if (c != 0)
      for (auto& [e, v] : terms_) r.terms_[e] = v * c;
    return r;
  }

  CommPoly pow(int k) const {
    require_internal(k >= 0, "negative power of a polynomial");
    CommPoly r(Rat(1));
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
  }

  // Plain partial derivative in x_i.
  CommPoly derivative(int i) const {
    CommPoly r;
    for (auto& [e, c] : terms_) {
      int p = e.at(i);
      if (p == 0) continue;
      Expo f;
      require_internal(e.try_sub(Expo::unit(i), f), "derivative exponent underflow");
      r.add_term(f, c * p);
    }
    return r;
  }

  // Scaled derivative family used everywhere downstream:
  // value ((-1)^{|beta|} / beta!) * d^beta, acting monomial-wise through
  // binomial coefficients.
  CommPoly dbar(const Expo& beta) const {
    CommPoly r;
    Rat sign = (beta.total() % 2 == 0) ? 1 : -1;
    for (auto& [e, c] : terms_) {
      Expo f;
      if (!e.try_sub(beta, f)) continue;
      r.add_term(f, c * sign * binom_product(e, beta));
    }
    return r;
  }

  bool operator==(const CommPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const CommPoly& o) const { return terms_ != o.terms_; }

  // Leading (last in canonical order) term.
  std::pair<Expo, Rat> leading() const {
    require_internal(!terms_.empty(), "leading term of zero");
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
  }

  // Monic w.r.t. the canonical order; returns the removed leading coefficient.
  Rat make_monic() {
    Rat lc = leading().second;
    for (auto& [e, c] : terms_) c /= lc;
    return lc;
  }

  // Exact division: quotient if divisor divides this, nullopt otherwise.
  std::optional<CommPoly> divide_exact(const CommPoly& g) const {
    require_internal(!g.is_zero(), "division by zero polynomial");
    CommPoly r = *this, quo;
    auto [ge, gc] = g.leading();
    while (!r.is_zero()) {
      auto [re, rc] = r.leading();
      Expo m;
      if (!re.try_sub(ge, m)) return std::nullopt;
      Rat c = rc / gc;
      quo.add_term(m, c);
      r -= g * CommPoly::monomial(m, c);
    }
    return quo;
  }

  std::string to_string(const std::function<std::string(int)>& var_name) const;

private:
  Terms terms_;
};

// All exponent vectors over variables {0..nvars-1} of total degree exactly d.
inline std::vector<Expo> monomials_of_degree(int nvars, int d) {
  std::vector<Expo> out;
  std::vector<std::pair<int, int>> cur;
  std::function<void(int, int)> rec = [&](int var, int rem) {
    if (var == nvars - 1) {
      auto c = cur;
      if (rem > 0) c.push_back({var, rem});
      out.push_back(Expo(std::move(c)));
      return;
    }
    for (int k = rem; k >= 0; --k) {
      if (k > 0) cur.push_back({var, k});
      rec(var + 1, rem - k);
      if (k > 0) cur.pop_back();
    }
  };
  if (d < 0) return out;
  if (nvars == 0) {
    if (d == 0) out.push_back(Expo{});
    return out;
  }
  rec(0, d);
  std::sort(out.begin(), out.end(), [](const Expo& a, const Expo& b) { return ExpoOrder{}(a, b); });
  return out;
}

// Homogeneous ideal of the coordinate ring, handled degree by degree.
class CommIdeal {
public:
  CommIdeal(int nvars, std::vector<CommPoly> gens) : nvars_(nvars) {
    for (auto& g : gens) {
      if (g.is_zero()) continue;
      require_internal(g.is_homogeneous(), "ideal generators must be homogeneous");
      gens_.push_back(std::move(g));
    }
  }

  int nvars() const { return nvars_; }
  const std::vector<CommPoly>& gens() const { return gens_; }
  bool is_zero_ideal() const { return gens_.empty(); }

  // Span of the ideal in exact degree d, with the monomial frame used.
  struct DegreeSpan {
    std::vector<Expo> frame;
    std::map<Expo, int, ExpoOrder> col;
    LinSpan span;
  };

  const DegreeSpan& span_in_degree(int d) const {
    auto it = spans_.find(d);
    if (it != spans_.end()) return it->second;
    DegreeSpan s{monomials_of_degree(nvars_, d), {}, LinSpan(0)};
    for (int j = 0; j < (int)s.frame.size(); ++j) s.col[s.frame[j]] = j;
    s.span = LinSpan((int)s.frame.size());
    for (auto& g : gens_) {
      long gd = g.degree();
      if (gd > d) continue;
      for (auto& m : monomials_of_degree(nvars_, (int)(d - gd)))
        s.span.insert(to_vec(g * CommPoly::monomial(m), s));
    }
    return spans_.emplace(d, std::move(s)).first->second;
  }

  long hilbert(int d) const {
    if (d < 0) return 0;
    const DegreeSpan& s = span_in_degree(d);
    return (long)s.frame.size() - s.span.rank();
  }

  bool contains(const CommPoly& f) const {
    if (f.is_zero()) return true;
    for (long d = 0; d <= f.degree(); ++d) {
      CommPoly h = f.homogeneous_part(d);
      if (h.is_zero()) continue;
      const DegreeSpan& s = span_in_degree((int)d);
      if (!s.span.contains(to_vec(h, s))) return false;
    }
    return true;
  }

  static std::vector<Rat> to_vec(const CommPoly& f, const DegreeSpan& s) {
    std::vector<Rat> v(s.frame.size(), Rat(0));
    for (auto& [e, c] : f.terms()) {
      auto it = s.col.find(e);
      require_internal(it != s.col.end(), "monomial outside degree frame");
      v[it->second] = c;
    }
    return v;
  }

private:
  int nvars_;
  std::vector<CommPoly> gens_;
  mutable std::map<int, DegreeSpan> spans_;
};

inline std::string CommPoly::to_string(const std::function<std::string(int)>& var_name) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [e, c] : terms_) {
    Rat a = c;
    if (first) {
      if (a < 0) { out += "-"; a = -a; }
    } else {
      out += (a < 0) ? " - " : " + ";
      if (a < 0) a = -a;
    }
    first = false;
    std::string mono;
    e.for_each([&](int i, int p) {
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

}  // namespace ncproj
