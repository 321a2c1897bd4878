#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncproj {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exit-code-3 class: a broken internal invariant, not a user error.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require_internal(bool ok, const std::string& msg) {
  if (!ok) throw InternalError(msg);
}

// Exit-code-2 class: malformed or out-of-contract user input.
inline void require_input(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

inline Int binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long i = 0; i < k; ++i) { r *= (n - i); r /= (i + 1); }
  return r;
}

inline Int factorial(long n) {
  Int r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

// Sparse exponent vector over basis indices, sorted by index, exponents > 0.
// Used for PBW monomials, derivative multi-indices, and radical multi-indices.
class Expo {
public:
  using Pair = std::pair<int, int>;

  Expo() = default;
  explicit Expo(std::vector<Pair> entries) : ent_(std::move(entries)) { normalize(); }

  static Expo unit(int index, int power = 1) {
    Expo e;
    if (power != 0) e.ent_.push_back({index, power});
    return e;
  }

  const std::vector<Pair>& entries() const { return ent_; }
  bool empty() const { return ent_.empty(); }
  int max_index() const { return ent_.empty() ? -1 : ent_.back().first; }

  int at(int index) const {
    auto it = std::lower_bound(ent_.begin(), ent_.end(), Pair{index, 0},
                               [](const Pair& a, const Pair& b) { return a.first < b.first; });
    return (it != ent_.end() && it->first == index) ? it->second : 0;
  }

  long total() const {
    long s = 0;
    for (auto& [i, p] : ent_) s += p;
    return s;
  }

  Expo operator+(const Expo& o) const {
    Expo r;
    auto a = ent_.begin(), b = o.ent_.begin();
    while (a != ent_.end() || b != o.ent_.end()) {
      if (b == o.ent_.end() || (a != ent_.end() && a->first < b->first)) r.ent_.push_back(*a++);
      else if (a == ent_.end() || b->first < a->first) r.ent_.push_back(*b++);
      else { r.ent_.push_back({a->first, a->second + b->second}); ++a; ++b; }
    }
    return r;
  }

  // Componentwise subtraction; false if any exponent would go negative.
  bool try_sub(const Expo& o, Expo& out) const {
    out.ent_.clear();
    auto a = ent_.begin(), b = o.ent_.begin();
    while (a != ent_.end() || b != o.ent_.end()) {
      if (b == o.ent_.end() || (a != ent_.end() && a->first < b->first)) out.ent_.push_back(*a++);
      else if (a == ent_.end() || b->first < a->first) return false;
      else {
        int d = a->second - b->second;
        if (d < 0) return false;
        if (d > 0) out.ent_.push_back({a->first, d});
        ++a; ++b;
      }
    }
    return true;
  }

  bool contains(const Expo& o) const { Expo t; return try_sub(o, t); }

  // Dense lexicographic comparison from index 0 upward.
  int cmp_lex(const Expo& o) const {
    auto a = ent_.begin(), b = o.ent_.begin();
    while (a != ent_.end() || b != o.ent_.end()) {
      int ia = (a != ent_.end()) ? a->first : INT32_MAX;
      int ib = (b != o.ent_.end()) ? b->first : INT32_MAX;
      if (ia < ib) return 1;       // this has a positive exponent where o has 0
      if (ib < ia) return -1;
      if (a->second != b->second) return a->second < b->second ? -1 : 1;
      ++a; ++b;
    }
    return 0;
  }

  bool operator==(const Expo& o) const { return ent_ == o.ent_; }
  bool operator!=(const Expo& o) const { return ent_ != o.ent_; }

  // Split at a boundary index: entries with index < k and the rest.
  std::pair<Expo, Expo> split_below(int k) const {
    Expo lo, hi;
    for (auto& e : ent_) (e.first < k ? lo : hi).ent_.push_back(e);
    return {lo, hi};
  }

  // Repeated-letter expansion, lowest index first: (0:2, 3:1) -> [0,0,3].
  std::vector<int> flatten() const {
    std::vector<int> r;
    for (auto& [i, p] : ent_)
      for (int k = 0; k < p; ++k) r.push_back(i);
    return r;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (auto& [i, p] : ent_) f(i, p);
  }

private:
  void normalize() {
    std::sort(ent_.begin(), ent_.end());
    std::vector<Pair> out;
    for (auto& e : ent_) {
      if (e.second == 0) continue;
      require_internal(e.second > 0, "negative exponent in Expo");
      if (!out.empty() && out.back().first == e.first) out.back().second += e.second;
      else out.push_back(e);
    }
    ent_ = std::move(out);
  }

  std::vector<Pair> ent_;
};

// Product of binomial coefficients C(gamma_s, beta_s); 0 if beta !<= gamma.
inline Rat binom_product(const Expo& gamma, const Expo& beta) {
  Rat r = 1;
  for (auto& [i, p] : beta.entries()) {
    Int c = binom(gamma.at(i), p);
    if (c == 0) return 0;
    r *= Rat(c);
  }
  return r;
}

// Enumerate all multi-indices beta <= gamma componentwise (including 0 and gamma).
inline std::vector<Expo> sub_indices(const Expo& gamma) {
  std::vector<Expo> out{Expo{}};
  for (auto& [i, p] : gamma.entries()) {
    std::vector<Expo> next;
    next.reserve(out.size() * (p + 1));
    for (auto& e : out)
      for (int k = 0; k <= p; ++k)
        next.push_back(k ? e + Expo::unit(i, k) : e);
    out = std::move(next);
  }
  return out;
}

}  // namespace ncproj
