#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncproj/ncpoly.hpp"

namespace ncproj {

// ad(z_s) applied i_s times, lowest index innermost (applied first).
inline LieAlgebra::Elem ad_lowest_first(LieAlgebra& lie, const Expo& i, int j) {
  LieAlgebra::Elem r{{j, Rat(1)}};
  for (auto& [s, p] : i.entries())
    for (int k = 0; k < p && !r.empty(); ++k) r = lie.bracket(LieAlgebra::Elem{{s, Rat(1)}}, r);
  return r;
}

// ad(z_s) applied i_s times, highest index innermost (applied first).
inline LieAlgebra::Elem ad_highest_first(LieAlgebra& lie, const Expo& i, int j) {
  LieAlgebra::Elem r{{j, Rat(1)}};
  auto& ent = i.entries();
  for (auto it = ent.rbegin(); it != ent.rend(); ++it)
    for (int k = 0; k < it->second && !r.empty(); ++k)
      r = lie.bracket(LieAlgebra::Elem{{it->first, Rat(1)}}, r);
  return r;
}

// i_0 + ... + i_j.
inline long head_weight(const Expo& i, int j) {
  long s = 0;
  i.for_each([&](int idx, int p) { if (idx <= j) s += p; });
  return s;
}

// i_j + ... + i_v.
inline long tail_weight(const Expo& i, int j) {
  long s = 0;
  i.for_each([&](int idx, int p) { if (idx >= j) s += p; });
  return s;
}

// Right-sided operator: a sum of terms f |-> s * ((dbar^beta f) . c) with s a
// diagonal polynomial in the generators and c a right PBW factor that is
// radical (or constant), so the two commute. Every operator built here and
// every diagonal-commutator of such operators stays in this shape.
class DiffOp {
public:
  struct Term {
    CommPoly s;
    NCPoly c;
  };

  using TermMap = std::map<Expo, std::vector<Term>, ExpoOrder>;

  DiffOp() = default;

  static DiffOp diagonal(const CommPoly& s) {
    DiffOp op;
    if (!s.is_zero()) op.add(Expo{}, s, NCPoly(Rat(1)));
    return op;
  }

  static DiffOp right_term(const Expo& beta, const NCPoly& c) {
    DiffOp op;
    op.add(beta, CommPoly(Rat(1)), c);
    return op;
  }

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  void add(const Expo& beta, const CommPoly& s, const NCPoly& c) {
    if (s.is_zero() || c.is_zero()) return;
    auto& v = terms_[beta];
    for (auto& t : v) {
      if (t.s == s) { t.c += c; prune(beta); return; }
      if (t.c == c) { t.s += s; prune(beta); return; }
    }
    v.push_back({s, c});
  }

  DiffOp& operator+=(const DiffOp& o) {
    for (auto& [b, v] : o.terms_)
      for (auto& t : v) add(b, t.s, t.c);
    return *this;
  }
  DiffOp operator+(const DiffOp& o) const { DiffOp r = *this; r += o; return r; }
  DiffOp operator-() const { return (*this) * Rat(-1); }
  DiffOp operator-(const DiffOp& o) const { return *this + (-o); }
  DiffOp operator*(const Rat& k) const {
    DiffOp r;
    if (k != 0)
      for (auto& [b, v] : terms_)
        for (auto& t : v) r.add(b, t.s * k, t.c);
    return r;
  }

  NCPoly apply(SqAlgebra& A, const NCPoly& f) const {
    NCPoly out;
    for (auto& [beta, v] : terms_) {
      NCPoly df = A.dbar(f, beta);
      if (df.is_zero()) continue;
      for (auto& t : v) out += A.diag_mul(A.tau(t.s), A.mul(df, t.c));
    }
    return out;
  }

  // The gamma-section: T_gamma = sum over beta >= gamma of the beta-term
  // reindexed at beta - gamma. Satisfies T(r * w) = sum (dbar^gamma r) * T_gamma(w)
  // for any diagonal factor r, by the Leibniz rule.
  DiffOp section(const Expo& gamma) const {
    DiffOp r;
    for (auto& [beta, v] : terms_) {
      Expo rest;
      if (!beta.try_sub(gamma, rest)) continue;
      for (auto& t : v) r.add(rest, t.s, t.c);
    }
    return r;
  }

  // Largest derivative index that has any term, componentwise hull.
  Expo index_hull() const {
    std::map<int, int> hi;
    for (auto& [beta, v] : terms_)
      beta.for_each([&](int i, int p) { hi[i] = std::max(hi[i], p); });
    std::vector<std::pair<int, int>> e(hi.begin(), hi.end());
    return Expo(std::move(e));
  }

  DiffOp compose(SqAlgebra& A, const DiffOp& o) const {
    DiffOp r;
    for (auto& [beta, va] : terms_)
      for (auto& ta : va)
        for (auto& [delta, vb] : o.terms_)
          for (auto& tb : vb)
            compose_term(A, beta, ta, delta, tb, r);
    return r;
  }

  DiffOp commutator(SqAlgebra& A, const DiffOp& o) const {
    return compose(A, o) - o.compose(A, *this);
  }

  // True when every term has constant diagonal part; such operators can be
  // normalized to one right coefficient per derivative index.
  bool is_pure() const {
    for (auto& [b, v] : terms_)
      for (auto& t : v)
        if (!t.s.is_constant()) return false;
    return true;
  }

  // Canonical pure form: beta -> merged right coefficient.
  std::map<Expo, NCPoly, ExpoOrder> pure_form() const {
    std::map<Expo, NCPoly, ExpoOrder> out;
    for (auto& [b, v] : terms_) {
      NCPoly c;
      for (auto& t : v) {
        require_internal(t.s.is_constant(), "operator has a non-constant diagonal part");
        c += t.c * t.s.constant_term();
      }
      if (!c.is_zero()) out[b] = std::move(c);
    }
    return out;
  }

  std::string to_string(const SqAlgebra& A) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [beta, v] : terms_) {
      for (auto& t : v) {
        if (!first) out += " + ";
        first = false;
        std::string piece;
        if (!t.s.is_constant() || t.s.constant_term() != 1) {
          piece += "diag(" + t.s.to_string([&](int i) { return A.lie().name(i); }) + ")*";
        }
        piece += "R(" + A.to_string(t.c) + ")";
        if (!beta.empty()) {
          std::string mono;
          beta.for_each([&](int i, int p) {
            if (!mono.empty()) mono += "*";
            mono += A.lie().name(i);
            if (p > 1) mono += "^" + std::to_string(p);
          });
          piece += "*dbar{" + mono + "}";
        }
        out += piece;
      }
    }
    return out;
  }

private:
  void prune(const Expo& beta) {
    auto it = terms_.find(beta);
    if (it == terms_.end()) return;
    auto& v = it->second;
    v.erase(std::remove_if(v.begin(), v.end(),
                           [](const Term& t) { return t.s.is_zero() || t.c.is_zero(); }),
            v.end());
    if (v.empty()) terms_.erase(it);
  }

  // (s R(c) dbar^beta) after (t R(c') dbar^delta): push dbar^beta through the
  // diagonal t and the right factor c' by the Leibniz rule, then merge the
  // scaled derivative powers.
  static void compose_term(SqAlgebra& A, const Expo& beta, const Term& ta, const Expo& delta,
                           const Term& tb, DiffOp& out) {
    for (auto& gamma : sub_indices(beta)) {
      CommPoly tg = tb.s.dbar(gamma);
      if (tg.is_zero()) continue;
      Expo b1;
      require_internal(beta.try_sub(gamma, b1), "sub_indices out of range");
      for (auto& j : sub_indices(b1)) {
        NCPoly cj = A.dbar(tb.c, j);
        if (cj.is_zero()) continue;
        Expo b2;
        require_internal(b1.try_sub(j, b2), "sub_indices out of range");
        Expo idx = b2 + delta;
        Rat scale = binom_product(idx, delta);
        out.add(idx, ta.s * tg, A.mul(cj, ta.c) * scale);
      }
    }
  }

  TermMap terms_;
};

// Left-sided companion family: f |-> sum c_i . (dpart^i f) with left PBW
// coefficients and the single-minus derivative scaling.
class LeftDiffOp {
public:
  using TermMap = std::map<Expo, NCPoly, ExpoOrder>;

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  void add(const Expo& i, const NCPoly& c) {
    if (c.is_zero()) return;
    auto& slot = terms_[i];
    slot += c;
    if (slot.is_zero()) terms_.erase(i);
  }

  NCPoly apply(SqAlgebra& A, const NCPoly& f) const {
    NCPoly out;
    for (auto& [i, c] : terms_) {
      NCPoly df = A.dpart(f, i);
      if (!df.is_zero()) out += A.mul(c, df);
    }
    return out;
  }

  std::string to_string(const SqAlgebra& A) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [i, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      std::string mono;
      i.for_each([&](int idx, int p) {
        if (!mono.empty()) mono += "*";
        mono += A.lie().name(idx);
        if (p > 1) mono += "^" + std::to_string(p);
      });
      out += "L(" + A.to_string(c) + ")";
      if (!mono.empty()) out += "*d{" + mono + "}";
    }
    return out;
  }

private:
  TermMap terms_;
};

// Multi-indices of weighted degree in [wlo, whi] over the whole basis.
inline std::vector<Expo> derivative_indices(const SqAlgebra& A, int wlo, int whi) {
  std::vector<Expo> out;
  for (int w = wlo; w <= whi; ++w)
    for (auto& e : A.monomials_of_wdeg(w)) out.push_back(e);
  return out;
}

// The raising correction of left multiplication: L_j = z_j + Delta_j.
inline DiffOp build_delta(SqAlgebra& A, int j) {
  DiffOp op;
  int ej = A.lie().degree(j);
  for (auto& i : derivative_indices(A, 1, A.q() - ej)) {
    if (head_weight(i, j) == 0) continue;
    NCPoly c = A.from_lie(ad_lowest_first(A.lie(), i, j));
    if (!c.is_zero()) op.add(i, CommPoly(Rat(1)), c);
  }
  return op;
}

// The raising correction of right multiplication: R_j = z_j + Nabla_j.
inline DiffOp build_nabla(SqAlgebra& A, int j) {
  DiffOp op;
  int ej = A.lie().degree(j);
  for (auto& i : derivative_indices(A, 1, A.q() - ej)) {
    if (head_weight(i, j) != 0) continue;
    NCPoly c = A.from_lie(ad_lowest_first(A.lie(), i, j));
    if (!c.is_zero()) op.add(i, CommPoly(Rat(-1)), c);
  }
  return op;
}

// Slice with exactly k derivatives in generator directions.
inline DiffOp build_delta_jk(SqAlgebra& A, int j, int k) {
  DiffOp op;
  int ej = A.lie().degree(j);
  for (auto& i : derivative_indices(A, 1, A.q() - ej)) {
    if (head_weight(i, j) == 0 || A.xdeg(i) != k) continue;
    NCPoly c = A.from_lie(ad_lowest_first(A.lie(), i, j));
    if (!c.is_zero()) op.add(i, CommPoly(Rat(1)), c);
  }
  return op;
}

inline DiffOp build_nabla_jk(SqAlgebra& A, int j, int k) {
  DiffOp op;
  int ej = A.lie().degree(j);
  for (auto& i : derivative_indices(A, 1, A.q() - ej)) {
    if (head_weight(i, j) != 0 || A.xdeg(i) != k) continue;
    NCPoly c = A.from_lie(ad_lowest_first(A.lie(), i, j));
    if (!c.is_zero()) op.add(i, CommPoly(Rat(-1)), c);
  }
  return op;
}

// Closed form of the generator-direction shift of Delta_j. gamma must be
// supported on generator indices.
inline DiffOp build_delta_shift(SqAlgebra& A, int j, const Expo& gamma) {
  require_internal(gamma.max_index() <= A.n(), "shift index must use generator directions");
  DiffOp op;
  int ej = A.lie().degree(j);
  int room = A.q() - ej - (int)gamma.total();
  if (room < 0) return op;
  for (auto& b : derivative_indices(A, 0, room)) {
    Expo idx = b + gamma;
    if (head_weight(idx, j) == 0) continue;
    NCPoly c = A.from_lie(ad_lowest_first(A.lie(), idx, j));
    if (!c.is_zero()) op.add(b, CommPoly(Rat(1)), c);
  }
  return op;
}

// Closed form of the shift of Nabla_j; the leading minus sign is part of the
// operator and survives the shift. Zero whenever gamma meets index <= j.
inline DiffOp build_nabla_shift(SqAlgebra& A, int j, const Expo& gamma) {
  require_internal(gamma.max_index() <= A.n(), "shift index must use generator directions");
  DiffOp op;
  if (head_weight(gamma, j) > 0) return op;
  int ej = A.lie().degree(j);
  int room = A.q() - ej - (int)gamma.total();
  if (room < 0) return op;
  for (auto& b : derivative_indices(A, 0, room)) {
    if (head_weight(b, j) != 0) continue;
    if (b.empty() && gamma.empty()) continue;
    Expo idx = b + gamma;
    NCPoly c = A.from_lie(ad_lowest_first(A.lie(), idx, j));
    if (!c.is_zero()) op.add(b, CommPoly(Rat(-1)), c);
  }
  return op;
}

// Iterated diagonal commutator ad(x_i)^l applied to an operator.
inline DiffOp diag_commutator_power(SqAlgebra& A, int i, int l, DiffOp op) {
  DiffOp xi = DiffOp::diagonal(CommPoly::variable(i));
  for (int k = 0; k < l; ++k) op = xi.commutator(A, op);
  return op;
}

// Degree-raising tower: the l-fold x_i-shift of Delta_i. Both the closed
// form and the iterated-commutator form are computed and must agree.
inline DiffOp build_D(SqAlgebra& A, int i, int l) {
  require_internal(i <= A.n(), "tower index must be a generator");
  DiffOp closed = build_delta_shift(A, i, Expo::unit(i, l));
  DiffOp iterated = diag_commutator_power(A, i, l, build_delta(A, i));
  require_internal(closed.pure_form() == iterated.pure_form(),
                   "shift formula disagrees with iterated commutator");
  return closed;
}

inline LeftDiffOp build_nabla_prime(SqAlgebra& A, int j) {
  LeftDiffOp op;
  int ej = A.lie().degree(j);
  for (auto& i : derivative_indices(A, 1, A.q() - ej)) {
    if (tail_weight(i, j) == 0) continue;
    NCPoly c = A.from_lie(ad_highest_first(A.lie(), i, j));
    if (!c.is_zero()) op.add(i, -c);
  }
  return op;
}

// pure_form needs operator== on the mapped NCPoly values; map equality uses it.
inline bool equal_pure(const DiffOp& a, const DiffOp& b) { return a.pure_form() == b.pure_form(); }

// Action comparison on all basis monomials of weighted degree <= bound.
struct ActionMismatch {
  Expo monomial;
  NCPoly lhs, rhs;
};

template <typename F, typename G>
std::optional<ActionMismatch> first_action_mismatch(SqAlgebra& A, F&& lhs, G&& rhs, int bound) {
  for (int d = 0; d <= bound; ++d)
    for (auto& e : A.monomials_of_wdeg(d)) {
      NCPoly m = A.monomial(e);
      NCPoly l = lhs(m), r = rhs(m);
      if (!(l == r)) return ActionMismatch{e, std::move(l), std::move(r)};
    }
  return std::nullopt;
}

}  // namespace ncproj
