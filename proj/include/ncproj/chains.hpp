#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncproj/commutative.hpp"
#include "ncproj/diffop.hpp"
#include "ncproj/linalg.hpp"
#include "ncproj/ncpoly.hpp"

namespace ncproj {

// Splits a PBW exponent into its x part and its radical part.
inline std::pair<Expo, Expo> split_xy(const SqAlgebra& A, const Expo& e) {
  return e.split_below(A.n() + 1);
}

// The S-submodule of S (x) R_q^m<y> spanned by the listed generators, where S
// acts through the diagonal product. Layers are indexed by the radical weight
// m. When every generator sits on a single radical monomial the module splits
// into one commutative coefficient ideal per slot, which keeps the per-degree
// row reduction small; mixed generators fall back to one span over the whole
// degree frame. Both paths are exact and deterministic.
class GradedSubmodule {
public:
  GradedSubmodule(const SqAlgebra& A, int m, std::vector<NCPoly> gens) : A_(&A), m_(m) {
    for (auto& g : gens) {
      if (g.is_zero()) continue;
      require_input(g.is_homogeneous(), "layer generators must be homogeneous");
      for (auto& [k, c] : g.terms())
        require_input(A.layer(k.second) == m, "layer generator outside its radical weight");
      gens_.push_back(std::move(g));
    }
    std::map<Expo, std::vector<CommPoly>, ExpoOrder> coeffs;
    for (const NCPoly& g : gens_) {
      std::optional<Expo> slot;
      CommPoly coeff;
      for (auto& [k, c] : g.terms()) {
        auto [u, r] = split_xy(A, k.second);
        if (!slot) slot = r;
        else if (!(*slot == r)) { split_ = false; break; }
        coeff.add_term(u, c);
      }
      if (!split_) break;
      coeffs[*slot].push_back(std::move(coeff));
    }
    if (split_)
      for (auto& [r, cs] : coeffs) slots_.emplace(r, CommIdeal(A.n() + 1, std::move(cs)));
  }

  int layer() const { return m_; }
  const std::vector<NCPoly>& generators() const { return gens_; }

  // Slotwise view, available when every generator keeps to one radical slot.
  // Slots without generators carry the zero ideal and are simply absent.
  bool splits_by_slot() const { return split_; }
  const std::map<Expo, CommIdeal, ExpoOrder>& slot_ideals() const {
    require_input(split_, "layer generators mix radical slots");
    return slots_;
  }

  bool contains(const NCPoly& f) const {
    if (f.is_zero()) return true;
    for (auto& [k, c] : f.terms())
      if (A_->layer(k.second) != m_) return false;
    if (split_) {
      std::map<Expo, CommPoly, ExpoOrder> parts;
      for (auto& [k, c] : f.terms()) {
        auto [u, r] = split_xy(*A_, k.second);
        parts[r].add_term(u, c);
      }
      for (auto& [r, coeff] : parts) {
        auto it = slots_.find(r);
        if (it == slots_.end()) return false;
        if (!it->second.contains(coeff)) return false;
      }
      return true;
    }
    for (long d : f.degrees()) {
      const DegreeSpan& s = span_in_degree((int)d);
      if (!s.span.contains(to_vec(f.graded_component(d), s))) return false;
    }
    return true;
  }

  std::vector<NCPoly> spanning_elements(int d) const {
    std::vector<NCPoly> out;
    if (d < m_) return out;
    if (split_) {
      for (auto& [r, ideal] : slots_) {
        const CommIdeal::DegreeSpan& s = ideal.span_in_degree(d - m_);
        for (auto& [p, row] : s.span.rows()) {
          NCPoly f;
          for (int c = 0; c < (int)row.size(); ++c)
            if (row[c] != 0) f.add_term(d, s.frame[c] + r, row[c]);
          out.push_back(std::move(f));
        }
      }
      return out;
    }
    const DegreeSpan& s = span_in_degree(d);
    for (auto& [p, row] : s.span.rows()) {
      NCPoly f;
      for (int c = 0; c < (int)row.size(); ++c)
        if (row[c] != 0) f.add_term(d, s.frame[c], row[c]);
      out.push_back(std::move(f));
    }
    return out;
  }

  long rank_in_degree(int d) const {
    if (d < m_) return 0;
    if (split_) {
      long r = 0;
      for (auto& [slot, ideal] : slots_) r += ideal.span_in_degree(d - m_).span.rank();
      return r;
    }
    return span_in_degree(d).span.rank();
  }

  long codim_in_degree(int d) const {
    if (d < m_) return 0;
    long total = (long)A_->radical_monomials(m_).size() * (long)A_->x_monomials(d - m_).size();
    return total - rank_in_degree(d);
  }

private:
  struct DegreeSpan {
    std::vector<Expo> frame;
    std::map<Expo, int, ExpoOrder> col;
    LinSpan span{0};
  };

  const DegreeSpan& span_in_degree(int d) const {
    auto it = spans_.find(d);
    if (it != spans_.end()) return it->second;
    DegreeSpan s;
    if (d >= m_) {
      for (const Expo& u : A_->x_monomials(d - m_))
        for (const Expo& r : A_->radical_monomials(m_)) s.frame.push_back(u + r);
      std::sort(s.frame.begin(), s.frame.end(),
                [](const Expo& a, const Expo& b) { return ExpoOrder{}(a, b); });
    }
    for (int c = 0; c < (int)s.frame.size(); ++c) s.col[s.frame[c]] = c;
    s.span = LinSpan((int)s.frame.size());
    for (const NCPoly& g : gens_) {
      long gd = g.degree();
      if (gd > d) continue;
      for (const Expo& u : A_->x_monomials((int)(d - gd)))
        s.span.insert(to_vec(A_->diag_mul(A_->monomial(u), g), s));
    }
    return spans_.emplace(d, std::move(s)).first->second;
  }

  static std::vector<Rat> to_vec(const NCPoly& f, const DegreeSpan& s) {
    std::vector<Rat> v(s.frame.size(), Rat(0));
    for (auto& [k, c] : f.terms()) {
      auto it = s.col.find(k.second);
      require_internal(it != s.col.end(), "monomial outside the layer frame");
      v[it->second] = c;
    }
    return v;
  }

  const SqAlgebra* A_;
  int m_;
  std::vector<NCPoly> gens_;
  bool split_ = true;
  std::map<Expo, CommIdeal, ExpoOrder> slots_;
  mutable std::map<int, DegreeSpan> spans_;
};

inline bool membership(const NCPoly& f, const GradedSubmodule& module, int d) {
  require_input(f.is_zero() || (f.is_homogeneous() && f.degree() == d),
                "membership expects a homogeneous element of the stated degree");
  return module.contains(f);
}

// Coefficient ideal attached to the radical monomials supported on the listed
// slots. Layers past the explicit ones are assembled from these patterns; a
// monomial claimed by no tower falls back to the rest rule.
struct TowerPattern {
  std::vector<CommPoly> ideal_gens;
  std::vector<int> vars;

  bool claims(const Expo& mono) const {
    bool ok = true;
    mono.for_each([&](int i, int) {
      if (std::find(vars.begin(), vars.end(), i) == vars.end()) ok = false;
    });
    return ok;
  }
};

enum class TailRule { Zero, Full, Towers };

class ChainSpec {
public:
  ChainSpec(SqAlgebra& A, std::map<int, std::vector<NCPoly>> layers, TailRule tail = TailRule::Zero,
            std::vector<TowerPattern> towers = {}, bool rest_full = true)
      : A_(&A), explicit_(std::move(layers)), tail_(tail), towers_(std::move(towers)), rest_full_(rest_full) {
    for (auto& [m, gens] : explicit_) {
      require_input(m >= 0, "layer indices are radical weights");
      explicit_max_ = std::max(explicit_max_, m);
    }
    require_input(tail_ == TailRule::Towers || towers_.empty(),
                  "tower patterns need the towers tail rule");
  }

  SqAlgebra& algebra() const { return *A_; }
  int explicit_max() const { return explicit_max_; }
  TailRule tail() const { return tail_; }
  const std::map<int, std::vector<NCPoly>>& explicit_layers() const { return explicit_; }
  const std::vector<TowerPattern>& towers() const { return towers_; }
  bool rest_full() const { return rest_full_; }

  const GradedSubmodule& layer(int m) const {
    auto it = cache_.find(m);
    if (it != cache_.end()) return *it->second;
    std::vector<NCPoly> gens;
    auto ex = explicit_.find(m);
    if (ex != explicit_.end()) gens = ex->second;
    else if (m > explicit_max_) gens = tail_generators(m);
    auto mod = std::make_unique<GradedSubmodule>(*A_, m, std::move(gens));
    return *cache_.emplace(m, std::move(mod)).first->second;
  }

  // Largest listed generator degree; drives the bound precondition of the
  // verification passes.
  int max_generator_degree() const {
    long d = 0;
    for (auto& [m, gens] : explicit_)
      for (auto& g : gens) d = std::max(d, g.degree());
    for (auto& t : towers_)
      for (auto& g : t.ideal_gens) d = std::max(d, g.degree());
    return (int)d;
  }

private:
  std::vector<NCPoly> tail_generators(int m) const {
    std::vector<NCPoly> gens;
    switch (tail_) {
      case TailRule::Zero:
        break;
      case TailRule::Full:
        for (const Expo& r : A_->radical_monomials(m)) gens.push_back(A_->monomial(r));
        break;
      case TailRule::Towers:
        for (const Expo& r : A_->radical_monomials(m)) {
          bool claimed = false;
          for (auto& t : towers_)
            if (t.claims(r)) {
              claimed = true;
              for (auto& g : t.ideal_gens)
                gens.push_back(A_->diag_mul(A_->tau(g), A_->monomial(r)));
            }
          if (!claimed && rest_full_) gens.push_back(A_->monomial(r));
        }
        break;
    }
    return gens;
  }

  SqAlgebra* A_;
  std::map<int, std::vector<NCPoly>> explicit_;
  TailRule tail_;
  std::vector<TowerPattern> towers_;
  bool rest_full_;
  int explicit_max_ = -1;
  mutable std::map<int, std::unique_ptr<GradedSubmodule>> cache_;
};

struct CheckWitness {
  std::string op;
  int source_layer = 0;
  int target_layer = 0;
  int degree = 0;  // total weighted degree of the source element
  NCPoly element;
  NCPoly image;
};

struct VerificationReport {
  std::string predicate;
  int bound = 0;
  enum class Status { Pass, PassUpToBound, Fail } status = Status::PassUpToBound;
  std::optional<CheckWitness> witness;
  std::string detail;

  bool passed() const { return status != Status::Fail; }
};

namespace detail {

inline VerificationReport fail_report(const ChainSpec& C, const std::string& predicate, int D,
                                      CheckWitness w) {
  SqAlgebra& A = C.algebra();
  VerificationReport rep{predicate, D, VerificationReport::Status::Fail};
  rep.detail = w.op + " maps " + A.to_string(w.element) + " (layer " +
               std::to_string(w.source_layer) + ", degree " + std::to_string(w.degree) +
               ") to " + A.to_string(w.image) + ", not in layer " + std::to_string(w.target_layer);
  rep.witness = std::move(w);
  return rep;
}

inline VerificationReport pass_report(const std::string& predicate, int D) {
  VerificationReport rep{predicate, D, VerificationReport::Status::PassUpToBound};
  rep.detail = "holds on all spanning elements up to total degree " + std::to_string(D);
  return rep;
}

}  // namespace detail

// Diagonal stability of the layers: the x-slots must keep each layer in place
// and every radical slot must raise it by its own weight.
inline VerificationReport is_chain(const ChainSpec& C, int D) {
  SqAlgebra& A = C.algebra();
  require_input(D >= C.max_generator_degree() + A.q(),
                "degree bound too small for the listed generators");
  for (int d = 0; d <= D; ++d)
    for (int m = 0; m <= d; ++m)
      for (const NCPoly& w : C.layer(m).spanning_elements(d))
        for (int j = 0; j < A.lie().dim(); ++j) {
          NCPoly img = A.diag_mul(A.generator(j), w);
          if (img.is_zero()) continue;
          int tm = m + (A.lie().is_radical(j) ? A.lie().degree(j) : 0);
          if (!C.layer(tm).contains(img))
            return detail::fail_report(C, "is_chain", D,
                                       {"diagonal " + A.lie().name(j), m, tm, d, w, img});
        }
  return detail::pass_report("is_chain", D);
}

// Invariance under one bidegree slice of the correction operators: the pieces
// of Delta_j and Nabla_j that consume exactly k generator derivatives must
// send layer m into layer m + e_j + k.
inline VerificationReport slice_invariance(const ChainSpec& C, int j, int k, int D) {
  SqAlgebra& A = C.algebra();
  int ej = A.lie().degree(j);
  DiffOp delta = build_delta_jk(A, j, k);
  DiffOp nabla = build_nabla_jk(A, j, k);
  std::string dl = "Delta[" + std::to_string(j) + "," + std::to_string(k) + "]";
  std::string nl = "Nabla[" + std::to_string(j) + "," + std::to_string(k) + "]";
  std::string pred = "slice_invariance(" + std::to_string(j) + "," + std::to_string(k) + ")";
  for (int d = 0; d <= D; ++d)
    for (int m = 0; m <= d; ++m)
      for (const NCPoly& w : C.layer(m).spanning_elements(d)) {
        NCPoly di = delta.apply(A, w);
        if (!di.is_zero() && !C.layer(m + ej + k).contains(di))
          return detail::fail_report(C, pred, D, {dl, m, m + ej + k, d, w, di});
        NCPoly ni = nabla.apply(A, w);
        if (!ni.is_zero() && !C.layer(m + ej + k).contains(ni))
          return detail::fail_report(C, pred, D, {nl, m, m + ej + k, d, w, ni});
      }
  return detail::pass_report(pred, D);
}

inline VerificationReport is_differential_chain(const ChainSpec& C, int D) {
  VerificationReport base = is_chain(C, D);
  if (!base.passed()) {
    base.predicate = "is_differential_chain";
    base.detail = "chain precondition failed: " + base.detail;
    return base;
  }
  SqAlgebra& A = C.algebra();
  int dim = A.lie().dim();
  std::vector<std::vector<DiffOp>> delta(dim), nabla(dim);
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k + A.lie().degree(j) <= A.q(); ++k) {
      delta[j].push_back(build_delta_jk(A, j, k));
      nabla[j].push_back(build_nabla_jk(A, j, k));
    }
  for (int d = 0; d <= D; ++d)
    for (int m = 0; m <= d; ++m)
      for (const NCPoly& w : C.layer(m).spanning_elements(d))
        for (int j = 0; j < dim; ++j) {
          int ej = A.lie().degree(j);
          for (int k = 0; k < (int)delta[j].size(); ++k) {
            NCPoly di = delta[j][k].apply(A, w);
            if (!di.is_zero() && !C.layer(m + ej + k).contains(di))
              return detail::fail_report(
                  C, "is_differential_chain", D,
                  {"Delta[" + std::to_string(j) + "," + std::to_string(k) + "]", m, m + ej + k, d,
                   w, di});
            NCPoly ni = nabla[j][k].apply(A, w);
            if (!ni.is_zero() && !C.layer(m + ej + k).contains(ni))
              return detail::fail_report(
                  C, "is_differential_chain", D,
                  {"Nabla[" + std::to_string(j) + "," + std::to_string(k) + "]", m, m + ej + k, d,
                   w, ni});
          }
        }
  return detail::pass_report("is_differential_chain", D);
}

// Invariance of the whole chain under one fixed operator: every layer
// component of every image must land back in its own layer. Used for the
// single-term experiments where an operator is not one of the corrections.
inline VerificationReport operator_invariance(const ChainSpec& C, const DiffOp& op,
                                              const std::string& label, int D) {
  SqAlgebra& A = C.algebra();
  std::string pred = "operator_invariance(" + label + ")";
  for (int d = 0; d <= D; ++d)
    for (int m = 0; m <= d; ++m)
      for (const NCPoly& w : C.layer(m).spanning_elements(d)) {
        NCPoly img = op.apply(A, w);
        for (auto& [tm, comp] : A.layers(img))
          if (!C.layer((int)tm).contains(comp))
            return detail::fail_report(C, pred, D, {label, m, (int)tm, d, w, comp});
      }
  return detail::pass_report(pred, D);
}

// The sum of the layers must absorb full left and right products with every
// algebra generator, and products of the bottom layer with arbitrary
// monomials must stay inside the matching layers.
inline VerificationReport chain_sum_ideal_check(const ChainSpec& C, int D) {
  VerificationReport base = is_differential_chain(C, D);
  if (!base.passed()) {
    base.predicate = "chain_sum_ideal_check";
    base.detail = "differential chain precondition failed: " + base.detail;
    return base;
  }
  SqAlgebra& A = C.algebra();
  for (int d = 0; d <= D; ++d)
    for (int m = 0; m <= d; ++m)
      for (const NCPoly& w : C.layer(m).spanning_elements(d))
        for (int j = 0; j < A.lie().dim(); ++j) {
          NCPoly zj = A.generator(j);
          NCPoly left = A.mul(zj, w), right = A.mul(w, zj);
          for (auto& [tm, comp] : A.layers(left))
            if (!C.layer((int)tm).contains(comp))
              return detail::fail_report(C, "chain_sum_ideal_check", D,
                                         {"left product by " + A.lie().name(j), m, (int)tm, d, w,
                                          comp});
          for (auto& [tm, comp] : A.layers(right))
            if (!C.layer((int)tm).contains(comp))
              return detail::fail_report(C, "chain_sum_ideal_check", D,
                                         {"right product by " + A.lie().name(j), m, (int)tm, d, w,
                                          comp});
        }
  // Bottom-layer products: I_0 times any monomial of S (x) R^m must land in
  // the layers, componentwise.
  for (int d0 = 0; d0 <= D; ++d0)
    for (const NCPoly& f : C.layer(0).spanning_elements(d0))
      for (int m = 1; d0 + m <= D; ++m)
        for (const Expo& r : A.radical_monomials(m))
          for (int du = 0; d0 + m + du <= D; ++du)
            for (const Expo& u : A.x_monomials(du)) {
              NCPoly p = A.mul(f, A.monomial(u + r));
              for (auto& [tm, comp] : A.layers(p))
                if (!C.layer((int)tm).contains(comp))
                  return detail::fail_report(
                      C, "chain_sum_ideal_check", D,
                      {"bottom layer times " + A.to_string(A.monomial(u + r)), 0, (int)tm,
                       d0, f, comp});
            }
  return detail::pass_report("chain_sum_ideal_check", D);
}

// Two-sided closure of homogeneous generators, degree by degree, followed by
// the layer-split test: each degree piece must be the direct sum of its
// radical-weight components.
struct DecomposeResult {
  bool graded = false;
  int bound = 0;
  std::map<int, std::vector<NCPoly>> layer_elements;  // by radical weight
  std::optional<NCPoly> mixed_element;                // witness when not graded
  std::optional<NCPoly> escaping_component;
  int fail_degree = -1;
  int fail_layer = -1;
  std::string detail;
};

inline DecomposeResult decompose_nc_graded(SqAlgebra& A, const std::vector<NCPoly>& gens, int D) {
  struct DegreeData {
    std::vector<Expo> frame;
    std::map<Expo, int, ExpoOrder> col;
    LinSpan span{0};
    std::vector<NCPoly> basis;
    size_t next = 0;  // worklist cursor
  };
  std::vector<DegreeData> by_deg(D + 1);
  for (int d = 0; d <= D; ++d) {
    by_deg[d].frame = A.monomials_of_wdeg(d);
    std::sort(by_deg[d].frame.begin(), by_deg[d].frame.end(),
              [](const Expo& a, const Expo& b) { return ExpoOrder{}(a, b); });
    for (int c = 0; c < (int)by_deg[d].frame.size(); ++c) by_deg[d].col[by_deg[d].frame[c]] = c;
    by_deg[d].span = LinSpan((int)by_deg[d].frame.size());
  }
  auto to_vec = [&](const NCPoly& f, const DegreeData& s) {
    std::vector<Rat> v(s.frame.size(), Rat(0));
    for (auto& [k, c] : f.terms()) {
      auto it = s.col.find(k.second);
      require_internal(it != s.col.end(), "monomial outside the degree frame");
      v[it->second] = c;
    }
    return v;
  };
  auto insert = [&](int d, const NCPoly& f) {
    if (f.is_zero() || d > D) return;
    DegreeData& s = by_deg[d];
    std::vector<Rat> red = s.span.reduce(to_vec(f, s));
    bool nonzero = false;
    for (auto& c : red)
      if (c != 0) { nonzero = true; break; }
    if (!nonzero) return;
    NCPoly g;
    for (int c = 0; c < (int)red.size(); ++c)
      if (red[c] != 0) g.add_term(d, s.frame[c], red[c]);
    s.span.insert(std::move(red));
    s.basis.push_back(std::move(g));
  };
  for (const NCPoly& g : gens) {
    require_input(!g.is_zero() && g.is_homogeneous(), "decompose expects nonzero homogeneous generators");
    require_input(g.degree() <= D, "generator degree exceeds the bound");
    insert((int)g.degree(), g);
  }
  // Products with a generator only raise the degree, so one ascending sweep
  // closes the ideal.
  for (int d = 0; d <= D; ++d) {
    DegreeData& s = by_deg[d];
    while (s.next < s.basis.size()) {
      NCPoly p = s.basis[s.next++];
      for (int j = 0; j < A.lie().dim(); ++j) {
        int nd = d + A.lie().degree(j);
        if (nd > D) continue;
        insert(nd, A.mul(A.generator(j), p));
        insert(nd, A.mul(p, A.generator(j)));
      }
    }
  }
  DecomposeResult out;
  out.bound = D;
  for (int d = 0; d <= D; ++d) {
    DegreeData& s = by_deg[d];
    for (const NCPoly& p : s.basis)
      for (auto& [m, comp] : A.layers(p))
        if (!s.span.contains(to_vec(comp, s))) {
          out.graded = false;
          out.mixed_element = p;
          out.escaping_component = comp;
          out.fail_degree = d;
          out.fail_layer = (int)m;
          out.detail = "degree " + std::to_string(d) + " piece is not layer-split: component of " +
                       A.to_string(p) + " at radical weight " + std::to_string(m) +
                       " falls outside";
          return out;
        }
  }
  out.graded = true;
  // Collect the layer pieces, reduced per degree for stable output.
  std::map<std::pair<int, int>, LinSpan> seen;
  for (int d = 0; d <= D; ++d) {
    DegreeData& s = by_deg[d];
    for (const NCPoly& p : s.basis)
      for (auto& [m, comp] : A.layers(p)) {
        auto key = std::make_pair((int)m, d);
        auto it = seen.find(key);
        if (it == seen.end()) it = seen.emplace(key, LinSpan((int)s.frame.size())).first;
        if (it->second.insert(to_vec(comp, s))) out.layer_elements[(int)m].push_back(comp);
      }
  }
  out.detail = "two-sided closure is layer-split at every degree up to " + std::to_string(D);
  return out;
}

// Smallest ideal containing the input that is stable under the two chosen
// partial derivatives. Derivatives strictly drop degree, so the loop
// terminates; membership pruning keeps the generator list reduced.
struct ClosureResult {
  int var_i = 0;
  int var_j = 0;
  std::vector<CommPoly> closure_gens;
  bool reaches_unit = false;
  std::string verdict;
};

inline ClosureResult differential_closure(int nvars, const std::vector<CommPoly>& gens, int i,
                                          int j, int D) {
  require_input(i >= 0 && j >= 0 && i < nvars && j < nvars && i != j,
                "closure needs two distinct variables");
  ClosureResult out;
  out.var_i = i;
  out.var_j = j;
  std::vector<CommPoly> work;
  for (const CommPoly& g : gens) {
    if (g.is_zero()) continue;
    require_input(g.is_homogeneous(), "closure expects homogeneous generators");
    out.closure_gens.push_back(g);
    work.push_back(g);
  }
  require_input(!out.closure_gens.empty(), "closure needs at least one nonzero generator");
  while (!work.empty()) {
    CommPoly f = work.back();
    work.pop_back();
    for (int v : {i, j}) {
      CommPoly g = f.derivative(v);
      if (g.is_zero()) continue;
      if (CommIdeal(nvars, out.closure_gens).contains(g)) continue;
      out.closure_gens.push_back(g);
      work.push_back(g);
    }
  }
  out.reaches_unit = CommIdeal(nvars, out.closure_gens).contains(CommPoly(Rat(1)));
  out.verdict = out.reaches_unit ? "improper (definitive)"
                                 : "proper up to degree " + std::to_string(D);
  return out;
}

struct QuantizationVerdict {
  bool yes = false;
  bool definitive = false;
  std::optional<std::pair<int, int>> witness_pair;
  std::vector<ClosureResult> pairs;
  std::optional<bool> fastpath_yes;  // set for a single form in three variables
  std::string detail;
};

// A proper derivative-stable ideal over some variable pair certifies an
// infinite quantization; reaching the unit in every pair rules one out. For a
// single form in three variables the answer reduces to divisibility by a
// coordinate, which makes the verdict definitive either way.
inline QuantizationVerdict infinite_quantization_check(const Signature& sig,
                                                       const std::vector<CommPoly>& gens, int D) {
  require_input(sig.q == 2, "the infinite-quantization criterion applies to q = 2 only");
  int nvars = sig.n + 1;
  QuantizationVerdict out;
  for (int i = 0; i < nvars; ++i)
    for (int j = i + 1; j < nvars; ++j) {
      ClosureResult c = differential_closure(nvars, gens, i, j, D);
      if (!c.reaches_unit && !out.witness_pair) out.witness_pair = {i, j};
      out.pairs.push_back(std::move(c));
    }
  out.yes = out.witness_pair.has_value();
  out.definitive = !out.yes;  // unit-reaching closures are exact
  if (gens.size() == 1 && nvars == 3) {
    bool divisible = false;
    for (int v = 0; v < nvars; ++v)
      if (gens[0].divide_exact(CommPoly::variable(v))) divisible = true;
    out.fastpath_yes = divisible;
    require_internal(divisible == out.yes, "divisibility shortcut disagrees with the closures");
    out.definitive = true;
  }
  if (out.yes) {
    out.detail = "pair (x" + std::to_string(out.witness_pair->first) + ", x" +
                 std::to_string(out.witness_pair->second) + ") keeps a proper derivative-stable ideal";
  } else {
    out.detail = "every variable pair reaches a unit under iterated derivatives";
  }
  return out;
}

}  // namespace ncproj
