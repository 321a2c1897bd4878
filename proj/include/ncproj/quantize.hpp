#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ncproj/chains.hpp"
#include "ncproj/localization.hpp"

namespace ncproj {

// Canonical representative modulo a homogeneous ideal, taken degree by degree
// against the reduced row echelon span. Linear and idempotent.
inline CommPoly normal_form(const CommIdeal& I, const CommPoly& f) {
  if (f.is_zero()) return f;
  CommPoly out;
  for (long d = 0; d <= f.degree(); ++d) {
    CommPoly h = f.homogeneous_part(d);
    if (h.is_zero()) continue;
    const CommIdeal::DegreeSpan& s = I.span_in_degree((int)d);
    std::vector<Rat> v = s.span.reduce(CommIdeal::to_vec(h, s));
    for (int c = 0; c < (int)v.size(); ++c)
      if (v[c] != 0) out.add_term(s.frame[c], v[c]);
  }
  return out;
}

inline bool ideal_equal(const CommIdeal& a, const CommIdeal& b) {
  for (const CommPoly& g : a.gens())
    if (!b.contains(g)) return false;
  for (const CommPoly& g : b.gens())
    if (!a.contains(g)) return false;
  return true;
}

// Scheme-theoretic reading of a coefficient ideal, decided from its degree
// spans up to the inspection bound. Best effort: profiles that match nothing
// stay unclassified rather than guessing.
enum class ComponentKind { Zero, Point, LinearSubspace, PlaneCurve, Unclassified };

inline std::string component_kind_name(ComponentKind k) {
  switch (k) {
    case ComponentKind::Zero: return "zero";
    case ComponentKind::Point: return "point";
    case ComponentKind::LinearSubspace: return "linear";
    case ComponentKind::PlaneCurve: return "plane-curve";
    case ComponentKind::Unclassified: return "unclassified";
  }
  throw InternalError("unknown component kind");
}

struct ComponentClass {
  ComponentKind kind = ComponentKind::Unclassified;
  int nvars = 0;
  std::vector<CommPoly> linear_forms;  // reduced degree-one part
  std::vector<CommPoly> extra_forms;   // higher-degree generators kept by points
  CommPoly hypersurface;               // principal generator of a plane curve
  int hypersurface_degree = 0;
  long multiplicity = 0;               // eventual hilbert value of a point
  std::vector<long> hilbert;           // h(0..d_max)
};

inline ComponentClass classify_ideal(const CommIdeal& I, int d_max) {
  require_input(d_max >= 3, "classification needs degree spans up to three");
  ComponentClass out;
  out.nvars = I.nvars();
  int n = I.nvars() - 1;
  for (int d = 0; d <= d_max; ++d) out.hilbert.push_back(I.hilbert(d));

  const CommIdeal::DegreeSpan& s1 = I.span_in_degree(1);
  for (auto& [p, row] : s1.span.rows()) {
    CommPoly f;
    for (int c = 0; c < (int)row.size(); ++c)
      if (row[c] != 0) f.add_term(s1.frame[c], row[c]);
    out.linear_forms.push_back(std::move(f));
  }
  int lr = (int)out.linear_forms.size();

  // Projectively empty: the unit ideal and the full variable ideal alike.
  if (out.hilbert[d_max] == 0 && out.hilbert[d_max - 1] == 0) {
    out.kind = ComponentKind::Zero;
    return out;
  }

  bool linear_profile = true;
  for (int d = 0; d <= d_max && linear_profile; ++d)
    if (Int(out.hilbert[d]) != binom(d + n - lr, n - lr)) linear_profile = false;
  if (linear_profile) {
    out.kind = lr == n ? ComponentKind::Point : ComponentKind::LinearSubspace;
    out.multiplicity = lr == n ? 1 : 0;
    return out;
  }

  // Eventually constant hilbert values: a finite scheme of that length.
  if (out.hilbert[d_max] == out.hilbert[d_max - 1] &&
      out.hilbert[d_max - 1] == out.hilbert[d_max - 2]) {
    out.kind = ComponentKind::Point;
    out.multiplicity = out.hilbert[d_max];
    for (const CommPoly& g : I.gens())
      if (g.degree() >= 2) {
        CommPoly h = g;
        h.make_monic();
        out.extra_forms.push_back(std::move(h));
      }
    return out;
  }

  // Principal nonlinear ideal in the plane: rank grows like one free module
  // generator, with the reduced row in the lowest degree as the equation.
  if (lr == 0 && n == 2) {
    int e = 0;
    for (int d = 1; d <= d_max && e == 0; ++d)
      if (I.span_in_degree(d).span.rank() > 0) e = d;
    bool principal = e > 0;
    for (int d = e; d <= d_max && principal; ++d)
      if (Int(I.span_in_degree(d).span.rank()) != binom(d - e + n, n)) principal = false;
    if (principal) {
      const CommIdeal::DegreeSpan& se = I.span_in_degree(e);
      CommPoly f;
      for (auto& [p, row] : se.span.rows())
        for (int c = 0; c < (int)row.size(); ++c)
          if (row[c] != 0) f.add_term(se.frame[c], row[c]);
      out.kind = ComponentKind::PlaneCurve;
      out.hypersurface = std::move(f);
      out.hypersurface_degree = e;
      return out;
    }
  }

  out.kind = ComponentKind::Unclassified;
  return out;
}

inline std::string component_label(const SqAlgebra& A, const ComponentClass& cls) {
  auto name = [&](int i) { return A.lie().name(i); };
  std::string forms;
  auto join = [&](const std::vector<CommPoly>& fs) {
    for (const CommPoly& f : fs) {
      if (!forms.empty()) forms += ", ";
      forms += f.to_string(name);
    }
  };
  switch (cls.kind) {
    case ComponentKind::Zero:
      return "0";
    case ComponentKind::LinearSubspace:
      if (cls.linear_forms.empty()) return "P^" + std::to_string(cls.nvars - 1);
      join(cls.linear_forms);
      return "Z(" + forms + ")";
    case ComponentKind::Point: {
      join(cls.linear_forms);
      join(cls.extra_forms);
      std::string out = "Z(" + forms + ")";
      if (cls.multiplicity > 1) out += " (multiplicity " + std::to_string(cls.multiplicity) + ")";
      return out;
    }
    case ComponentKind::PlaneCurve:
      return "Z(" + cls.hypersurface.to_string(name) + ") (degree " +
             std::to_string(cls.hypersurface_degree) + ")";
    case ComponentKind::Unclassified: {
      std::string out = "unclassified, hilbert";
      for (long h : cls.hilbert) out += " " + std::to_string(h);
      return out;
    }
  }
  throw InternalError("unknown component kind");
}

// One summand of a quotient layer: the coefficient ideal sitting on a radical
// slot monomial, together with its classification.
struct QuotientComponent {
  CommIdeal ideal;
  ComponentClass cls;
};

struct QuotientLayer {
  int m = 0;  // radical weight; the summand twists by -m
  std::map<Expo, QuotientComponent, ExpoOrder> components;

  long hilbert(int d) const {
    long s = 0;
    for (auto& [r, c] : components) s += c.ideal.hilbert(d);
    return s;
  }
};

namespace detail {

inline std::vector<QuotientLayer> quotient_layers(const ChainSpec& C, int m_max, int d_max) {
  SqAlgebra& A = C.algebra();
  std::vector<QuotientLayer> out;
  for (int m = 0; m <= m_max; ++m) {
    QuotientLayer L;
    L.m = m;
    const std::vector<Expo>& rads = A.radical_monomials(m);
    if (!rads.empty()) {
      const GradedSubmodule& I = C.layer(m);
      require_input(I.splits_by_slot(), "layer generators mix radical slots");
      const auto& slots = I.slot_ideals();
      for (const Expo& r : rads) {
        auto it = slots.find(r);
        CommIdeal ideal =
            it != slots.end() ? it->second : CommIdeal(A.n() + 1, std::vector<CommPoly>{});
        ComponentClass cls = classify_ideal(ideal, d_max);
        L.components.emplace(r, QuotientComponent{std::move(ideal), std::move(cls)});
      }
    }
    out.push_back(std::move(L));
  }
  return out;
}

}  // namespace detail

// Slotwise quotient data for layers 0..m_max, classified from degree spans up
// to d_max. Multiplication stability is a precondition and is checked at the
// smallest legal bound covering d_max.
inline std::vector<QuotientLayer> build_quotients(const ChainSpec& C, int m_max, int d_max) {
  require_input(m_max >= 0 && d_max >= 3, "quotients need m_max >= 0 and d_max >= 3");
  SqAlgebra& A = C.algebra();
  int D = std::max(d_max, C.max_generator_degree() + A.q());
  VerificationReport chain = is_chain(C, D);
  require_input(chain.passed(), "layer family is not multiplication stable: " + chain.detail);
  return detail::quotient_layers(C, m_max, d_max);
}

// Decomposition plus the two stability verdicts. The chain verdict gates the
// layer build; the differential verdict only rides along in the report.
struct QuantizationReport {
  VerificationReport chain;
  VerificationReport differential;
  std::vector<QuotientLayer> layers;
  int d_max = 0;
};

inline QuantizationReport quantize(const ChainSpec& C, int m_max, int d_max) {
  require_input(m_max >= 0 && d_max >= 3, "quotients need m_max >= 0 and d_max >= 3");
  SqAlgebra& A = C.algebra();
  QuantizationReport rep;
  rep.d_max = d_max;
  int D = std::max(d_max, C.max_generator_degree() + A.q());
  rep.chain = is_chain(C, D);
  if (!rep.chain.passed()) {
    rep.differential = rep.chain;
    rep.differential.predicate = "is_differential_chain";
    return rep;
  }
  rep.differential = is_differential_chain(C, D);
  rep.layers = detail::quotient_layers(C, m_max, d_max);
  return rep;
}

// Exact formal series in finitely many variables: a sum of monomial-shifted
// products of negative-power geometric factors. A factor (var, order) stands
// for (1 - t_var)^-(order + 1), with coefficient binom(k + order, order) at
// t_var^k.
struct SeriesFactor {
  int var = 0;
  int order = 0;
};

struct SeriesTerm {
  Rat coeff = Rat(1);
  Expo mono;
  std::vector<SeriesFactor> factors;
};

class SeriesExpr {
 public:
  explicit SeriesExpr(int nvars) : nvars_(nvars) {
    require_input(nvars >= 0, "series wants a nonnegative variable count");
  }

  int nvars() const { return nvars_; }
  const std::vector<SeriesTerm>& terms() const { return terms_; }

  SeriesExpr& add(SeriesTerm t) {
    require_input(t.mono.max_index() < nvars_, "series monomial outside the variables");
    for (const SeriesFactor& f : t.factors)
      require_input(f.var >= 0 && f.var < nvars_ && f.order >= 0,
                    "series factor outside the variables");
    if (t.coeff != 0) terms_.push_back(std::move(t));
    return *this;
  }
  SeriesExpr& add_monomial(const Rat& c, const Expo& e) { return add({c, e, {}}); }
  SeriesExpr& add_geometric(const Rat& c, int var, int order = 0) {
    return add({c, Expo{}, {{var, order}}});
  }

  // Every coefficient of total degree at most `order`.
  std::map<Expo, Rat, ExpoOrder> expand(int order) const {
    std::map<Expo, Rat, ExpoOrder> out;
    for (const SeriesTerm& t : terms_) {
      if (t.mono.total() > order) continue;
      std::map<Expo, Rat, ExpoOrder> cur{{t.mono, t.coeff}};
      for (const SeriesFactor& f : t.factors) {
        std::map<Expo, Rat, ExpoOrder> next;
        for (auto& [e, c] : cur)
          for (long k = 0; e.total() + k <= order; ++k)
            next[e + Expo::unit(f.var, (int)k)] += c * Rat(binom(k + f.order, f.order));
        cur = std::move(next);
      }
      for (auto& [e, c] : cur) {
        Rat v = out[e] += c;
        if (v == 0) out.erase(e);
      }
    }
    return out;
  }

  std::string to_string(const std::function<std::string(int)>& var_name) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const SeriesTerm& t : terms_) {
      Rat c = t.coeff;
      if (first) {
        if (c < 0) { out += "-"; c = -c; }
      } else {
        out += c < 0 ? " - " : " + ";
        if (c < 0) c = -c;
      }
      first = false;
      std::vector<std::string> parts;
      if (c != 1 || (t.mono.empty() && t.factors.empty())) parts.push_back(rat_to_string(c));
      t.mono.for_each([&](int i, int p) {
        parts.push_back(var_name(i) + (p > 1 ? "^" + std::to_string(p) : ""));
      });
      for (const SeriesFactor& f : t.factors)
        parts.push_back("1/(1-" + var_name(f.var) + ")" +
                        (f.order > 0 ? "^" + std::to_string(f.order + 1) : ""));
      for (size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
    }
    return out;
  }

 private:
  int nvars_;
  std::vector<SeriesTerm> terms_;
};

// Counting series of the full radical: one variable per slot weight, one
// geometric factor per weight with order one below the slot count.
inline SeriesExpr free_sheaf_series(const SqAlgebra& A) {
  require_input(A.q() >= 2, "the radical series needs nilpotency at least two");
  SeriesExpr f(A.q() - 1);
  SeriesTerm t;
  for (int w = 2; w <= A.q(); ++w) {
    int slots = (int)A.lie().indices_of_degree(w).size();
    require_internal(slots >= 1, "no radical slots at an admissible weight");
    t.factors.push_back({w - 2, slots - 1});
  }
  f.add(std::move(t));
  return f;
}

// Names a quotient component for series bookkeeping: a component whose
// coefficient ideal equals `ideal` contributes the exponent of `var` once per
// radical slot of weight `weight` in its monomial.
struct SeriesBinding {
  CommIdeal ideal;
  int weight = 0;
  int var = 0;
};

// Counting series of a decomposition: every nonzero component contributes one
// monomial, with exponents split by slot weight through the bindings. The
// weight-zero base needs no binding and lands on the constant term.
inline std::map<Expo, long, ExpoOrder> series_invariant(const SqAlgebra& A,
                                                        const std::vector<QuotientLayer>& layers,
                                                        const std::vector<SeriesBinding>& binding) {
  std::map<Expo, long, ExpoOrder> counts;
  for (const QuotientLayer& L : layers)
    for (auto& [r, comp] : L.components) {
      if (comp.cls.kind == ComponentKind::Zero) continue;
      if (r.empty()) {
        counts[Expo{}] += 1;
        continue;
      }
      std::map<int, int> by_weight;
      r.for_each([&](int i, int p) { by_weight[A.lie().degree(i)] += p; });
      Expo e;
      for (auto& [w, k] : by_weight) {
        const SeriesBinding* hit = nullptr;
        for (const SeriesBinding& b : binding)
          if (b.weight == w && ideal_equal(b.ideal, comp.ideal)) { hit = &b; break; }
        require_input(hit != nullptr, "component without a series binding: " +
                                          component_label(A, comp.cls) + " on " +
                                          A.to_string(A.monomial(r)));
        e = e + Expo::unit(hit->var, k);
      }
      counts[e] += 1;
    }
  return counts;
}

// Equality of restrictions to a component: cross multiplication in the ideal.
inline bool quotient_rf_eq(const CommIdeal& I, const RationalFn& a, const RationalFn& b) {
  return I.contains(a.num * b.den - b.num * a.den);
}

// Slotwise restriction of a chart element: each layer coefficient goes to its
// normal form modulo the component ideal of the slot. Coefficients vanishing
// on their component drop out; a denominator vanishing there has no
// restriction and is refused. Idempotent.
inline ChartElement quotient_reduce(const ChainSpec& C, const ChartContext& ctx,
                                    const ChartElement& a) {
  SqAlgebra& A = C.algebra();
  require_input(&A == &ctx.algebra(), "chart and chain disagree on the algebra");
  ChartElement out{a.chart, a.truncation, {}};
  for (auto& [r, coeff] : a.layers) {
    int m = (int)A.wdeg(r);
    const GradedSubmodule& I = C.layer(m);
    require_input(I.splits_by_slot(), "layer generators mix radical slots");
    const auto& slots = I.slot_ideals();
    auto it = slots.find(r);
    if (it == slots.end()) {  // zero ideal, nothing to reduce
      out.layers.emplace(r, coeff);
      continue;
    }
    // The numerator carries the residue; the denominator stays the chart
    // factor product it came in as, so reduced elements can be multiplied
    // again. Only its residue class is consulted, to rule out poles.
    CommPoly num = normal_form(it->second, coeff.num);
    if (normal_form(it->second, coeff.den).is_zero()) {
      require_input(num.is_zero(), "denominator vanishes on the component at " +
                                       A.to_string(A.monomial(r)));
      continue;
    }
    if (num.is_zero()) continue;
    out.layers.emplace(r, RationalFn(std::move(num), coeff.den));
  }
  return out;
}

// Chart product followed by the slotwise restriction.
inline ChartElement quotient_chart_product(const ChainSpec& C, const ChartContext& ctx,
                                           const ChartElement& a, const ChartElement& b) {
  return quotient_reduce(C, ctx, chart_multiply(ctx, a, b));
}

// Rendering with a per-slot restriction tag, for reduced products.
inline std::string render_quotient(const ChartContext& ctx, const ChartElement& a,
                                   const std::function<std::string(const Expo&)>& tag) {
  if (chart_is_zero(a)) return "0";
  SqAlgebra& A = ctx.algebra();
  auto name = [&](int i) { return A.lie().name(i); };
  std::vector<std::pair<Expo, const RationalFn*>> rows;
  for (auto& [alpha, r] : a.layers) rows.push_back({alpha, &r});
  std::sort(rows.begin(), rows.end(), [&](const auto& x, const auto& y) {
    long wx = A.wdeg(x.first), wy = A.wdeg(y.first);
    if (wx != wy) return wx < wy;
    return x.first.cmp_lex(y.first) > 0;
  });
  std::string out;
  for (auto& [alpha, r] : rows) {
    if (!out.empty()) out += " + ";
    std::string coeff = rf_to_string(*r, name);
    std::string t = tag(alpha);
    if (alpha.empty()) {
      out += coeff + t;
      continue;
    }
    if (r->is_polynomial() && r->num.terms().size() > 1) coeff = "(" + coeff + ")";
    std::string mono;
    alpha.for_each([&](int s, int p) {
      if (!mono.empty()) mono += "*";
      mono += name(s);
      if (p > 1) mono += "^" + std::to_string(p);
    });
    out += coeff + t + "*" + mono;
  }
  return out;
}

// Relation generators behind the pair-slot quotient in one radical weight:
// products of slots sharing an index vanish, disjoint pair products
// antisymmetrize under exchanging partners, and at nilpotency three any
// product touching a weight-three slot vanishes.
inline std::vector<NCPoly> lie_space_relations(const SqAlgebra& A, int w) {
  require_input(A.q() == 2 || A.q() == 3,
                "pair relations are only available at nilpotency two and three");
  const LieAlgebra& L = A.lie();
  auto pair_of = [&](int slot) { return std::make_pair(L.word(slot)[0], L.word(slot)[1]); };
  std::vector<NCPoly> gens;
  for (const Expo& r : A.radical_monomials(w)) {
    bool kill = false, heavy = false;
    std::vector<std::pair<int, int>> pairs;
    r.for_each([&](int i, int p) {
      if (L.degree(i) == 2) {
        if (p >= 2) kill = true;
        pairs.push_back(pair_of(i));
      } else {
        heavy = true;
      }
    });
    for (size_t a = 0; a < pairs.size() && !kill; ++a)
      for (size_t b = a + 1; b < pairs.size() && !kill; ++b) {
        auto [i, j] = pairs[a];
        auto [s, l] = pairs[b];
        if (i == s || i == l || j == s || j == l) kill = true;
      }
    if (heavy && r.total() >= 2) kill = true;
    if (kill) gens.push_back(A.monomial(r));
  }
  if (w >= 4) {
    std::vector<int> p2 = L.indices_of_degree(2);
    for (const Expo& g : A.radical_monomials(w - 4))
      for (int za : p2)
        for (int zb : p2) {
          auto [i, j] = pair_of(za);
          auto [s, l] = pair_of(zb);
          if (i >= s || j == s || j == l) continue;
          int zc = L.index_of_word({i, s});
          int zd = L.index_of_word({std::min(j, l), std::max(j, l)});
          Rat sign = j < l ? Rat(1) : Rat(-1);
          gens.push_back(A.monomial(g + Expo::unit(za) + Expo::unit(zb)) +
                         A.monomial(g + Expo::unit(zc) + Expo::unit(zd), sign));
        }
  }
  return gens;
}

struct LieSpaceLayer {
  int weight = 0;
  long monomials = 0;
  long dim = 0;
};

// Dimensions of the graded quotient by the pair relations, weight by weight.
inline std::vector<LieSpaceLayer> lie_space_quotient(const SqAlgebra& A, int w_max) {
  std::vector<LieSpaceLayer> out;
  for (int w = 0; w <= w_max; ++w) {
    GradedSubmodule M(A, w, lie_space_relations(A, w));
    out.push_back({w, (long)A.radical_monomials(w).size(), M.codim_in_degree(w)});
  }
  return out;
}

}  // namespace ncproj
