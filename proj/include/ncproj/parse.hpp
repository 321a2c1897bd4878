#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "localization.hpp"

namespace ncproj {

// Recursive-descent expression grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | atom ('^' nat)?
//   atom   := name | nat | bracket | '(' expr ')'
//   bracket:= '[' expr ',' expr ']'
//   name   := [A-Za-z][A-Za-z0-9_]*
// with an optional trailing chart tag '@U<i>' or '@<name>'. Division binds
// like multiplication and the exponent binds tighter, so x0/x2^2 divides by
// the square. Rationals are written as quotients of naturals.

struct ExprNode {
  enum class Kind { Name, Number, Add, Sub, Neg, Mul, Div, Pow, Bracket };
  Kind kind = Kind::Number;
  std::string name;
  Rat value;
  int power = 0;
  std::vector<ExprNode> kids;
};

struct ParsedExpr {
  ExprNode ast;
  std::optional<std::string> chart;  // text after '@', if any
};

namespace detail {

struct Lexer {
  std::string_view text;
  size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n'))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& what, size_t at) const {
    int line = 1, col = 1;
    for (size_t i = 0; i < at && i < text.size(); ++i) {
      if (text[i] == '\n') { ++line; col = 1; }
      else ++col;
    }
    throw InputError("syntax error at line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + what);
  }

  char peek() {
    skip_space();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool eat(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }

  void expect(char c, const std::string& ctx) {
    if (!eat(c)) fail(std::string("expected '") + c + "' " + ctx, pos);
  }

  std::string name() {
    skip_space();
    size_t start = pos;
    while (pos < text.size() && (std::isalnum((unsigned char)text[pos]) || text[pos] == '_')) ++pos;
    return std::string(text.substr(start, pos - start));
  }

  long natural() {
    skip_space();
    size_t start = pos;
    while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
    if (pos == start) fail("expected a number", start);
    return std::stol(std::string(text.substr(start, pos - start)));
  }
};

inline ExprNode parse_expr(Lexer& lx);

inline ExprNode parse_atom(Lexer& lx) {
  char c = lx.peek();
  if (c == '(') {
    ++lx.pos;
    ExprNode e = parse_expr(lx);
    lx.expect(')', "to close the group");
    return e;
  }
  if (c == '[') {
    ++lx.pos;
    ExprNode b;
    b.kind = ExprNode::Kind::Bracket;
    b.kids.push_back(parse_expr(lx));
    lx.expect(',', "between bracket arguments");
    b.kids.push_back(parse_expr(lx));
    lx.expect(']', "to close the bracket");
    return b;
  }
  if (std::isdigit((unsigned char)c)) {
    ExprNode n;
    n.kind = ExprNode::Kind::Number;
    n.value = Rat(lx.natural());
    return n;
  }
  if (std::isalpha((unsigned char)c)) {
    ExprNode n;
    n.kind = ExprNode::Kind::Name;
    n.name = lx.name();
    return n;
  }
  lx.fail("expected a name, number, bracket, or group", lx.pos);
}

inline ExprNode parse_factor(Lexer& lx) {
  if (lx.peek() == '-') {
    ++lx.pos;
    ExprNode n;
    n.kind = ExprNode::Kind::Neg;
    n.kids.push_back(parse_factor(lx));
    return n;
  }
  ExprNode base = parse_atom(lx);
  if (lx.peek() == '^') {
    ++lx.pos;
    ExprNode p;
    p.kind = ExprNode::Kind::Pow;
    p.power = (int)lx.natural();
    p.kids.push_back(std::move(base));
    return p;
  }
  return base;
}

inline ExprNode parse_term(Lexer& lx) {
  ExprNode lhs = parse_factor(lx);
  while (true) {
    char c = lx.peek();
    if (c != '*' && c != '/') return lhs;
    ++lx.pos;
    ExprNode n;
    n.kind = c == '*' ? ExprNode::Kind::Mul : ExprNode::Kind::Div;
    n.kids.push_back(std::move(lhs));
    n.kids.push_back(parse_factor(lx));
    lhs = std::move(n);
  }
}

inline ExprNode parse_expr(Lexer& lx) {
  ExprNode lhs = parse_term(lx);
  while (true) {
    char c = lx.peek();
    if (c != '+' && c != '-') return lhs;
    ++lx.pos;
    ExprNode n;
    n.kind = c == '+' ? ExprNode::Kind::Add : ExprNode::Kind::Sub;
    n.kids.push_back(std::move(lhs));
    n.kids.push_back(parse_term(lx));
    lhs = std::move(n);
  }
}

}  // namespace detail

inline ParsedExpr parse_expression(const std::string& text) {
  ParsedExpr out;
  std::string body = text;
  auto at = text.rfind('@');
  if (at != std::string::npos) {
    std::string tag = text.substr(at + 1);
    while (!tag.empty() && (tag.front() == ' ')) tag.erase(tag.begin());
    while (!tag.empty() && (tag.back() == ' ')) tag.pop_back();
    bool ok = !tag.empty() && std::isalpha((unsigned char)tag.front());
    for (char c : tag)
      if (!std::isalnum((unsigned char)c) && c != '_') ok = false;
    require_input(ok, "chart tag must be a name");
    out.chart = tag;
    body = text.substr(0, at);
  }
  detail::Lexer lx{body, 0};
  out.ast = detail::parse_expr(lx);
  lx.skip_space();
  if (lx.pos != body.size()) lx.fail("trailing input", lx.pos);
  return out;
}

// Symbol table for the enveloping algebra: every basis element under its own
// name, extendable with user bindings.
inline std::map<std::string, NCPoly> default_symbols(const SqAlgebra& A) {
  std::map<std::string, NCPoly> out;
  for (int i = 0; i < A.lie().dim(); ++i)
    out.emplace(A.lie().name(i), A.monomial(Expo::unit(i)));
  return out;
}

namespace detail {

inline std::optional<Rat> nc_constant(const NCPoly& p) {
  if (p.is_zero()) return Rat(0);
  if (p.size() == 1 && p.terms().begin()->first.second.empty())
    return p.terms().begin()->second;
  return std::nullopt;
}

}  // namespace detail

inline NCPoly eval_nc(SqAlgebra& A, const ExprNode& e,
                      const std::map<std::string, NCPoly>& symbols) {
  using K = ExprNode::Kind;
  switch (e.kind) {
    case K::Name: {
      auto it = symbols.find(e.name);
      require_input(it != symbols.end(), "unknown symbol: " + e.name);
      return it->second;
    }
    case K::Number:
      return A.monomial(Expo{}, e.value);
    case K::Add:
      return eval_nc(A, e.kids[0], symbols) + eval_nc(A, e.kids[1], symbols);
    case K::Sub:
      return eval_nc(A, e.kids[0], symbols) - eval_nc(A, e.kids[1], symbols);
    case K::Neg:
      return -eval_nc(A, e.kids[0], symbols);
    case K::Mul:
      return A.mul(eval_nc(A, e.kids[0], symbols), eval_nc(A, e.kids[1], symbols));
    case K::Div: {
      NCPoly den = eval_nc(A, e.kids[1], symbols);
      auto c = detail::nc_constant(den);
      require_input(c.has_value() && *c != 0,
                    "division by a non-constant needs a chart context");
      NCPoly num = eval_nc(A, e.kids[0], symbols);
      return num * (Rat(1) / *c);
    }
    case K::Pow:
      return A.pow(eval_nc(A, e.kids[0], symbols), e.power);
    case K::Bracket: {
      NCPoly a = eval_nc(A, e.kids[0], symbols);
      NCPoly b = eval_nc(A, e.kids[1], symbols);
      return A.mul(a, b) - A.mul(b, a);
    }
  }
  throw InternalError("unhandled expression node");
}

// Commutative evaluation for ideal generators and curve forms; brackets and
// non-constant division are rejected.
inline CommPoly eval_comm(int nvars, const ExprNode& e) {
  using K = ExprNode::Kind;
  switch (e.kind) {
    case K::Name: {
      require_input(e.name.size() >= 2 && e.name[0] == 'x', "unknown variable: " + e.name);
      int idx = -1;
      try {
        idx = std::stoi(e.name.substr(1));
      } catch (...) {
        throw InputError("unknown variable: " + e.name);
      }
      require_input(idx >= 0 && idx < nvars, "variable out of range: " + e.name);
      return CommPoly::variable(idx);
    }
    case K::Number:
      return CommPoly(e.value);
    case K::Add:
      return eval_comm(nvars, e.kids[0]) + eval_comm(nvars, e.kids[1]);
    case K::Sub:
      return eval_comm(nvars, e.kids[0]) - eval_comm(nvars, e.kids[1]);
    case K::Neg:
      return -eval_comm(nvars, e.kids[0]);
    case K::Mul:
      return eval_comm(nvars, e.kids[0]) * eval_comm(nvars, e.kids[1]);
    case K::Div: {
      CommPoly den = eval_comm(nvars, e.kids[1]);
      require_input(den.is_constant() && !den.is_zero(), "polynomial division must be by a constant");
      return eval_comm(nvars, e.kids[0]) * (Rat(1) / den.constant_term());
    }
    case K::Pow:
      return eval_comm(nvars, e.kids[0]).pow(e.power);
    case K::Bracket:
      throw InputError("brackets have no commutative meaning");
  }
  throw InternalError("unhandled expression node");
}

namespace detail {

// A chart element that is a plain polynomial section, for division operands.
inline std::optional<CommPoly> chart_as_xpoly(const ChartElement& a) {
  if (a.layers.empty()) return CommPoly();
  if (a.layers.size() != 1) return std::nullopt;
  auto& [alpha, coeff] = *a.layers.begin();
  if (!alpha.empty() || !coeff.is_polynomial()) return std::nullopt;
  return coeff.num * (Rat(1) / coeff.den.constant_term());
}

}  // namespace detail

inline ChartElement eval_chart(const ChartContext& ctx, const ExprNode& e) {
  using K = ExprNode::Kind;
  SqAlgebra& A = ctx.algebra();
  switch (e.kind) {
    case K::Name: {
      auto symbols = default_symbols(A);
      auto it = symbols.find(e.name);
      require_input(it != symbols.end(), "unknown symbol: " + e.name);
      return chart_from_poly(ctx, it->second);
    }
    case K::Number:
      return chart_from_poly(ctx, A.monomial(Expo{}, e.value));
    case K::Add:
      return chart_add(ctx, eval_chart(ctx, e.kids[0]), eval_chart(ctx, e.kids[1]));
    case K::Sub:
      return chart_sub(ctx, eval_chart(ctx, e.kids[0]), eval_chart(ctx, e.kids[1]));
    case K::Neg:
      return chart_scale(ctx, eval_chart(ctx, e.kids[0]), Rat(-1));
    case K::Mul:
      return chart_multiply(ctx, eval_chart(ctx, e.kids[0]), eval_chart(ctx, e.kids[1]));
    case K::Div: {
      auto num = detail::chart_as_xpoly(eval_chart(ctx, e.kids[0]));
      auto den = detail::chart_as_xpoly(eval_chart(ctx, e.kids[1]));
      require_input(num.has_value() && den.has_value(),
                    "division operands must be polynomial sections");
      require_input(!den->is_zero(), "division by zero");
      return chart_section(ctx, RationalFn(std::move(*num), std::move(*den)));
    }
    case K::Pow: {
      ChartElement r = chart_from_poly(ctx, A.monomial(Expo{}, Rat(1)));
      ChartElement base = eval_chart(ctx, e.kids[0]);
      for (int i = 0; i < e.power; ++i) r = chart_multiply(ctx, r, base);
      return r;
    }
    case K::Bracket: {
      ChartElement a = eval_chart(ctx, e.kids[0]);
      ChartElement b = eval_chart(ctx, e.kids[1]);
      return chart_sub(ctx, chart_multiply(ctx, a, b), chart_multiply(ctx, b, a));
    }
  }
  throw InternalError("unhandled expression node");
}

}  // namespace ncproj
