#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "ncproj/ncpoly.hpp"
#include "oracles.hpp"

using namespace ncproj;

namespace {

NCPoly random_poly(SqAlgebra& A, std::mt19937& rng, int max_deg, int nterms) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> deg(0, max_deg);
  NCPoly f;
  for (int t = 0; t < nterms; ++t) {
    int d = deg(rng);
    auto frame = A.monomials_of_wdeg(d);
    if (frame.empty()) continue;
    std::uniform_int_distribution<size_t> pick(0, frame.size() - 1);
    int c = coef(rng);
    if (c) f += A.monomial(frame[pick(rng)], Rat(c));
  }
  return f;
}

CommPoly random_xpoly(int nvars, std::mt19937& rng, int max_deg, int nterms) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> deg(0, max_deg);
  CommPoly f;
  for (int t = 0; t < nterms; ++t) {
    auto frame = monomials_of_degree(nvars, deg(rng));
    std::uniform_int_distribution<size_t> pick(0, frame.size() - 1);
    int c = coef(rng);
    if (c) f.add_term(frame[pick(rng)], Rat(c));
  }
  return f;
}

}  // namespace

TEST_CASE("ordered products straighten to the basis") {
  SqAlgebra A({1, 2});
  NCPoly x0 = A.generator(0), x1 = A.generator(1), y = A.generator(2);
  // x1 * x0 = x0 x1 - y
  NCPoly p = A.mul(x1, x0);
  NCPoly expect = A.mul(x0, x1) - y;
  CHECK(p == expect);
  CHECK(A.to_string(p) == "x0*x1 - z2");
  // y is central at q = 2
  CHECK(A.commutator(y, x0).is_zero());
  CHECK(A.commutator(y, A.mul(x0, x1)).is_zero());
}

TEST_CASE("bracket of a generator with a square") {
  SqAlgebra A({1, 3});
  // Basis: x0, x1 | z2 = [x0,x1] | z3 = [x0,[x0,x1]], z4 = [[x0,x1],x1]
  NCPoly x0 = A.generator(0), x1 = A.generator(1);
  NCPoly lhs = A.commutator(x1, A.mul(x0, x0));
  NCPoly z2 = A.generator(2), z3 = A.generator(3);
  NCPoly expect = A.mul(x0, z2) * Rat(-2) + z3;
  CHECK(lhs == expect);
}

TEST_CASE("associativity and grading of the product") {
  std::mt19937 rng(7);
  for (Signature sig : {Signature{1, 3}, Signature{2, 2}, Signature{2, 3}, Signature{1, 4}}) {
    SqAlgebra A(sig);
    for (int t = 0; t < 12; ++t) {
      NCPoly a = random_poly(A, rng, 3, 3);
      NCPoly b = random_poly(A, rng, 3, 3);
      NCPoly c = random_poly(A, rng, 2, 2);
      CHECK(A.mul(A.mul(a, b), c) == A.mul(a, A.mul(b, c)));
    }
    // product of homogeneous parts is homogeneous of the sum degree
    NCPoly a = random_poly(A, rng, 3, 4).graded_component(2);
    NCPoly b = random_poly(A, rng, 3, 4).graded_component(3);
    NCPoly ab = A.mul(a, b);
    CHECK((ab.is_zero() || (ab.is_homogeneous() && ab.degree() == 5)));
  }
}

TEST_CASE("tau is a section of epsilon but not multiplicative") {
  SqAlgebra A({2, 2});
  std::mt19937 rng(11);
  for (int t = 0; t < 10; ++t) {
    CommPoly f = random_xpoly(3, rng, 3, 4);
    CHECK(A.epsilon(A.tau(f)) == f);
  }
  CommPoly x0 = CommPoly::variable(0), x1 = CommPoly::variable(1);
  CHECK(A.tau(x0 * x1) != A.mul(A.tau(x1), A.tau(x0)));
  // epsilon is a ring map
  for (int t = 0; t < 10; ++t) {
    NCPoly a = random_poly(A, rng, 3, 3), b = random_poly(A, rng, 3, 3);
    CHECK(A.epsilon(A.mul(a, b)) == A.epsilon(a) * A.epsilon(b));
  }
}

TEST_CASE("scaled derivative families") {
  SqAlgebra A({2, 3});
  std::mt19937 rng(13);
  // dbar^beta on a monomial: product of binomials and parity sign
  NCPoly m = A.monomial(Expo({{0, 2}, {1, 1}}));
  NCPoly d = A.dbar(m, Expo({{0, 1}}));
  CHECK(d == A.monomial(Expo({{0, 1}, {1, 1}}), Rat(-2)));
  CHECK(A.dbar(m, Expo({{0, 1}, {1, 1}})) == A.monomial(Expo({{0, 1}}), Rat(2)));
  // dpart differs by the parity-to-global sign swap
  for (int t = 0; t < 8; ++t) {
    NCPoly f = random_poly(A, rng, 4, 4);
    for (auto beta : {Expo({{0, 1}}), Expo({{0, 2}}), Expo({{1, 1}, {2, 1}}), Expo({{3, 1}})}) {
      Rat flip = (beta.total() % 2 == 0) ? -1 : 1;
      CHECK(A.dpart(f, beta) == A.dbar(f, beta) * flip);
    }
  }
  // first-order plain partial
  CHECK(A.partial(A.mul(A.generator(0), A.generator(0)), 0) == A.generator(0) * Rat(2));
}

TEST_CASE("derivatives satisfy the convolution rule on products") {
  std::mt19937 rng(17);
  for (Signature sig : {Signature{1, 3}, Signature{2, 2}, Signature{2, 3}}) {
    SqAlgebra A(sig);
    for (int t = 0; t < 10; ++t) {
      NCPoly f = random_poly(A, rng, 3, 3);
      NCPoly g = random_poly(A, rng, 3, 3);
      NCPoly fg = A.mul(f, g);
      for (auto k : {Expo({{0, 1}}), Expo({{1, 2}}), Expo({{0, 1}, {1, 1}})}) {
        NCPoly lhs = A.dbar(fg, k);
        NCPoly rhs;
        for (auto& i : sub_indices(k)) {
          Expo j;
          REQUIRE(k.try_sub(i, j));
          rhs += A.mul(A.dbar(f, i), A.dbar(g, j));
        }
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("grading splits") {
  SqAlgebra A({2, 3});
  std::mt19937 rng(19);
  NCPoly f = random_poly(A, rng, 5, 12);
  NCPoly sum;
  for (long d : f.degrees()) sum += f.graded_component(d);
  CHECK(sum == f);
  NCPoly layer_sum;
  for (auto& [m, part] : A.layers(f)) layer_sum += part;
  CHECK(layer_sum == f);
  // layer components agree with the bidegree filter
  for (auto& [m, part] : A.layers(f))
    for (long d : part.degrees())
      CHECK(A.layer_component(f, d - m, m) == part.graded_component(d));
}

TEST_CASE("commuting-model product against the ordered product at q=2") {
  // tau(f) tau(g) expands through pair partials with one radical factor per
  // crossing; cross-check straightening against that closed rule.
  std::mt19937 rng(23);
  for (int n : {1, 2, 3}) {
    SqAlgebra A({n, 2});
    std::vector<std::pair<int, int>> pairs;
    for (int s = 0; s <= n; ++s)
      for (int t = s + 1; t <= n; ++t) pairs.push_back({s, t});
    for (int trial = 0; trial < 8; ++trial) {
      CommPoly f = random_xpoly(n + 1, rng, 3, 3), g = random_xpoly(n + 1, rng, 3, 3);
      NCPoly expect;
      std::function<void(size_t, CommPoly, CommPoly, Expo, Rat)> rec =
          [&](size_t idx, CommPoly df, CommPoly dg, Expo alpha, Rat coeff) {
            if (df.is_zero() || dg.is_zero()) return;
            if (idx == pairs.size()) {
              expect += A.diag_mul(A.tau(df * dg), A.monomial(alpha, coeff));
              return;
            }
            auto [s, t] = pairs[idx];
            int yidx = A.lie().index_of_word({s, t});
            CommPoly fs = df, gs = dg;
            Rat c = coeff;
            for (int k = 0;; ++k) {
              if (k > 0) c = -c / k;
              rec(idx + 1, fs, gs, k ? alpha + Expo::unit(yidx, k) : alpha, c);
              fs = fs.derivative(t);
              gs = gs.derivative(s);
              if (fs.is_zero() || gs.is_zero()) break;
            }
          };
      rec(0, f, g, Expo{}, Rat(1));
      CHECK(A.mul(A.tau(f), A.tau(g)) == expect);
    }
  }
}
