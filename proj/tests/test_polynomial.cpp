#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "propint/errors.hpp"
#include "propint/polynomial.hpp"

using namespace propint;

namespace {

PolyRing xyz() { return PolyRing({"x", "y", "z"}); }

Polynomial random_poly(const PolyRing& ring, std::mt19937_64& gen, int terms = 4, int max_exp = 3) {
  std::vector<Term> out;
  std::uniform_int_distribution<int> e(0, max_exp), c(-9, 9), d(1, 4);
  for (int k = 0; k < terms; ++k) {
    Monomial m(ring.arity());
    for (std::size_t i = 0; i < ring.arity(); ++i) m.set(i, static_cast<std::uint32_t>(e(gen)));
    out.push_back({m, Rational(c(gen), d(gen))});
  }
  for (auto& t : out) t.coeff.canonicalize();
  return Polynomial::from_terms(ring, std::move(out));
}

std::vector<Rational> random_point(std::size_t n, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> c(-20, 20), d(1, 7);
  std::vector<Rational> pt;
  for (std::size_t i = 0; i < n; ++i) {
    Rational q(c(gen), d(gen));
    q.canonicalize();
    pt.push_back(q);
  }
  return pt;
}

}  // namespace

TEST_CASE("parse: canonical forms") {
  const auto R = xyz();
  Polynomial p = parse_polynomial("x*y - z^2", R);
  CHECK(p.size() == 2);
  CHECK(p.to_string() == "x*y - z^2");

  Polynomial zero = parse_polynomial("0", R);
  CHECK(zero.is_zero());
  CHECK(zero.terms().empty());
  CHECK(zero.to_string() == "0");

  // Expansion checked against a hand-built y^2 and against pointwise evaluation.
  Polynomial q = parse_polynomial("(x+y)^2 - x^2 - 2*x*y", R);
  CHECK(q == Polynomial::term(R, Monomial{0, 2, 0}, 1));
  std::mt19937_64 gen(7);
  for (int k = 0; k < 10; ++k) {
    auto pt = random_point(3, gen);
    Rational x = pt[0], y = pt[1];
    CHECK(q.evaluate(pt) == (x + y) * (x + y) - x * x - 2 * x * y);
  }
}

TEST_CASE("parse: rationals, whitespace and signs") {
  const auto R = xyz();
  CHECK(parse_polynomial(" 1/2*z +3 ", R).to_string() == "1/2*z + 3");
  CHECK(parse_polynomial("-x", R).to_string() == "-x");
  CHECK(parse_polynomial("-(x - y)", R).to_string() == "-x + y");
  CHECK(parse_polynomial("2/4*x", R).to_string() == "1/2*x");
  CHECK(parse_polynomial("x^0", R).to_string() == "1");
}

TEST_CASE("parse: errors carry byte offsets") {
  const auto R = xyz();
  try {
    parse_polynomial("x + w", R);
    FAIL("expected unknown variable");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  try {
    parse_polynomial("x * ", R);
    FAIL("expected syntax error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse_polynomial("x^", R), ParseError);
  CHECK_THROWS_AS(parse_polynomial("(x + y", R), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x y", R), ParseError);
  CHECK_THROWS_AS(parse_polynomial("1/0", R), ParseError);
}

TEST_CASE("ring validation") {
  CHECK_THROWS_AS(PolyRing({"x", "x"}), MathError);
  CHECK_THROWS_AS(PolyRing({"1x"}), MathError);
  CHECK_THROWS_AS(PolyRing({""}), MathError);
}

TEST_CASE("evaluate") {
  const auto R = xyz();
  Polynomial cone = parse_polynomial("x*y - z^2", R);
  std::vector<Rational> p1{1, 1, 1}, p2{1, 1, 0};
  CHECK(cone.evaluate(p1) == 0);
  CHECK(cone.evaluate(p2) == 1);
  PolyRing xy({"x", "y"});
  std::vector<Rational> p3{2, -1};
  CHECK(parse_polynomial("x^2 + y^3", xy).evaluate(p3) == 3);
  std::vector<Rational> bad{1, 2};
  CHECK_THROWS_AS(cone.evaluate(bad), MathError);
}

TEST_CASE("homogenize / dehomogenize") {
  PolyRing xy({"x", "y"});
  Polynomial p = parse_polynomial("x + y^2", xy);
  Polynomial h = homogenize(p, "x0");
  CHECK(h.ring().variables() == std::vector<std::string>{"x0", "x", "y"});
  CHECK(h.to_string() == "x0*x + y^2");
  CHECK(h.is_homogeneous());
  CHECK(h.total_degree() == p.total_degree());
  CHECK(dehomogenize(h, 0) == p);

  Polynomial cone = parse_polynomial("x*y - z^2", xyz());
  Polynomial hc = homogenize(cone, "x0");
  CHECK(hc.to_string() == "x*y - z^2");
  CHECK(dehomogenize(hc, 0) == cone);
  CHECK_THROWS_AS(homogenize(cone, "x"), MathError);
}

TEST_CASE("leading_term") {
  const auto R = xyz();
  auto [m, c] = leading_term(parse_polynomial("x*y - z^2", R), MonomialOrder::grevlex());
  CHECK(m == Monomial{1, 1, 0});
  CHECK(c == 1);
  PolyRing xy({"x", "y"});
  auto [m2, c2] = leading_term(parse_polynomial("x + y", xy), MonomialOrder::lex());
  CHECK(m2 == Monomial{1, 0});
  CHECK(c2 == 1);
  for (auto order : {MonomialOrder::lex(), MonomialOrder::grevlex(), MonomialOrder::block_elimination(1)}) {
    auto [m3, c3] = leading_term(parse_polynomial("3*x^2", xy), order);
    CHECK(m3 == Monomial{2, 0});
    CHECK(c3 == 3);
  }
  CHECK_THROWS_AS(leading_term(Polynomial(R), MonomialOrder::lex()), MathError);
}

TEST_CASE("orders: grevlex and block details") {
  auto g = MonomialOrder::grevlex();
  // x*y > z^2 > x*z in grevlex with x > y > z.
  CHECK(g.greater(Monomial{1, 1, 0}, Monomial{0, 0, 2}));
  CHECK(g.greater(Monomial{1, 1, 0}, Monomial{1, 0, 1}));
  auto b = MonomialOrder::block_elimination(1);
  // Anything with x beats anything without.
  CHECK(b.greater(Monomial{1, 0, 0}, Monomial{0, 5, 5}));
  auto l = MonomialOrder::lex();
  CHECK(l.greater(Monomial{1, 0, 0}, Monomial{0, 9, 9}));
  CHECK(l.greater(Monomial{0, 1, 0}, Monomial{0, 0, 9}));
}

TEST_CASE("divide_exact") {
  const auto R = xyz();
  Polynomial f = parse_polynomial("x - y*z", R), g = parse_polynomial("x^2 + 3*z + 1", R);
  CHECK(divide_exact(f * g, g) == f);
  CHECK_THROWS_AS(divide_exact(g, f), MathError);
}

TEST_CASE("property: ring axioms, evaluation homomorphism, render round trip") {
  const auto R = xyz();
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 100; ++trial) {
    Polynomial p = random_poly(R, gen), q = random_poly(R, gen), r = random_poly(R, gen);
    CHECK((p + q) * r == p * r + q * r);
    CHECK(p * q == q * p);
    CHECK((p - p).is_zero());
    auto pt = random_point(3, gen);
    CHECK((p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt));
    CHECK((p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt));
    CHECK(parse_polynomial(p.to_string(), R) == p);
  }
}

TEST_CASE("property: leading_term is multiplicative for every order") {
  const auto R = xyz();
  std::mt19937_64 gen(99);
  for (auto order : {MonomialOrder::lex(), MonomialOrder::grevlex(), MonomialOrder::block_elimination(1),
                     MonomialOrder::block_elimination(2)}) {
    for (int trial = 0; trial < 50; ++trial) {
      Polynomial p = random_poly(R, gen), q = random_poly(R, gen);
      if (p.is_zero() || q.is_zero()) continue;
      auto [mp, cp] = leading_term(p, order);
      auto [mq, cq] = leading_term(q, order);
      auto [mpq, cpq] = leading_term(p * q, order);
      CHECK(mpq == mp * mq);
      CHECK(cpq == cp * cq);
    }
  }
}

TEST_CASE("substitute composes") {
  PolyRing t({"t"});
  Polynomial cusp = parse_polynomial("z^2 - w^3", PolyRing({"z", "w"}));
  std::vector<Polynomial> images{parse_polynomial("t^3", t), parse_polynomial("t^2", t)};
  CHECK(substitute(cusp, t, images).is_zero());
}

TEST_CASE("exponent overflow is reported") {
  Monomial big{1u << 29};
  CHECK_THROWS_AS(big * big * big, MathError);
}
