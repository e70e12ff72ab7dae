#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "propint/errors.hpp"
#include "propint/geometry.hpp"
#include "propint/linalg.hpp"

using namespace propint;

namespace {

Ideal ideal(const PolyRing& R, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> ps;
  for (const char* g : gens) ps.push_back(parse_polynomial(g, R));
  return Ideal(R, std::move(ps));
}

struct Cone {
  PolyRing ring{std::vector<std::string>{"x", "y", "z"}};
  Context ctx;
  VarietyPresentation y = VarietyPresentation::make(ideal(ring, {"x*y - z^2"}), ctx);
  PrimeComponent l1{ideal(ring, {"x", "z"}), ctx};
  PrimeComponent l2{ideal(ring, {"y", "z"}), ctx};
};

// Order of vanishing at t = 0 of g(t^a, t^b).
unsigned order_on_monomial_curve(const Polynomial& g, unsigned a, unsigned b) {
  unsigned best = ~0u;
  std::map<unsigned, Rational> coeff;
  for (const auto& t : g.terms()) coeff[a * t.monomial[0] + b * t.monomial[1]] += t.coeff;
  for (const auto& [e, c] : coeff)
    if (c != 0) best = std::min(best, e);
  return best;
}

}  // namespace

TEST_CASE("codim_in") {
  Cone c;
  CHECK(codim_in(c.y, ideal(c.ring, {"x", "z"}), c.ctx) == 1);
  PolyRing uv({"u", "v"});
  CHECK(codim_in(VarietyPresentation::affine_space(uv), ideal(uv, {"u", "v"}), c.ctx) == 2);
  PolyRing x4({"x1", "x2", "x3", "x4"});
  auto y4 = VarietyPresentation::make(ideal(x4, {"x1*x2 + x3*x4"}), c.ctx);
  CHECK(codim_in(y4, ideal(x4, {"x1", "x3", "x2", "x4"}), c.ctx) == 3);
  CHECK_FALSE(codim_in(c.y, ideal(c.ring, {"x - 1", "y - 1", "z"}), c.ctx).has_value());
}

TEST_CASE("cycle arithmetic") {
  Cone c;
  Cycle a(c.y);
  a.add(Rational(1, 2), c.l1);
  Cycle sum = cycle_add(a, a);
  REQUIRE(sum.terms().size() == 1);
  CHECK(sum.terms()[0].coeff == 1);
  CHECK(cycle_add(sum, cycle_scale(-1, sum)).empty());
  Cycle b(c.y);
  b.add(Rational(1, 2), c.l1);
  b.add(2, c.l2);
  auto s = support(b);
  CHECK(s.size() == 2);
  CHECK(std::find(s.begin(), s.end(), c.l1) != s.end());
  CHECK(std::find(s.begin(), s.end(), c.l2) != s.end());
  CHECK(b.effective());
  CHECK_FALSE(cycle_scale(-1, b).effective());
  PolyRing other({"u"});
  Cycle foreign(VarietyPresentation::affine_space(other));
  CHECK_THROWS_AS(cycle_add(a, foreign), MathError);
}

TEST_CASE("components: equality is ideal equality") {
  Context ctx;
  PolyRing R({"x", "y", "z"});
  CHECK(PrimeComponent(ideal(R, {"x", "z"}), ctx) == PrimeComponent(ideal(R, {"z + x", "x"}), ctx));
  CHECK_THROWS_AS(PrimeComponent(ideal(R, {"x", "x - 1"}), ctx), MathError);
}

TEST_CASE("verify_components") {
  Cone c;
  CHECK(verify_components(c.y, ideal(c.ring, {"x"}), {c.l1}, c.ctx).accepted);
  auto v = verify_components(c.y, ideal(c.ring, {"z"}), {c.l1}, c.ctx);
  CHECK_FALSE(v.accepted);
  REQUIRE(v.failures.size() == 1);
  CHECK(v.failures[0].rfind("covering", 0) == 0);
  CHECK(verify_components(c.y, ideal(c.ring, {"1"}), {}, c.ctx).accepted);
  CHECK(verify_components(c.y, ideal(c.ring, {"z"}), {c.l1, c.l2}, c.ctx).accepted);
  // The origin is inside V but is not a component.
  auto origin = PrimeComponent::from_point(c.ring, {0, 0, 0}, c.ctx);
  auto bad = verify_components(c.y, ideal(c.ring, {"z"}), {c.l1, c.l2, origin}, c.ctx);
  CHECK_FALSE(bad.accepted);
}

TEST_CASE("discover_components") {
  Cone c;
  auto comps = discover_components(c.y, ideal(c.ring, {"z"}), c.ctx);
  REQUIRE(comps.size() == 2);
  CHECK(((comps[0] == c.l1 && comps[1] == c.l2) || (comps[0] == c.l2 && comps[1] == c.l1)));
  auto one = discover_components(c.y, ideal(c.ring, {"x"}), c.ctx);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == c.l1);
  CHECK(discover_components(c.y, ideal(c.ring, {"x - 1", "y - 1", "z"}), c.ctx).empty());

  PolyRing xy({"x", "y"});
  auto pts = discover_components(VarietyPresentation::affine_space(xy),
                                 ideal(xy, {"x^2 - 3*x + 2", "y - x"}), c.ctx);
  REQUIRE(pts.size() == 2);
  // Irrational points are reported, not guessed.
  CHECK_THROWS_AS(discover_components(VarietyPresentation::affine_space(xy), ideal(xy, {"x^2 - 2", "y"}), c.ctx),
                  MathError);
  // A binomial cone stratum is found with its prime.
  PolyRing abc({"a", "b", "c", "d"});
  auto cone = discover_components(VarietyPresentation::make(ideal(abc, {"a*c - b^2"}), c.ctx),
                                  ideal(abc, {"d"}), c.ctx);
  REQUIRE(cone.size() == 1);
  CHECK(cone[0].key() == std::vector<std::string>{"b^2 - a*c", "d"});
}

TEST_CASE("rational roots and points") {
  UPoly p{Rational(-6), Rational(11), Rational(-6), Rational(1)};  // (t-1)(t-2)(t-3)
  CHECK(rational_roots(p) == std::vector<Rational>{1, 2, 3});
  UPoly q{Rational(-2), 0, 1};
  CHECK(rational_roots(q).empty());
  CHECK(simplest_between(Rational(1, 3), Rational(1, 2)) == Rational(1, 2));
  CHECK(simplest_between(Rational(-7, 5), Rational(-4, 3)) == Rational(-4, 3));

  Context ctx;
  PolyRing xy({"x", "y"});
  auto pts = rational_points(ideal(xy, {"x^2 - 1", "y^2 - x"}), ctx);
  CHECK_FALSE(pts.complete);
  CHECK(pts.points == std::vector<PointSpec>{{1, -1}, {1, 1}});
}

TEST_CASE("property: rational roots recovered from products with irreducible factors") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rational> roots;
    UPoly p{1};
    const int k = 1 + static_cast<int>(gen() % 4);
    for (int i = 0; i < k; ++i) {
      Rational r(static_cast<long>(uniform_int(gen, -300, 300)), static_cast<unsigned long>(uniform_int(gen, 1, 40)));
      r.canonicalize();
      roots.push_back(r);
      UPoly lin{-r, 1};
      UPoly next(p.size() + 1, 0);
      for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = 0; b < 2; ++b) next[a + b] += p[a] * lin[b];
      p = next;
    }
    // Multiply by t^2 + c with c > 0, which has no real roots.
    Rational c(static_cast<long>(uniform_int(gen, 1, 50)), 7);
    UPoly quad{c, 0, 1}, next(p.size() + 2, 0);
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < 3; ++b) next[a + b] += p[a] * quad[b];
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    CHECK(rational_roots(next) == roots);
  }
}

TEST_CASE("local_colength") {
  Cone c;
  CHECK(local_colength(c.y, ideal(c.ring, {"x", "y"}), {0, 0, 0}, c.ctx) == 2);
  PolyRing zw({"z", "w"});
  auto cusp = VarietyPresentation::make(ideal(zw, {"z^2 - w^3"}), c.ctx);
  CHECK(local_colength(cusp, ideal(zw, {"w"}), {0, 0}, c.ctx) == 2);
  CHECK(local_colength(cusp, ideal(zw, {"z"}), {0, 0}, c.ctx) == 3);
  CHECK(local_colength(c.y, ideal(c.ring, {"x", "y"}), {1, 0, 0}, c.ctx) == 0);
  CHECK_THROWS_AS(local_colength(c.y, ideal(c.ring, {"x"}), {0, 0, 0}, c.ctx), MathError);
  // Isolated point next to a positive-dimensional component elsewhere.
  PolyRing xy({"x", "y"});
  CHECK(local_length(ideal(xy, {"(x - 1)*x", "(x - 1)*y^2"}), {0, 0}, c.ctx) == 2);
}

TEST_CASE("multiplicity_along") {
  Context ctx(7);
  PolyRing R({"x", "y", "z"});
  auto y = VarietyPresentation::make(ideal(R, {"x*y"}), ctx);
  PrimeComponent zaxis(ideal(R, {"x", "y"}), ctx);
  CHECK(multiplicity_along(y, ideal(R, {"x + y^2"}), zaxis, ctx) == 3);

  PolyRing xy({"x", "y"});
  auto plane = VarietyPresentation::affine_space(xy);
  CHECK(multiplicity_along(plane, ideal(xy, {"y - x^2", "y"}), PrimeComponent::from_point(xy, {0, 0}, ctx), ctx) ==
        2);

  Cone c;
  CHECK(multiplicity_along(c.y, ideal(c.ring, {"x"}), c.l1, c.ctx) == 2);
  CHECK(multiplicity_along(c.y, ideal(c.ring, {"z"}), c.l2, c.ctx) == 1);

  // Parametrized witness.
  PrimeComponent param(ideal(R, {"x", "y"}), ctx);
  PolyRing t({"t"});
  param.parametrization = Parametrization{t, {Polynomial(t), Polynomial(t), Polynomial::variable(t, 0)}};
  CHECK(multiplicity_along(y, ideal(R, {"x + y^2"}), param, ctx) == 3);
}

TEST_CASE("property: multiplicity is independent of the slicing seed") {
  PolyRing R({"x", "y", "z"});
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    Context ctx(seed);
    auto y = VarietyPresentation::make(ideal(R, {"x*y"}), ctx);
    PrimeComponent zaxis(ideal(R, {"x", "y"}), ctx);
    CHECK(multiplicity_along(y, ideal(R, {"x^3 + y^2"}), zaxis, ctx) == 5);
  }
}

TEST_CASE("property: reduced coordinate subspaces have multiplicity one") {
  PolyRing R({"a", "b", "c", "d"});
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 12; ++trial) {
    Context ctx(static_cast<std::uint64_t>(trial));
    std::uint32_t mask = 1 + static_cast<std::uint32_t>(gen() % 14);
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < 4; ++i)
      if (mask & (1u << i)) gens.push_back(Polynomial::variable(R, i));
    Ideal j(R, gens);
    PrimeComponent z(j, ctx);
    CHECK(multiplicity_along(VarietyPresentation::affine_space(R), j, z, ctx) == 1);
  }
}

TEST_CASE("property: intersection with monomial curves equals the vanishing order") {
  PolyRing xy({"x", "y"});
  std::mt19937_64 gen(77);
  const std::pair<unsigned, unsigned> curves[] = {{2, 3}, {3, 4}, {2, 5}, {3, 5}};
  for (int trial = 0; trial < 24; ++trial) {
    auto [a, b] = curves[trial % 4];
    Context ctx;
    // The curve t -> (t^a, t^b) is x^b = y^a.
    Polynomial curve = pow(Polynomial::variable(xy, 0), b) - pow(Polynomial::variable(xy, 1), a);
    auto y = VarietyPresentation::make(Ideal(xy, {curve}), ctx);
    std::vector<Term> terms;
    for (int k = 0; k < 3; ++k) {
      Monomial m{static_cast<std::uint32_t>(gen() % 4), static_cast<std::uint32_t>(gen() % 3)};
      if (m.is_one()) m.set(0, 1);
      terms.push_back({m, Rational(static_cast<long>(uniform_int(gen, 1, 9)))});
    }
    Polynomial g = Polynomial::from_terms(xy, terms);
    const unsigned expected = order_on_monomial_curve(g, a, b);
    CHECK(local_colength(y, Ideal(xy, {g}), {0, 0}, ctx) == expected);
  }
}

TEST_CASE("property: local lengths add up to the colength") {
  PolyRing xy({"x", "y"});
  std::mt19937_64 gen(101);
  for (int trial = 0; trial < 20; ++trial) {
    Context ctx;
    const Rational p = uniform_int(gen, -5, 5), q = p + uniform_int(gen, 1, 5);
    const unsigned e1 = 1 + gen() % 3, e2 = 1 + gen() % 3;
    // Two points (p, 0) and (q, 0) with fat structure along y.
    Polynomial x = Polynomial::variable(xy, 0), y = Polynomial::variable(xy, 1);
    Polynomial f = (x - Polynomial::constant(xy, p)) * (x - Polynomial::constant(xy, q));
    Polynomial g = pow(y, e1) * (x - Polynomial::constant(xy, q)) + pow(y, e2) * (x - Polynomial::constant(xy, p));
    Ideal k(xy, {f, g});
    const auto total = colength(k, ctx);
    CHECK(local_length(k, {p, 0}, ctx) + local_length(k, {q, 0}, ctx) == total);
    CHECK(local_length(k, {p, 0}, ctx) == e1);
  }
}
