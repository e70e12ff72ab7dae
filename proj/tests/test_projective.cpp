#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "propint/errors.hpp"
#include "propint/projective.hpp"

using namespace propint;

namespace doctest {
template <>
struct StringMaker<Cycle> {
  static String convert(const Cycle& c) { return c.to_string().c_str(); }
};
}  // namespace doctest

namespace {

Ideal ideal(const PolyRing& R, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> ps;
  for (const char* g : gens) ps.push_back(parse_polynomial(g, R));
  return Ideal(R, std::move(ps));
}

}  // namespace

TEST_CASE("total_degree worked examples") {
  Context ctx(1);
  PolyRing p2({"x", "y", "z"});
  auto plane = VarietyPresentation::affine_space(p2);
  Cycle half_point(plane);
  half_point.add(ratio(1, 2), PrimeComponent(ideal(p2, {"x", "y"}), ctx));
  CHECK(total_degree(half_point, ctx) == ratio(1, 2));

  PolyRing p3({"x", "y", "z", "w"});
  Cycle line(VarietyPresentation::affine_space(p3));
  line.add(1, PrimeComponent(ideal(p3, {"x", "y"}), ctx));
  CHECK(total_degree(line, ctx) == 1);

  Cycle conic(plane);
  conic.add(2, PrimeComponent(ideal(p2, {"x*y - z^2"}), ctx));
  CHECK(total_degree(conic, ctx) == 4);

  Cycle affine(plane);
  affine.add(1, PrimeComponent(ideal(p2, {"x - 1", "y"}), ctx));
  CHECK_THROWS_AS(total_degree(affine, ctx), MathError);
  Cycle vertex(plane);
  vertex.add(1, PrimeComponent(ideal(p2, {"x", "y", "z"}), ctx));
  CHECK_THROWS_AS(total_degree(vertex, ctx), MathError);
}

TEST_CASE("charts") {
  Context ctx(2);
  PolyRing p2({"x", "y", "z"});
  auto closure = homogenize_ideal(ideal(PolyRing({"x", "y"}), {"y - x^2"}), p2, 2, ctx);
  CHECK(same_ideal(closure, ideal(p2, {"y*z - x^2"}), ctx));
  auto back = dehomogenize_ideal(closure, 2);
  CHECK(same_ideal(back, ideal(PolyRing({"x", "y"}), {"y - x^2"}), ctx));
  // The point [0:1:0] is at infinity for the charts x and z.
  CHECK(select_chart(ideal(p2, {"x", "z"}), ctx) == std::optional<std::size_t>(1));
  // Three coordinate points cannot share a standard chart.
  CHECK_FALSE(select_chart(ideal(p2, {"x*y", "y*z", "x*z"}), ctx).has_value());
}

TEST_CASE("bezout_on_Y worked examples") {
  Context ctx(3);
  PolyRing p3({"x", "y", "z", "w"});
  auto cone = VarietyPresentation::make(ideal(p3, {"x*y - z^2"}), ctx);
  auto r = bezout_on_Y(cone, {{1, parse_polynomial("x", p3), 2}, {1, parse_polynomial("y", p3), 2}}, ctx);
  CHECK(r.holds);
  CHECK(r.degree_y == 2);
  CHECK(r.total == ratio(1, 2));
  CHECK(r.chart == 3);
  Cycle expected(cone);
  expected.add(ratio(1, 2), PrimeComponent(ideal(p3, {"x", "y", "z"}), ctx));
  CHECK(r.product == expected);

  PolyRing p2({"x", "y", "z"});
  auto plane = VarietyPresentation::affine_space(p2);
  // Two conics through four rational points.
  auto conics = bezout_on_Y(plane,
                            {{2, parse_polynomial("x^2 - 3*y^2 - z^2", p2), 1},
                             {2, parse_polynomial("x*y - 2*y*z", p2), 1}},
                            ctx);
  CHECK(conics.holds);
  CHECK(conics.total == 4);

  PolyRing p1({"s", "t"});
  auto line = VarietyPresentation::affine_space(p1);
  auto pt = bezout_on_Y(line, {{1, parse_polynomial("s - 3*t", p1), 1}}, ctx);
  CHECK(pt.holds);
  CHECK(pt.total == 1);

  CHECK_THROWS_AS(bezout_on_Y(plane, {{1, parse_polynomial("x", p2), 1}, {1, parse_polynomial("2*x", p2), 1}}, ctx),
                  MathError);
  CHECK_THROWS_AS(bezout_on_Y(plane, {{2, parse_polynomial("x", p2), 1}}, ctx), MathError);
}

TEST_CASE("property: hypersurface degree and linearity of total_degree") {
  Context ctx(4);
  PolyRing p3({"x", "y", "z", "w"});
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 8; ++trial) {
    const unsigned d = 1 + gen() % 4;
    Polynomial f = pow(Polynomial::variable(p3, 0), d);
    for (std::size_t v = 1; v < 4; ++v) f += Rational(uniform_int(gen, -4, 4)) * pow(Polynomial::variable(p3, v), d);
    CHECK(projective_degree(Ideal(p3, {f}), ctx) == d);
    const Rational a = ratio(uniform_int(gen, 1, 9), uniform_int(gen, 1, 5));
    const Rational b = ratio(uniform_int(gen, 1, 9), uniform_int(gen, 1, 5));
    Cycle mu(VarietyPresentation::affine_space(p3)), nu(VarietyPresentation::affine_space(p3));
    mu.add(1, PrimeComponent(ideal(p3, {"x", "y"}), ctx));
    nu.add(1, PrimeComponent(ideal(p3, {"x", "y*z - w^2"}), ctx));
    CHECK(total_degree(cycle_add(cycle_scale(a, mu), cycle_scale(b, nu)), ctx) ==
          a * total_degree(mu, ctx) + b * total_degree(nu, ctx));
  }
}

TEST_CASE("property: classical Bezout on P^2 and chart independence") {
  PolyRing p2({"x", "y", "z"});
  auto plane = VarietyPresentation::affine_space(p2);
  std::mt19937_64 gen(12);
  int compared = 0;
  for (int trial = 0; trial < 5; ++trial) {
    Context ctx(static_cast<std::uint64_t>(trial));
    auto pair = testgen::random_rational_curve_pair(p2, gen);
    std::vector<BezoutSection> s{{pair.d1, pair.f1, 1}, {pair.d2, pair.f2, 1}};
    auto r = bezout_on_Y(plane, s, ctx);
    CHECK(r.holds);
    CHECK(r.total == pair.d1 * pair.d2);
    for (std::size_t chart = 0; chart < 3; ++chart) {
      if (chart == r.chart) continue;
      try {
        CHECK(bezout_on_Y(plane, s, ctx, chart).product == r.product);
        ++compared;
      } catch (const MathError&) {
        // A component at infinity of this chart.
      }
    }
  }
  CHECK(compared >= 5);
}
