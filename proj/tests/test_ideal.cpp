#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "propint/errors.hpp"
#include "propint/ideal.hpp"

using namespace propint;

namespace {

PolyRing xyz() { return PolyRing({"x", "y", "z"}); }

Ideal ideal(const PolyRing& R, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> ps;
  for (const char* g : gens) ps.push_back(parse_polynomial(g, R));
  return Ideal(R, std::move(ps));
}

std::vector<std::string> rendered(const GroebnerBasis& gb) {
  std::vector<std::string> out;
  for (const auto& g : gb.basis()) out.push_back(g.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

Polynomial random_poly(const PolyRing& ring, std::mt19937_64& gen, int terms, int max_exp) {
  std::vector<Term> out;
  std::uniform_int_distribution<int> e(0, max_exp), c(-5, 5);
  for (int k = 0; k < terms; ++k) {
    Monomial m(ring.arity());
    for (std::size_t i = 0; i < ring.arity(); ++i) m.set(i, static_cast<std::uint32_t>(e(gen)));
    out.push_back({m, c(gen)});
  }
  return Polynomial::from_terms(ring, std::move(out));
}

Monomial random_monomial(std::size_t n, std::mt19937_64& gen, int max_exp) {
  std::uniform_int_distribution<int> e(0, max_exp);
  Monomial m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, static_cast<std::uint32_t>(e(gen)));
  return m;
}

// Oracle: dimension of a monomial ideal is n minus the smallest variable set
// meeting the support of every generator.
int monomial_dimension_oracle(const std::vector<Monomial>& gens, std::size_t n) {
  int best = -1;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool hits = true;
    for (const auto& m : gens) hits = hits && (m.support() & s);
    if (hits) best = std::max(best, static_cast<int>(n) - __builtin_popcount(s));
  }
  return best;
}

// Oracle: lattice points of a box outside the monomial ideal.
std::uint64_t staircase_count(const std::vector<Monomial>& gens, std::size_t n, std::uint32_t box) {
  std::uint64_t count = 0;
  Monomial m(n);
  std::vector<std::uint32_t> e(n, 0);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) m.set(i, e[i]);
    bool inside = false;
    for (const auto& g : gens) inside = inside || g.divides(m);
    if (!inside) ++count;
    std::size_t i = 0;
    while (i < n && ++e[i] > box) e[i++] = 0;
    if (i == n) break;
  }
  return count;
}

}  // namespace

TEST_CASE("groebner: worked examples") {
  const auto R = xyz();
  auto gb = groebner(ideal(R, {"x*y - z^2", "x"}), MonomialOrder::grevlex());
  CHECK(rendered(gb) == std::vector<std::string>{"x", "z^2"});
  CHECK(gb.reduced());

  CHECK(rendered(groebner(ideal(R, {"x"}), MonomialOrder::grevlex())) == std::vector<std::string>{"x"});

  PolyRing xy({"x", "y"});
  auto gb3 = groebner(ideal(xy, {"x^2", "x*y", "y^2"}), MonomialOrder::lex());
  CHECK(rendered(gb3) == std::vector<std::string>{"x*y", "x^2", "y^2"});

  CHECK(groebner(ideal(R, {"x - 1", "x"}), MonomialOrder::grevlex()).is_unit());
  CHECK(groebner(Ideal(R), MonomialOrder::grevlex()).is_zero());
}

TEST_CASE("groebner: classical lex example (twisted cubic)") {
  PolyRing R({"t", "x", "y", "z"});
  auto gb = groebner(ideal(R, {"x - t", "y - t^2", "z - t^3"}), MonomialOrder::lex());
  // Elimination ideal of the twisted cubic.
  Ideal elim = eliminate(ideal(R, {"x - t", "y - t^2", "z - t^3"}), 1, *std::make_unique<Context>());
  auto e = groebner(elim, MonomialOrder::grevlex());
  CHECK(rendered(e) == std::vector<std::string>{"x*y - z", "x^2 - y", "y^2 - x*z"});
  // t - x, x^2 - y, x*y - z, x*z - y^2, y^3 - z^2
  CHECK(gb.basis().size() == 5);
}

TEST_CASE("groebner: step budget") {
  PolyRing R({"x", "y", "z"});
  Context ctx(0, 5);
  CHECK_THROWS_AS(groebner(ideal(R, {"x^3*y - z^4", "y^3*z - x^4", "x*y*z - 1"}), MonomialOrder::grevlex(), ctx),
                  ResourceLimit);
}

TEST_CASE("normal_form") {
  const auto R = xyz();
  auto gb = groebner(ideal(R, {"x", "z^2"}), MonomialOrder::grevlex());
  CHECK(normal_form(parse_polynomial("x*y", R), gb).is_zero());
  CHECK(normal_form(parse_polynomial("z", R), gb).to_string() == "z");
  CHECK(normal_form(parse_polynomial("z^3 + x", R), gb).is_zero());
  CHECK_THROWS_AS(normal_form(parse_polynomial("u", PolyRing({"u"})), gb), MathError);
}

TEST_CASE("ideal operations") {
  Context ctx;
  PolyRing xy({"x", "y"});
  CHECK(same_ideal(saturation(ideal(xy, {"x^2*y"}), ideal(xy, {"y"}), ctx), ideal(xy, {"x^2"}), ctx));
  CHECK(same_ideal(quotient(ideal(xy, {"x*y"}), ideal(xy, {"x"}), ctx), ideal(xy, {"y"}), ctx));
  PolyRing twz({"t", "w", "z"});
  Ideal cusp = eliminate(ideal(twz, {"w - t^2", "z - t^3"}), 1, ctx);
  CHECK(cusp.ring().variables() == std::vector<std::string>{"w", "z"});
  CHECK(same_ideal(cusp, ideal(cusp.ring(), {"z^2 - w^3"}), ctx));

  CHECK(same_ideal(intersection(ideal(xy, {"x"}), ideal(xy, {"y"}), ctx), ideal(xy, {"x*y"}), ctx));
  CHECK(same_ideal(ideal_product(ideal(xy, {"x", "y"}), ideal(xy, {"x", "y"})), ideal(xy, {"x^2", "x*y", "y^2"}),
                   ctx));
  CHECK(same_ideal(ideal_sum(ideal(xy, {"x"}), ideal(xy, {"y"})), ideal(xy, {"y", "x"}), ctx));
  // Saturating away an embedded point.
  CHECK(same_ideal(saturation(ideal(xy, {"x^2", "x*y"}), ideal(xy, {"x", "y"}), ctx), ideal(xy, {"x"}), ctx));
}

TEST_CASE("dimension") {
  Context ctx;
  const auto R = xyz();
  CHECK(dimension(ideal(R, {"x*y - z^2"}), ctx) == 2);
  CHECK(dimension(ideal(R, {"x", "z^2"}), ctx) == 1);
  CHECK(dimension(ideal(R, {"x", "y", "z"}), ctx) == 0);
  CHECK(dimension(ideal(R, {"1"}), ctx) == kEmptyDimension);
  CHECK(dimension(Ideal(R), ctx) == 3);
}

TEST_CASE("colength") {
  Context ctx;
  const auto R = xyz();
  CHECK(colength(ideal(R, {"x", "y", "z^2"}), ctx) == 2);
  PolyRing uv({"u", "v"});
  CHECK(colength(ideal(uv, {"u^2", "v^2"}), ctx) == 4);
  PolyRing xy({"x", "y"});
  CHECK(colength(ideal(xy, {"x*y", "x + y^2"}), ctx) == 3);
  CHECK_THROWS_AS(colength(ideal(R, {"x"}), ctx), MathError);
}

TEST_CASE("hilbert and projective degree") {
  Context ctx;
  PolyRing P3({"x0", "x1", "x2", "x3"});
  auto h = hilbert(ideal(P3, {"x0*x1 - x2^2"}), ctx);
  CHECK(h.degree == 2);
  CHECK(h.dimension == 3);
  PolyRing P2({"x0", "x1", "x2"});
  CHECK(projective_degree(ideal(P2, {"x0", "x1"}), ctx) == 1);
  CHECK(projective_degree(Ideal(P2), ctx) == 1);
  CHECK_THROWS_AS(hilbert(ideal(P2, {"x0 + 1"}), ctx), MathError);
  // Twisted cubic in P^3 has degree 3.
  CHECK(projective_degree(ideal(P3, {"x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"}), ctx) == 3);
}

TEST_CASE("radical membership") {
  Context ctx;
  const auto R = xyz();
  CHECK(radical_membership(parse_polynomial("z", R), ideal(R, {"x", "z^2"}), ctx));
  CHECK_FALSE(radical_membership(parse_polynomial("y", R), ideal(R, {"x", "z^2"}), ctx));
  CHECK(radical_membership(parse_polynomial("x*y + 17", R), Ideal::unit(R), ctx));
}

TEST_CASE("property: groebner is idempotent and deterministic") {
  const auto R = xyz();
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 25; ++trial) {
    Ideal I(R, {random_poly(R, gen, 3, 2), random_poly(R, gen, 3, 2)});
    for (auto order : {MonomialOrder::grevlex(), MonomialOrder::lex()}) {
      Context a, b;
      auto g1 = groebner(I, order, a);
      auto g2 = groebner(I, order, b);
      CHECK(g1 == g2);
      CHECK(groebner(g1.ideal(), order) == g1);
      for (const auto& f : I.generators()) CHECK(g1.contains(f));
    }
  }
}

TEST_CASE("property: membership agrees with cofactor reconstruction") {
  const auto R = xyz();
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 25; ++trial) {
    Polynomial f = random_poly(R, gen, 3, 2), g = random_poly(R, gen, 3, 2);
    Ideal I(R, {f, g});
    auto gb = groebner(I, MonomialOrder::grevlex());
    Polynomial member = random_poly(R, gen, 2, 2) * f + random_poly(R, gen, 2, 2) * g;
    CHECK(gb.contains(member));
    if (!gb.is_unit()) {
      // Adding a standard monomial takes it out of the ideal.
      Polynomial nf = gb.normal_form(random_poly(R, gen, 3, 3));
      if (!nf.is_zero()) CHECK_FALSE(gb.contains(member + nf));
    }
  }
}

TEST_CASE("property: dimension and colength of monomial ideals match combinatorics") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + trial % 2;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    PolyRing R(names);
    std::vector<Monomial> gens;
    std::vector<Polynomial> polys;
    const int count = 1 + static_cast<int>(gen() % 4);
    for (int k = 0; k < count; ++k) {
      Monomial m = random_monomial(n, gen, 3);
      if (m.is_one()) m.set(0, 1);
      gens.push_back(m);
      polys.push_back(Polynomial::term(R, m, 1));
    }
    // Pure powers make some trials zero-dimensional.
    if (trial % 3 == 0) {
      for (std::size_t i = 0; i < n; ++i) {
        Monomial m(n);
        m.set(i, 1 + static_cast<std::uint32_t>(gen() % 3));
        gens.push_back(m);
        polys.push_back(Polynomial::term(R, m, 1));
      }
    }
    Context ctx;
    Ideal I(R, polys);
    const int dim = dimension(I, ctx);
    CHECK(dim == monomial_dimension_oracle(gens, n));
    if (dim == 0) {
      auto c = colength(I, ctx);
      CHECK(c == staircase_count(gens, n, 4));
      CHECK(standard_monomials(groebner(I, MonomialOrder::lex())).size() == c);
    }
  }
}

TEST_CASE("property: colength is independent of the monomial order") {
  PolyRing xy({"x", "y"});
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    Ideal I(xy, {random_poly(xy, gen, 3, 2) + parse_polynomial("x^3", xy),
                 random_poly(xy, gen, 3, 2) + parse_polynomial("y^3", xy)});
    Context ctx;
    if (dimension(I, ctx) != 0) continue;
    auto grevlex_count = standard_monomials(groebner(I, MonomialOrder::grevlex())).size();
    auto lex_count = standard_monomials(groebner(I, MonomialOrder::lex())).size();
    CHECK(grevlex_count == lex_count);
  }
}

TEST_CASE("property: hilbert degrees of linear spaces and hypersurfaces") {
  PolyRing P3({"x0", "x1", "x2", "x3"});
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 10; ++trial) {
    Context ctx;
    std::vector<Polynomial> lin;
    for (int k = 0; k < 2; ++k) {
      Polynomial l(P3);
      for (std::size_t i = 0; i < 4; ++i)
        l += Polynomial::term(P3, Monomial::from_exponents(std::vector<std::uint32_t>{i == 0, i == 1, i == 2, i == 3}),
                              static_cast<int>(gen() % 11) - 5);
      lin.push_back(l);
    }
    Ideal L(P3, lin);
    if (dimension(L, ctx) == 2) CHECK(projective_degree(L, ctx) == 1);
    const unsigned d = 1 + static_cast<unsigned>(trial % 4);
    Polynomial f = pow(parse_polynomial("x0 + 2*x1 - x3", P3), d) + pow(parse_polynomial("x2", P3), d) +
                   pow(parse_polynomial("x1", P3), d);
    CHECK(projective_degree(Ideal(P3, {f}), ctx) == d);
  }
}
