#include "propint/projective.hpp"

#include "propint/errors.hpp"

namespace propint {

bool is_homogeneous_ideal(const Ideal& ideal, Context& ctx) {
  for (const auto& g : groebner(ideal, MonomialOrder::grevlex(), ctx).basis())
    if (!g.is_homogeneous()) return false;
  return true;
}

Rational total_degree(const ProjectiveCycle& mu, Context& ctx) {
  Rational total = 0;
  for (const auto& t : mu.terms()) {
    const Ideal& p = t.component.prime();
    if (!is_homogeneous_ideal(p, ctx)) throw MathError("component " + p.to_string() + " is not homogeneous");
    if (t.component.dim() == 0) throw MathError("component " + p.to_string() + " is empty in projective space");
    total += t.coeff * Rational(projective_degree(p, ctx));
  }
  return total;
}

Ideal dehomogenize_ideal(const Ideal& homogeneous, std::size_t chart) {
  if (chart >= homogeneous.ring().arity()) throw MathError("chart index out of range");
  std::vector<std::string> names = homogeneous.ring().variables();
  names.erase(names.begin() + static_cast<std::ptrdiff_t>(chart));
  const PolyRing affine(names);
  std::vector<Polynomial> gens;
  for (const auto& g : homogeneous.generators()) gens.push_back(move_to_ring(dehomogenize(g, chart), affine));
  return Ideal(affine, std::move(gens));
}

Ideal homogenize_ideal(const Ideal& affine, const PolyRing& projective, std::size_t chart, Context& ctx) {
  const std::string& h = projective.name(chart);
  std::vector<Polynomial> gens;
  // A grevlex basis homogenizes to generators of the closure.
  for (const auto& g : groebner(affine, MonomialOrder::grevlex(), ctx).basis())
    gens.push_back(move_to_ring(homogenize(g, h, chart), projective));
  return Ideal(projective, std::move(gens));
}

std::optional<std::size_t> select_chart(const Ideal& homogeneous, Context& ctx) {
  const int d = dimension(homogeneous, ctx);
  const PolyRing& ring = homogeneous.ring();
  if (d <= 0) return 0;
  for (std::size_t i = 0; i < ring.arity(); ++i) {
    std::vector<Polynomial> gens = homogeneous.generators();
    gens.push_back(Polynomial::variable(ring, i));
    if (dimension(Ideal(ring, std::move(gens)), ctx) < d) return i;
  }
  return std::nullopt;
}

BezoutReport bezout_on_Y(const VarietyPresentation& y, const std::vector<BezoutSection>& sections, Context& ctx,
                         std::optional<std::size_t> chart) {
  const PolyRing& ring = y.ring();
  if (!is_homogeneous_ideal(y.defining, ctx)) throw MathError("Y is not given by a homogeneous ideal");
  if (sections.empty()) throw MathError("bezout_on_Y needs at least one section");
  if (static_cast<int>(sections.size()) > y.dim - 1)
    throw MathError("more sections than the projective dimension of Y");
  std::vector<Polynomial> k = y.defining.generators();
  for (const auto& s : sections) {
    if (!(s.form.ring() == ring)) throw MathError("section " + s.form.to_string() + " is not in the ring of Y");
    if (s.form.is_zero() || !s.form.is_homogeneous() || s.form.total_degree() != s.degree)
      throw MathError("section " + s.form.to_string() + " is not homogeneous of degree " + std::to_string(s.degree));
    if (s.q == 0) throw MathError("section multiplier q must be positive");
    k.push_back(s.form);
  }
  const Ideal meet(ring, std::move(k));

  BezoutReport report;
  if (chart) {
    std::vector<Polynomial> gens = meet.generators();
    gens.push_back(Polynomial::variable(ring, *chart));
    const int d = dimension(meet, ctx);
    if (d > 0 && dimension(Ideal(ring, std::move(gens)), ctx) >= d)
      throw MathError("a component lies at infinity of chart " + ring.name(*chart));
    report.chart = *chart;
  } else {
    auto c = select_chart(meet, ctx);
    if (!c) throw MathError("no standard chart meets every component; re-chart with a linear change of coordinates");
    report.chart = *c;
  }
  const std::size_t i = report.chart;
  report.certificate.push_back("chart " + ring.name(i) + " = 1 meets every component");

  const VarietyPresentation affine = VarietyPresentation::make(dehomogenize_ideal(y.defining, i), ctx);
  RECyclePresentation acc = RECyclePresentation::single(1, TupleSection::of(affine, {}));
  for (const auto& s : sections) {
    auto next = RECyclePresentation::single(ratio(1, s.q),
                                            TupleSection::of(affine, {move_to_ring(dehomogenize(s.form, i),
                                                                                   affine.ring())}));
    acc = re_product(acc, next, ctx, &report.certificate);
  }
  const Cycle local = acc.realize(ctx);
  report.product = Cycle(y);
  for (const auto& t : local.terms())
    report.product.add(t.coeff, PrimeComponent(homogenize_ideal(t.component.prime(), ring, i, ctx), ctx));

  report.degree_y = projective_degree(y.defining, ctx);
  report.total = total_degree(report.product, ctx);
  report.expected = Rational(report.degree_y);
  for (const auto& s : sections) report.expected *= ratio(s.degree, s.q);
  report.holds = report.total == report.expected;
  report.certificate.push_back("total degree " + to_string(report.total) + ", expected " +
                               to_string(report.expected));
  for (const auto& line : report.certificate) ctx.certify(line);
  return report;
}

}  // namespace propint
