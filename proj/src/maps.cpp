#include "propint/maps.hpp"

#include "propint/errors.hpp"
#include "propint/intersect.hpp"

namespace propint {

namespace {

constexpr int kDegreeSeeds = 3;

// Source variables renamed away from the target names, followed by the target
// variables, so that eliminating the first block projects onto the target.
struct GraphRing {
  PolyRing ring;
  std::vector<std::size_t> source_index;
};

GraphRing graph_ring(const PolyRing& source, const PolyRing& target) {
  std::vector<std::string> names;
  PolyRing scratch = target;
  for (const auto& v : source.variables()) {
    names.push_back(scratch.fresh_name(v));
    scratch = prepend_variables(scratch, std::vector<std::string>{names.back()});
  }
  GraphRing g{prepend_variables(target, names), {}};
  for (std::size_t i = 0; i < source.arity(); ++i) g.source_index.push_back(i);
  return g;
}

}  // namespace

void FiniteMapPresentation::validate(Context& ctx) const {
  if (component_fns.size() != target.ring().arity())
    throw MathError("map has " + std::to_string(component_fns.size()) + " components for " +
                    std::to_string(target.ring().arity()) + " target variables");
  for (const auto& f : component_fns)
    if (!(f.ring() == source.ring())) throw MathError("map component " + f.to_string() + " is not in the source ring");
  GroebnerBasis gb = groebner(source.defining, MonomialOrder::grevlex(), ctx);
  for (const auto& g : target.defining.generators())
    if (!gb.contains(pullback(g)))
      throw MathError("map does not land in the target: " + g.to_string() + " does not pull back into I_source");
}

Polynomial FiniteMapPresentation::pullback(const Polynomial& g) const {
  return substitute(move_to_ring(g, target.ring()), source.ring(), component_fns);
}

TupleSection FiniteMapPresentation::pullback(const TupleSection& t) const {
  std::vector<Polynomial> entries;
  for (const auto& e : t.entries) entries.push_back(pullback(e));
  return TupleSection::of(source, std::move(entries));
}

Ideal image_ideal(const FiniteMapPresentation& m, const PrimeComponent& c, Context& ctx) {
  const PolyRing& target = m.target.ring();
  const GraphRing g = graph_ring(m.source.ring(), target);
  std::vector<Polynomial> gens;
  for (const auto& p : c.prime().generators()) gens.push_back(remap(p, g.ring, g.source_index));
  for (std::size_t j = 0; j < m.component_fns.size(); ++j)
    gens.push_back(Polynomial::variable(g.ring, m.source.ring().arity() + j) -
                   remap(m.component_fns[j], g.ring, g.source_index));
  return move_to_ring(eliminate(Ideal(g.ring, std::move(gens)), m.source.ring().arity(), ctx), target);
}

DegreeCertificate generic_degree(const FiniteMapPresentation& m, const PrimeComponent& c, Context& ctx) {
  const int image_dim = dimension(image_ideal(m, c, ctx), ctx);
  if (image_dim != c.dim())
    throw MathError("map is not generically finite on " + c.prime().to_string() + ": image has dimension " +
                    std::to_string(image_dim) + ", component " + std::to_string(c.dim()));
  const PolyRing& ring = m.source.ring();
  std::vector<DegreeCertificate> seen;
  for (int trial = 0; trial < kDegreeSeeds; ++trial) {
    DegreeCertificate cert;
    cert.sample_point = witness_point(c, ctx);
    std::vector<Polynomial> gens = c.prime().generators();
    for (const auto& f : m.component_fns)
      gens.push_back(f - Polynomial::constant(ring, f.evaluate(cert.sample_point)));
    GroebnerBasis gb = groebner(Ideal(ring, std::move(gens)), MonomialOrder::grevlex(), ctx);
    if (dimension(gb) != 0) throw MathError("fiber through the sample point is not finite");
    cert.fiber_colength = colength(gb);
    cert.degree = cert.fiber_colength;
    seen.push_back(std::move(cert));
  }
  for (const auto& s : seen)
    if (s.degree != seen.front().degree) {
      std::string values;
      for (const auto& t : seen) values += (values.empty() ? "" : ", ") + std::to_string(t.degree);
      throw MathError("generic degree is unstable across seeds: " + values);
    }
  ctx.certify("generic degree of the map on " + c.prime().to_string() + " = " + std::to_string(seen.front().degree));
  return seen.front();
}

Cycle pushforward_cycle(const FiniteMapPresentation& m, const Cycle& mu, Context& ctx) {
  if (!(mu.variety().ring() == m.source.ring())) throw MathError("cycle does not live on the source");
  Cycle out(m.target);
  for (const auto& term : mu.terms()) {
    const Ideal image = image_ideal(m, term.component, ctx);
    if (dimension(image, ctx) < term.component.dim()) {
      ctx.certify("image of " + term.component.prime().to_string() + " drops dimension; term contributes 0");
      continue;
    }
    const DegreeCertificate d = generic_degree(m, term.component, ctx);
    PrimeComponent z(image, ctx);
    if (term.component.point) {
      PointSpec p;
      for (const auto& f : m.component_fns) p.push_back(f.evaluate(*term.component.point));
      z.point = std::move(p);
    }
    out.add(term.coeff * static_cast<unsigned long>(d.degree), z);
  }
  return out;
}

Cycle local_model_product(const FiniteMapPresentation& q, const TupleSection& f1, const TupleSection& f2,
                          Context& ctx) {
  if (!q.source.asserted_smooth) throw MathError("local model source is not asserted smooth");
  q.validate(ctx);
  const TupleSection p1 = q.pullback(f1), p2 = q.pullback(f2);
  ProperCertificate cert = check_proper(q.source, {p1.ideal(), p2.ideal()}, ctx);
  if (!cert.proper) throw MathError("pullbacks do not intersect properly on the source: " + cert.text());
  ctx.certify("pullbacks on the source: " + cert.text());
  const Cycle upstairs = fundamental_cycle(concatenate(p1, p2), ctx).cycle;
  const DegreeCertificate d = generic_degree(q, PrimeComponent(q.source.defining, ctx), ctx);
  return cycle_scale(Rational(1UL, static_cast<unsigned long>(d.degree)), pushforward_cycle(q, upstairs, ctx));
}

}  // namespace propint
