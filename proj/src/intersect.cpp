#include "propint/intersect.hpp"

#include <functional>

#include "propint/errors.hpp"

namespace propint {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

std::string tuple_text(const TupleSection& t) {
  std::vector<std::string> parts;
  for (const auto& e : t.entries) parts.push_back(e.to_string());
  return "(" + join(parts, ", ") + ")";
}

void require_same_variety(const VarietyPresentation& a, const VarietyPresentation& b) {
  if (!(a.ring() == b.ring()) || a.defining.to_string() != b.defining.to_string())
    throw MathError("factors live on different varieties");
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m, const PolyRing& ring) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(ring, 1);
  if (n == 1) return m[0][0];
  Polynomial det(ring);
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][col] * determinant(minor, ring);
    if (col % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == k) {
      fn(pick);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

}  // namespace

RECyclePresentation RECyclePresentation::single(const Rational& weight, TupleSection tuple) {
  RECyclePresentation r;
  r.variety = tuple.variety;
  r.summands.push_back({weight, std::move(tuple)});
  return r;
}

RECyclePresentation RECyclePresentation::sum(const RECyclePresentation& a, const RECyclePresentation& b) {
  require_same_variety(a.variety, b.variety);
  RECyclePresentation r = a;
  r.summands.insert(r.summands.end(), b.summands.begin(), b.summands.end());
  return r;
}

RECyclePresentation RECyclePresentation::scaled(const Rational& q) const {
  if (q <= 0) throw MathError("RE-cycles are scaled by positive rationals only");
  RECyclePresentation r = *this;
  for (auto& s : r.summands) s.weight *= q;
  return r;
}

void RECyclePresentation::validate(Context& ctx) const {
  for (const auto& s : summands) {
    if (s.weight <= 0) throw MathError("RE summand weight " + s.weight.get_str() + " is not positive");
    if (!is_regular_intersection(s.tuple, ctx))
      throw MathError("RE summand tuple " + tuple_text(s.tuple) + " is not a regular intersection on Y");
  }
}

Cycle RECyclePresentation::realize(Context& ctx) const {
  Cycle out(variety);
  for (const auto& s : summands) out = cycle_add(out, cycle_scale(s.weight, fundamental_cycle(s.tuple, ctx).cycle));
  return out;
}

std::string ProperCertificate::text() const {
  std::vector<std::string> parts;
  for (int c : codims) parts.push_back(c < 0 ? "empty" : std::to_string(c));
  const std::string sum = join(parts, " + ");
  if (!achieved) return "intersection is empty: proper (" + sum + ")";
  if (proper) return "codim " + std::to_string(*achieved) + " = " + sum;
  return "not proper: achieved codim " + std::to_string(*achieved) + " != " + sum + " = " + std::to_string(expected);
}

ProperCertificate check_proper(const VarietyPresentation& y, const std::vector<Ideal>& ideals, Context& ctx) {
  ProperCertificate cert;
  Ideal total(y.ring());
  for (const auto& j : ideals) {
    auto c = codim_in(y, j, ctx);
    cert.codims.push_back(c ? *c : -1);
    if (c) cert.expected += *c;
    total = ideal_sum(total, j);
  }
  cert.achieved = codim_in(y, total, ctx);
  cert.proper = !cert.achieved || *cert.achieved == cert.expected;
  return cert;
}

std::string route_name(Route r) {
  switch (r) {
    case Route::re_sum: return "re-sum";
    case Route::q_cartier: return "q-cartier";
    case Route::representatives: return "representatives";
    case Route::ideal_cycle: return "ideal-cycle";
    case Route::diagonal: return "diagonal";
  }
  return "unknown";
}

RECyclePresentation re_product(const RECyclePresentation& a, const RECyclePresentation& b, Context& ctx,
                               std::vector<std::string>* certificate) {
  require_same_variety(a.variety, b.variety);
  a.validate(ctx);
  b.validate(ctx);
  RECyclePresentation out;
  out.variety = a.variety;
  for (const auto& sa : a.summands)
    for (const auto& sb : b.summands) {
      ProperCertificate cert = check_proper(a.variety, {sa.tuple.ideal(), sb.tuple.ideal()}, ctx);
      const std::string pair = tuple_text(sa.tuple) + " x " + tuple_text(sb.tuple);
      if (!cert.proper) throw MathError("pair " + pair + " does not intersect properly: " + cert.text());
      if (certificate) certificate->push_back(pair + ": " + cert.text());
      out.summands.push_back({sa.weight * sb.weight, concatenate(sa.tuple, sb.tuple)});
    }
  return out;
}

ProductReport intersect_re(const RECyclePresentation& a, const RECyclePresentation& b, Context& ctx) {
  ProductReport report;
  report.route = Route::re_sum;
  RECyclePresentation prod = re_product(a, b, ctx, &report.certificate);
  report.cycle = prod.realize(ctx);
  for (const auto& line : report.certificate) ctx.certify(line);
  return report;
}

ProductReport intersect_qcartier(const VarietyPresentation& y, const Polynomial& f1, unsigned q1,
                                 const Polynomial& f2, unsigned q2, Context& ctx) {
  if (q1 == 0 || q2 == 0) throw MathError("Q-Cartier multipliers must be positive");
  ProductReport report;
  report.route = Route::q_cartier;
  const TupleSection t1 = TupleSection::of(y, {f1}), t2 = TupleSection::of(y, {f2});
  ProperCertificate cert = check_proper(y, {t1.ideal(), t2.ideal()}, ctx);
  const std::string pair = tuple_text(t1) + " x " + tuple_text(t2);
  if (!cert.proper) throw MathError("pair " + pair + " does not intersect properly: " + cert.text());
  report.certificate.push_back(pair + ": " + cert.text());
  const Rational scale(1, static_cast<unsigned long>(q1) * q2);
  report.cycle = cycle_scale(scale, fundamental_cycle(concatenate(t1, t2), ctx).cycle);
  for (const auto& line : report.certificate) ctx.certify(line);
  return report;
}

bool verify_smooth(const VarietyPresentation& y, Context& ctx) {
  const PolyRing& ring = y.ring();
  const std::size_t n = ring.arity();
  const auto& gens = y.defining.generators();
  if (gens.empty()) return true;
  const std::size_t c = n - static_cast<std::size_t>(y.dim);
  if (c > gens.size()) return false;
  std::vector<std::vector<Polynomial>> jac;
  for (const auto& g : gens) {
    std::vector<Polynomial> row;
    for (std::size_t v = 0; v < n; ++v) row.push_back(derivative(g, v));
    jac.push_back(std::move(row));
  }
  std::vector<Polynomial> singular = gens;
  for_each_subset(gens.size(), c, [&](const std::vector<std::size_t>& rows) {
    for_each_subset(n, c, [&](const std::vector<std::size_t>& cols) {
      std::vector<std::vector<Polynomial>> m;
      for (auto r : rows) {
        std::vector<Polynomial> row;
        for (auto col : cols) row.push_back(jac[r][col]);
        m.push_back(std::move(row));
      }
      singular.push_back(determinant(m, ring));
    });
  });
  return is_unit_ideal(Ideal(ring, std::move(singular)), ctx);
}

ProductReport intersect_via_representatives(const RepresentativeSet& r, Context& ctx) {
  if (!r.ambient.asserted_smooth) throw MathError("ambient is not asserted smooth");
  if (!(r.ambient.ring() == r.y.ring())) throw MathError("Y and the ambient live in different rings");
  if (!ideal_contains(r.y.defining, r.ambient.defining, ctx)) throw MathError("Y is not contained in the ambient");
  ProductReport report;
  report.route = Route::representatives;
  report.cycle = Cycle(r.y);
  for (const auto& rep : r.reps) {
    require_same_variety(rep.variety, r.ambient);
    rep.validate(ctx);
  }

  // One summand from each representative per combination.
  std::vector<std::size_t> pick(r.reps.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i < r.reps.size()) {
      for (pick[i] = 0; pick[i] < r.reps[i].summands.size(); ++pick[i]) rec(i + 1);
      return;
    }
    Rational weight = 1;
    std::vector<Ideal> ideals;
    std::vector<Polynomial> entries;
    std::vector<std::string> names;
    for (std::size_t k = 0; k < r.reps.size(); ++k) {
      const RESummand& s = r.reps[k].summands[pick[k]];
      weight *= s.weight;
      ideals.push_back(s.tuple.ideal());
      entries.insert(entries.end(), s.tuple.entries.begin(), s.tuple.entries.end());
      names.push_back(tuple_text(s.tuple));
    }
    ideals.push_back(r.y.defining);
    names.push_back("I_Y");
    ProperCertificate cert = check_proper(r.ambient, ideals, ctx);
    const std::string label = join(names, " x ");
    if (!cert.proper) throw MathError("representatives " + label + " do not intersect properly: " + cert.text());
    report.certificate.push_back(label + ": " + cert.text());
    const Cycle part = fundamental_cycle(TupleSection::of(r.y, entries), ctx).cycle;
    report.cycle = cycle_add(report.cycle, cycle_scale(weight, part));
  };
  rec(0);
  for (const auto& line : report.certificate) ctx.certify(line);
  return report;
}

ProductReport intersect_ideal_cycle(const TupleSection& f, const Cycle& mu, Context& ctx) {
  require_same_variety(f.variety, mu.variety());
  ProductReport report;
  report.route = Route::ideal_cycle;
  report.cycle = Cycle(mu.variety());
  const int kappa = static_cast<int>(f.entries.size());
  for (const auto& term : mu.terms()) {
    const PrimeComponent& z = term.component;
    VarietyPresentation zv;
    zv.defining = z.prime();
    zv.dim = z.dim();
    const TupleSection restricted = TupleSection::of(zv, f.entries);
    const auto codim = codim_in(zv, restricted.ideal(), ctx);
    const std::string label = tuple_text(f) + " on " + z.prime().to_string();
    if (codim && *codim != kappa)
      throw MathError(label + " is not proper: codim " + std::to_string(*codim) + " != " + std::to_string(kappa));
    report.certificate.push_back(label + ": " + (codim ? "codim " + std::to_string(*codim) : "empty"));
    if (!codim) continue;
    const Cycle part = fundamental_cycle(restricted, ctx).cycle;
    for (const auto& t : part.terms())
      report.cycle.add(term.coeff * t.coeff, t.component);
  }
  const std::string caveat = "depends on ideal presentation";
  report.caveats.push_back(caveat);
  ctx.caveat(caveat);
  for (const auto& line : report.certificate) ctx.certify(line);
  return report;
}

ProductReport diagonal_crosscheck(const VarietyPresentation& ambient, const RECyclePresentation& mu1,
                                  const RECyclePresentation& mu2, Context& ctx) {
  if (!ambient.defining.is_zero())
    throw MathError("the diagonal route is implemented for an affine-space ambient");
  require_same_variety(mu1.variety, ambient);
  require_same_variety(mu2.variety, ambient);
  const ProductReport direct = intersect_re(mu1, mu2, ctx);

  const PolyRing& ring = ambient.ring();
  const std::size_t n = ring.arity();
  std::vector<std::string> primed;
  PolyRing scratch = ring;
  for (std::size_t i = 0; i < n; ++i) {
    primed.push_back(scratch.fresh_name(ring.name(i) + "_d"));
    scratch = prepend_variables(scratch, std::vector<std::string>{primed.back()});
  }
  // Doubled ring: x' first, so eliminating the first n variables projects to x.
  const PolyRing doubled = prepend_variables(ring, primed);
  const VarietyPresentation space = VarietyPresentation::affine_space(doubled);
  std::vector<std::size_t> to_primed(n), to_plain(n);
  for (std::size_t i = 0; i < n; ++i) {
    to_primed[i] = i;
    to_plain[i] = n + i;
  }
  std::vector<Polynomial> eta;
  for (std::size_t i = 0; i < n; ++i)
    eta.push_back(Polynomial::variable(doubled, n + i) - Polynomial::variable(doubled, i));

  ProductReport report;
  report.route = Route::diagonal;
  report.cycle = Cycle(ambient);
  for (const auto& s1 : mu1.summands)
    for (const auto& s2 : mu2.summands) {
      std::vector<Polynomial> entries;
      for (const auto& e : s2.tuple.entries) entries.push_back(remap(e, doubled, to_plain));
      for (const auto& e : s1.tuple.entries) entries.push_back(remap(e, doubled, to_primed));
      entries.insert(entries.end(), eta.begin(), eta.end());
      const TupleSection t = TupleSection::of(space, entries);
      const std::string label = tuple_text(s2.tuple) + "(x) + " + tuple_text(s1.tuple) + "(x') + eta";
      if (!is_regular_intersection(t, ctx))
        throw MathError(label + " is not a regular intersection on the doubled space");
      report.certificate.push_back(label + ": regular with " + std::to_string(entries.size()) + " entries");
      const Cycle part = fundamental_cycle(t, ctx).cycle;
      for (const auto& term : part.terms()) {
        const Ideal projected = move_to_ring(eliminate(term.component.prime(), n, ctx), ring);
        report.cycle.add(s1.weight * s2.weight * term.coeff, PrimeComponent(projected, ctx));
      }
    }
  if (!(report.cycle == direct.cycle))
    throw MathError("internal inconsistency: diagonal route gives " + report.cycle.to_string() + " but intersect_re gives " +
                    direct.cycle.to_string());
  report.certificate.insert(report.certificate.end(), direct.certificate.begin(), direct.certificate.end());
  report.certificate.push_back("diagonal route agrees with intersect_re");
  for (const auto& line : report.certificate) ctx.certify(line);
  return report;
}

}  // namespace propint
