#include "propint/fundamental_cycle.hpp"

#include <algorithm>

#include "propint/errors.hpp"

namespace propint {

namespace {

constexpr std::int64_t kCombinationBox = 10'000;
constexpr int kBaseTrials = 3;
constexpr int kStabilityTrials = 3;
constexpr int kTrialRetries = 5;

}  // namespace

Ideal TupleSection::ideal() const { return Ideal(variety.ring(), entries); }

void TupleSection::validate(Context& ctx) const {
  GroebnerBasis gb = groebner(variety.defining, MonomialOrder::grevlex(), ctx);
  for (const auto& e : entries) {
    if (!(e.ring() == variety.ring())) throw MathError("tuple entry " + e.to_string() + " is not in the ring of Y");
    if (gb.contains(e)) throw MathError("tuple entry " + e.to_string() + " vanishes identically on Y");
  }
}

TupleSection TupleSection::of(const VarietyPresentation& y, std::vector<Polynomial> entries) {
  TupleSection t;
  t.variety = y;
  for (auto& e : entries) t.entries.push_back(e.ring() == y.ring() ? std::move(e) : move_to_ring(e, y.ring()));
  t.declared_codim = static_cast<int>(t.entries.size());
  return t;
}

TupleSection TupleSection::parse(const VarietyPresentation& y, const std::vector<std::string>& entries) {
  std::vector<Polynomial> ps;
  for (const auto& e : entries) ps.push_back(parse_polynomial(e, y.ring()));
  return of(y, std::move(ps));
}

TupleSection concatenate(const TupleSection& a, const TupleSection& b) {
  if (!(a.variety.ring() == b.variety.ring())) throw MathError("tuples live on different varieties");
  TupleSection t = a;
  t.entries.insert(t.entries.end(), b.entries.begin(), b.entries.end());
  t.declared_codim = a.declared_codim + b.declared_codim;
  return t;
}

bool is_regular_intersection(const TupleSection& f, Context& ctx) {
  auto codim = codim_in(f.variety, f.ideal(), ctx);
  return !codim || *codim == static_cast<int>(f.entries.size());
}

FundamentalCycleResult fundamental_cycle(const TupleSection& f, Context& ctx,
                                         const std::optional<std::vector<PrimeComponent>>& candidates) {
  f.validate(ctx);
  FundamentalCycleResult result;
  result.cycle = Cycle(f.variety);
  auto codim = codim_in(f.variety, f.ideal(), ctx);
  const int k = static_cast<int>(f.entries.size());
  if (codim && *codim != k)
    throw MathError("tuple " + f.ideal().to_string() + " is not a regular intersection on Y: codimension " +
                    std::to_string(*codim) + " with " + std::to_string(k) + " entries");
  result.regular = true;
  if (!codim) {
    result.log.push_back("V(I_Y + J) is empty");
    return result;
  }
  result.log.push_back("codim_in(Y, " + f.ideal().to_string() + ") = " + std::to_string(*codim));
  for (const auto& z : resolve_components(f.variety, f.ideal(), candidates, ctx)) {
    const std::uint64_t m = multiplicity_along(f.variety, f.ideal(), z, ctx);
    result.log.push_back("length along " + z.prime().to_string() + " = " + std::to_string(m));
    result.cycle.add(Rational(static_cast<unsigned long>(m)), z);
  }
  for (const auto& line : result.log) ctx.certify(line);
  return result;
}

bool is_nonzerodivisor(const VarietyPresentation& y, const Polynomial& f, Context& ctx) {
  if (y.defining.is_zero()) return !f.is_zero();
  return same_ideal(quotient(y.defining, f, ctx), y.defining, ctx);
}

FundamentalCycleResult divisor(const TupleSection& f, Context& ctx,
                               const std::optional<std::vector<PrimeComponent>>& candidates) {
  if (f.entries.size() != 1) throw MathError("divisor expects a single entry");
  if (!is_nonzerodivisor(f.variety, f.entries[0], ctx))
    throw MathError(f.entries[0].to_string() + " is a zero divisor on Y");
  ctx.certify("nonzerodivisor: I_Y : (" + f.entries[0].to_string() + ") = I_Y");
  return fundamental_cycle(f, ctx, candidates);
}

Cycle m_class(const TupleSection& f, int kappa, const PointSpec& p, Context& ctx) {
  const VarietyPresentation& y = f.variety;
  if (kappa != y.dim)
    throw MathError("m_class is offered at isolated points only: kappa " + std::to_string(kappa) +
                    " differs from dim Y = " + std::to_string(y.dim));
  if (f.entries.empty()) throw MathError("m_class needs at least one entry");
  const Ideal k = ideal_sum(y.defining, f.ideal());
  if (local_length(k, p, ctx) == 0) throw MathError("point is not in V(I_Y + (f))");
  const PolyRing& ring = y.ring();

  auto trial = [&](int index) {
    for (int attempt = 0; attempt < kTrialRetries; ++attempt) {
      const std::uint64_t seed = ctx.next_seed();
      std::mt19937_64 gen(seed);
      std::vector<Polynomial> combos;
      for (int c = 0; c < kappa; ++c) {
        Polynomial g(ring);
        for (const auto& e : f.entries) g += Rational(uniform_int(gen, -kCombinationBox, kCombinationBox)) * e;
        combos.push_back(std::move(g));
      }
      std::vector<Polynomial> gens = y.defining.generators();
      gens.insert(gens.end(), combos.begin(), combos.end());
      try {
        const std::uint64_t len = local_length(Ideal(ring, std::move(gens)), p, ctx);
        ctx.certify("generic reduction trial " + std::to_string(index + 1) + ": seed " + std::to_string(seed) +
                    ", retries " + std::to_string(attempt) + ", length " + std::to_string(len));
        return len;
      } catch (const MathError&) {
        // The combinations did not isolate p; draw again.
      }
    }
    throw MathError("generic reduction failed to isolate the point after retries");
  };

  std::vector<std::uint64_t> seen;
  for (int i = 0; i < kBaseTrials; ++i) seen.push_back(trial(i));
  const std::uint64_t e = *std::min_element(seen.begin(), seen.end());
  bool stable = true;
  for (int i = 0; i < kStabilityTrials; ++i) {
    seen.push_back(trial(kBaseTrials + i));
    if (seen.back() != e) stable = false;
  }
  if (!stable) {
    std::string values;
    for (auto v : seen) values += (values.empty() ? "" : ", ") + std::to_string(v);
    throw MathError("generic reduction is unstable across trials: " + values);
  }
  Cycle out(y);
  out.add(Rational(static_cast<unsigned long>(e)), PrimeComponent::from_point(ring, p, ctx));
  return out;
}

}  // namespace propint
