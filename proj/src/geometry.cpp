#include "propint/geometry.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <sstream>

#include "propint/errors.hpp"
#include "propint/linalg.hpp"

namespace propint {

namespace {

constexpr std::int64_t kGenericBox = 10'000;
constexpr int kSliceRetries = 5;
constexpr int kWitnessAttempts = 24;

Ideal add_generators(const Ideal& a, std::vector<Polynomial> extra) {
  std::vector<Polynomial> gens = a.generators();
  for (auto& p : extra) gens.push_back(std::move(p));
  return Ideal(a.ring(), std::move(gens));
}

Ideal require_in_ring(const Ideal& j, const PolyRing& ring) {
  if (j.ring() == ring) return j;
  return move_to_ring(j, ring);
}

bool vanishes_at(const Ideal& k, const PointSpec& p) {
  return std::all_of(k.generators().begin(), k.generators().end(),
                     [&](const Polynomial& g) { return g.evaluate(p) == 0; });
}

std::string render_point(const PointSpec& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? ", " : "") + to_string(p[i]);
  return out + ")";
}

// Coordinates of normal forms in the basis of standard monomials.
class QuotientAlgebra {
 public:
  explicit QuotientAlgebra(const GroebnerBasis& gb) : gb_(gb), basis_(standard_monomials(gb)) {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      index_.emplace(std::vector<std::uint32_t>(basis_[i].exponents().begin(), basis_[i].exponents().end()), i);
  }

  std::size_t size() const { return basis_.size(); }

  Vector coordinates(const Polynomial& p) const {
    Vector v(basis_.size(), 0);
    const Polynomial nf = gb_.normal_form(p);
    for (const auto& t : nf.terms())
      v[index_.at(std::vector<std::uint32_t>(t.monomial.exponents().begin(), t.monomial.exponents().end()))] =
          t.coeff;
    return v;
  }

  /// Matrix of multiplication by p, acting on coordinate columns.
  Matrix multiplication(const Polynomial& p) const {
    const std::size_t n = basis_.size();
    Matrix m(n, Vector(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
      Vector col = coordinates(p * Polynomial::term(gb_.ring(), basis_[j], 1));
      for (std::size_t r = 0; r < n; ++r) m[r][j] = col[r];
    }
    return m;
  }

  /// Minimal polynomial of variable i in the quotient algebra.
  UPoly minimal_polynomial(std::size_t var) const {
    const PolyRing& ring = gb_.ring();
    const Polynomial x = Polynomial::variable(ring, var);
    struct Row {
      Vector v;
      std::size_t pivot;
      UPoly combination;
    };
    std::vector<Row> rows;
    Polynomial power = Polynomial::constant(ring, 1);
    for (std::size_t k = 0;; ++k) {
      Vector v = coordinates(power);
      UPoly comb(k + 1, 0);
      comb[k] = 1;
      for (const auto& row : rows) {
        if (v[row.pivot] == 0) continue;
        const Rational f = v[row.pivot] / row.v[row.pivot];
        for (std::size_t c = 0; c < v.size(); ++c) v[c] -= f * row.v[c];
        for (std::size_t c = 0; c < row.combination.size(); ++c) comb[c] -= f * row.combination[c];
      }
      auto nz = std::find_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
      if (nz == v.end()) {
        trim(comb);
        return comb;
      }
      rows.push_back({std::move(v), static_cast<std::size_t>(nz - v.begin()), std::move(comb)});
      rows.back().pivot = static_cast<std::size_t>(
          std::find_if(rows.back().v.begin(), rows.back().v.end(), [](const Rational& q) { return q != 0; }) -
          rows.back().v.begin());
      power = gb_.normal_form(power * x);
    }
  }

 private:
  GroebnerBasis gb_;
  std::vector<Monomial> basis_;
  std::map<std::vector<std::uint32_t>, std::size_t> index_;
};

// Dimension of the joint generalized eigenspace of the coordinate
// multiplications at p, which is the length of the localization at p.
std::uint64_t local_length_zero_dim(const GroebnerBasis& gb, const PointSpec& p) {
  QuotientAlgebra algebra(gb);
  const std::size_t n = algebra.size();
  Matrix stacked;
  for (std::size_t i = 0; i < gb.ring().arity(); ++i) {
    Matrix b = algebra.multiplication(Polynomial::variable(gb.ring(), i));
    for (std::size_t r = 0; r < n; ++r) b[r][r] -= p[i];
    for (auto& row : stable_power(std::move(b))) stacked.push_back(std::move(row));
  }
  return n - rank(std::move(stacked));
}

// Integer lattice spanned by the rows has no torsion quotient iff a unimodular
// diagonalization has only unit entries on the diagonal.
bool lattice_saturated(std::vector<std::vector<Integer>> a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    std::size_t br = rows, bc = cols;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c)
        if (a[r][c] != 0 && (br == rows || abs(a[r][c]) < abs(a[br][bc]))) br = r, bc = c;
    if (br == rows) break;
    std::swap(a[t], a[br]);
    for (auto& row : a) std::swap(row[t], row[bc]);
    bool clean = true;
    for (std::size_t r = t + 1; r < rows; ++r) {
      Integer q = a[r][t] / a[t][t];
      for (std::size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
      if (a[r][t] != 0) clean = false;
    }
    for (std::size_t c = t + 1; c < cols; ++c) {
      Integer q = a[t][c] / a[t][t];
      for (std::size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
      if (a[t][c] != 0) clean = false;
    }
    if (!clean) continue;
    if (abs(a[t][t]) != 1) return false;
    ++t;
  }
  return true;
}

// Whether a torus stratum ideal is visibly prime: linear, or binomial with a
// saturated lattice once the zeroed coordinates are removed.
bool visibly_prime(const GroebnerBasis& gb, std::uint32_t zero_mask) {
  std::vector<Polynomial> rest;
  for (const auto& g : gb.basis()) {
    if (g.size() == 1 && g.terms()[0].monomial.degree() == 1 && (g.terms()[0].monomial.support() & zero_mask))
      continue;
    rest.push_back(g);
  }
  if (std::all_of(rest.begin(), rest.end(), [](const Polynomial& g) { return g.total_degree() <= 1; })) return true;
  std::vector<std::vector<Integer>> lattice;
  for (const auto& g : rest) {
    if (g.size() != 2) return false;
    std::vector<Integer> row;
    for (std::size_t i = 0; i < g.ring().arity(); ++i)
      row.push_back(Integer(g.terms()[0].monomial[i]) - Integer(g.terms()[1].monomial[i]));
    lattice.push_back(std::move(row));
  }
  return lattice_saturated(std::move(lattice));
}

}  // namespace

// ---------------------------------------------------------------- presentations

VarietyPresentation VarietyPresentation::make(Ideal defining, Context& ctx) {
  VarietyPresentation y;
  y.dim = dimension(defining, ctx);
  if (y.dim == kEmptyDimension) throw MathError("variety is empty: defining ideal is the unit ideal");
  y.defining = std::move(defining);
  return y;
}

VarietyPresentation VarietyPresentation::affine_space(const PolyRing& ring) {
  VarietyPresentation y;
  y.defining = Ideal(ring);
  y.dim = static_cast<int>(ring.arity());
  y.asserted_smooth = true;
  return y;
}

PointSpec Parametrization::at(std::span<const Rational> values) const {
  PointSpec p;
  for (const auto& c : coordinates) p.push_back(c.evaluate(values));
  return p;
}

PrimeComponent::PrimeComponent(const Ideal& prime, Context& ctx) {
  GroebnerBasis gb = groebner(prime, MonomialOrder::grevlex(), ctx);
  if (gb.is_unit()) throw MathError("component ideal is the unit ideal");
  prime_ = gb.ideal();
  dim_ = dimension(gb);
  for (const auto& g : gb.basis()) key_.push_back(g.to_string());
  std::sort(key_.begin(), key_.end());
}

PrimeComponent PrimeComponent::from_point(const PolyRing& ring, const PointSpec& p, Context& ctx) {
  PrimeComponent c(point_ideal(ring, p), ctx);
  c.point = p;
  return c;
}

Ideal point_ideal(const PolyRing& ring, const PointSpec& p) {
  if (p.size() != ring.arity()) throw MathError("point has the wrong number of coordinates");
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < p.size(); ++i)
    gens.push_back(Polynomial::variable(ring, i) - Polynomial::constant(ring, p[i]));
  return Ideal(ring, std::move(gens));
}

// ---------------------------------------------------------------- cycles

bool Cycle::effective() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const CycleTerm& t) { return t.coeff > 0; });
}

void Cycle::add(const Rational& raw, const PrimeComponent& component) {
  Rational coeff = raw;
  coeff.canonicalize();
  if (coeff == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), component,
                             [](const CycleTerm& t, const PrimeComponent& c) { return t.component < c; });
  if (it != terms_.end() && it->component == component) {
    it->coeff += coeff;
    if (it->coeff == 0) terms_.erase(it);
    return;
  }
  terms_.insert(it, CycleTerm{coeff, component});
}

std::string Cycle::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out += " + ";
    out += propint::to_string(terms_[i].coeff) + "*[" + terms_[i].component.prime().to_string() + "]";
  }
  return out;
}

bool operator==(const Cycle& a, const Cycle& b) {
  if (!(a.variety_.ring() == b.variety_.ring()) || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].coeff != b.terms_[i].coeff || !(a.terms_[i].component == b.terms_[i].component)) return false;
  return true;
}

namespace {

void require_same_variety(const Cycle& a, const Cycle& b) {
  if (!(a.variety().ring() == b.variety().ring()) ||
      a.variety().defining.to_string() != b.variety().defining.to_string())
    throw MathError("cycles live on different varieties");
}

}  // namespace

Cycle cycle_add(const Cycle& a, const Cycle& b) {
  require_same_variety(a, b);
  Cycle out = a;
  for (const auto& t : b.terms()) out.add(t.coeff, t.component);
  return out;
}

Cycle cycle_scale(const Rational& q, const Cycle& a) {
  Cycle out(a.variety());
  for (const auto& t : a.terms()) out.add(q * t.coeff, t.component);
  return out;
}

std::vector<PrimeComponent> support(const Cycle& a) {
  std::vector<PrimeComponent> out;
  for (const auto& t : a.terms()) out.push_back(t.component);
  return out;
}

// ---------------------------------------------------------------- components

std::optional<int> codim_in(const VarietyPresentation& y, const Ideal& j, Context& ctx) {
  const int d = dimension(ideal_sum(y.defining, require_in_ring(j, y.ring())), ctx);
  if (d == kEmptyDimension) return std::nullopt;
  return y.dim - d;
}

ComponentVerdict verify_components(const VarietyPresentation& y, const Ideal& j,
                                   const std::vector<PrimeComponent>& candidates, Context& ctx) {
  ComponentVerdict verdict;
  const Ideal k = ideal_sum(y.defining, require_in_ring(j, y.ring()));
  auto fail = [&](std::string why) {
    verdict.accepted = false;
    verdict.failures.push_back(std::move(why));
  };
  for (std::size_t a = 0; a < candidates.size(); ++a)
    for (std::size_t b = a + 1; b < candidates.size(); ++b)
      if (candidates[a] == candidates[b]) fail("candidates are not distinct: " + candidates[a].prime().to_string());

  for (const auto& c : candidates)
    if (!ideal_contains(c.prime(), k, ctx))
      fail("containment: " + c.prime().to_string() + " does not contain " + k.to_string());

  Ideal meet = Ideal::unit(y.ring());
  for (const auto& c : candidates) meet = intersection(meet, require_in_ring(c.prime(), y.ring()), ctx);
  for (const auto& g : meet.generators())
    if (!radical_membership(g, k, ctx)) {
      fail("covering: " + g.to_string() + " is not in the radical of " + k.to_string());
      break;
    }

  const int dim_k = dimension(k, ctx);
  for (const auto& c : candidates)
    if (c.dim() != dim_k)
      fail("dimension: " + c.prime().to_string() + " has dimension " + std::to_string(c.dim()) + ", expected " +
           std::to_string(dim_k));
  return verdict;
}

RationalPoints rational_points(const Ideal& zero_dim, Context& ctx) {
  RationalPoints out;
  const PolyRing& ring = zero_dim.ring();
  const std::size_t n = ring.arity();
  GroebnerBasis top = groebner(zero_dim, MonomialOrder::grevlex(), ctx);
  if (top.is_unit()) return out;
  if (dimension(top) != 0) throw MathError("rational_points: ideal is not zero-dimensional");

  PointSpec coords(n, 0);
  std::function<void(const Ideal&, std::size_t)> solve = [&](const Ideal& k, std::size_t remaining) {
    GroebnerBasis gb = groebner(k, MonomialOrder::grevlex(), ctx);
    if (gb.is_unit()) return;
    if (remaining == 0) {
      out.points.push_back(coords);
      return;
    }
    const std::size_t var = remaining - 1;
    UPoly minimal = QuotientAlgebra(gb).minimal_polynomial(var);
    UPoly g = gcd(minimal, derivative(minimal));
    if (degree(g) > 0) minimal = divmod(minimal, g).first;
    std::vector<Rational> roots = rational_roots(minimal);
    if (static_cast<int>(roots.size()) != degree(minimal)) out.complete = false;
    for (const auto& r : roots) {
      coords[var] = r;
      solve(add_generators(k, {Polynomial::variable(ring, var) - Polynomial::constant(ring, r)}), var);
    }
  };
  solve(zero_dim, n);
  std::sort(out.points.begin(), out.points.end());
  return out;
}

std::vector<PrimeComponent> discover_components(const VarietyPresentation& y, const Ideal& j, Context& ctx) {
  const PolyRing& ring = y.ring();
  const std::size_t n = ring.arity();
  const Ideal k = ideal_sum(y.defining, require_in_ring(j, ring));
  if (is_unit_ideal(k, ctx)) return {};

  // Split V(K) by which coordinates vanish: each variable is either set to
  // zero or saturated away.
  struct Leaf {
    GroebnerBasis gb;
    std::uint32_t zero_mask;
  };
  std::vector<Leaf> leaves;
  // `units` is the product of the variables already declared nonzero; the
  // ideal at each node is kept saturated by it.
  std::function<void(const Ideal&, std::size_t, std::uint32_t, const Polynomial&)> explore =
      [&](const Ideal& cur, std::size_t v, std::uint32_t mask, const Polynomial& units) {
        GroebnerBasis gb = groebner(cur, MonomialOrder::grevlex(), ctx);
        if (gb.is_unit()) return;
        if (v == n) {
          leaves.push_back({gb, mask});
          return;
        }
        const Polynomial x = Polynomial::variable(ring, v);
        if (gb.contains(x)) {
          explore(gb.ideal(), v + 1, mask | (1u << v), units);
          return;
        }
        explore(saturation(add_generators(gb.ideal(), {x}), units, ctx), v + 1, mask | (1u << v), units);
        explore(saturation(gb.ideal(), x, ctx), v + 1, mask, units * x);
      };
  explore(k, 0, 0, Polynomial::constant(ring, 1));

  std::vector<PrimeComponent> found;
  for (const auto& leaf : leaves) {
    if (dimension(leaf.gb) == 0) {
      RationalPoints pts = rational_points(leaf.gb.ideal(), ctx);
      if (!pts.complete)
        throw MathError("component resolution failed: V(" + k.to_string() +
                        ") has points with irrational coordinates; supply candidate components");
      for (const auto& p : pts.points) found.push_back(PrimeComponent::from_point(ring, p, ctx));
      continue;
    }
    if (!visibly_prime(leaf.gb, leaf.zero_mask))
      throw MathError("component resolution failed: cannot certify " + leaf.gb.ideal().to_string() +
                      " as prime; supply candidate components");
    found.emplace_back(leaf.gb.ideal(), ctx);
  }

  // Keep the irreducible closures that are maximal, i.e. minimal primes.
  std::vector<PrimeComponent> minimal;
  for (std::size_t a = 0; a < found.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < found.size() && !dominated; ++b)
      if (a != b && !(found[a] == found[b]) && ideal_contains(found[a].prime(), found[b].prime(), ctx))
        dominated = true;
    if (!dominated && std::find(minimal.begin(), minimal.end(), found[a]) == minimal.end())
      minimal.push_back(found[a]);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

std::vector<PrimeComponent> resolve_components(const VarietyPresentation& y, const Ideal& j,
                                               const std::optional<std::vector<PrimeComponent>>& candidates,
                                               Context& ctx) {
  if (!candidates) return discover_components(y, j, ctx);
  ComponentVerdict verdict = verify_components(y, j, *candidates, ctx);
  if (!verdict.accepted) {
    std::string why = "candidate components rejected:";
    for (const auto& f : verdict.failures) why += " [" + f + "]";
    throw MathError(why);
  }
  ctx.certify("candidate components verified: containment, covering, dimension");
  std::vector<PrimeComponent> out = *candidates;
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- lengths

std::uint64_t local_length(const Ideal& k, const PointSpec& p, Context& ctx) {
  if (p.size() != k.ring().arity()) throw MathError("point has the wrong number of coordinates");
  if (!vanishes_at(k, p)) return 0;
  GroebnerBasis gb = groebner(k, MonomialOrder::grevlex(), ctx);
  if (dimension(gb) == 0) return local_length_zero_dim(gb, p);

  // Strip the primary component at p, then use an element of what is left
  // that does not vanish at p to isolate it.
  GroebnerBasis rest = groebner(saturation(k, point_ideal(k.ring(), p), ctx), MonomialOrder::grevlex(), ctx);
  auto g = std::find_if(rest.basis().begin(), rest.basis().end(),
                        [&](const Polynomial& q) { return q.evaluate(p) != 0; });
  if (g == rest.basis().end())
    throw MathError("point " + render_point(p) + " lies on a positive-dimensional component");
  GroebnerBasis local = groebner(saturation(k, *g, ctx), MonomialOrder::grevlex(), ctx);
  if (dimension(local) != 0) throw MathError("localization at " + render_point(p) + " is not zero-dimensional");
  return local_length_zero_dim(local, p);
}

std::uint64_t local_colength(const VarietyPresentation& y, const Ideal& j, const PointSpec& p, Context& ctx) {
  return local_length(ideal_sum(y.defining, require_in_ring(j, y.ring())), p, ctx);
}

namespace {

// Leading-term independent sets, then every other set S with P ∩ Q[S] = 0. A fiber over x² = y is rational over x but rarely over y.
std::vector<std::uint32_t> fiber_sets(const PrimeComponent& z, const GroebnerBasis& gb, Context& ctx) {
  std::vector<std::uint32_t> sets = independent_sets(gb);
  const PolyRing& ring = z.prime().ring();
  const std::size_t n = ring.arity(), d = static_cast<std::size_t>(z.dim());
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != d) continue;
    if (std::find(sets.begin(), sets.end(), mask) != sets.end()) continue;
    std::vector<std::size_t> index(n);
    std::size_t front = 0, back = n - d;
    for (std::size_t i = 0; i < n; ++i) index[i] = (mask & (1u << i)) ? back++ : front++;
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) names[index[i]] = ring.name(i);
    const PolyRing reordered(names);
    std::vector<Polynomial> gens;
    for (const auto& g : z.prime().generators()) gens.push_back(remap(g, reordered, index));
    if (eliminate(Ideal(reordered, std::move(gens)), n - d, ctx).is_zero()) sets.push_back(mask);
  }
  return sets;
}

}  // namespace

PointSpec witness_point(const PrimeComponent& z, Context& ctx) {
  if (z.point) return *z.point;
  const PolyRing& ring = z.prime().ring();
  if (z.parametrization) {
    const auto& par = *z.parametrization;
    const std::uint64_t seed = ctx.next_seed();
    std::mt19937_64 gen(seed);
    std::vector<Rational> t;
    for (std::size_t i = 0; i < par.parameters.arity(); ++i) t.push_back(uniform_int(gen, -kGenericBox, kGenericBox));
    PointSpec p = par.at(t);
    if (!vanishes_at(z.prime(), p))
      throw MathError("parametrization does not land on " + z.prime().to_string());
    ctx.certify("witness on [" + z.prime().to_string() + "] from parametrization, seed " + std::to_string(seed));
    return p;
  }
  GroebnerBasis gb = groebner(z.prime(), MonomialOrder::grevlex(), ctx);
  std::vector<std::uint32_t> sets = independent_sets(gb);
  const std::uint64_t seed = ctx.next_seed();
  std::mt19937_64 gen(seed);
  for (int attempt = 0; attempt < kWitnessAttempts; ++attempt) {
    if (attempt == kWitnessAttempts / 2) sets = fiber_sets(z, gb, ctx);
    const std::uint32_t set = sets[static_cast<std::size_t>(attempt) % sets.size()];
    std::vector<Polynomial> fix;
    for (std::size_t i = 0; i < ring.arity(); ++i)
      if (set & (1u << i))
        fix.push_back(Polynomial::variable(ring, i) -
                      Polynomial::constant(ring, Rational(uniform_int(gen, -kGenericBox, kGenericBox))));
    Ideal fiber = add_generators(z.prime(), std::move(fix));
    GroebnerBasis fgb = groebner(fiber, MonomialOrder::grevlex(), ctx);
    if (dimension(fgb) != 0) continue;
    RationalPoints pts = rational_points(fiber, ctx);
    if (pts.points.empty()) continue;
    ctx.certify("witness on [" + z.prime().to_string() + "] from a rational fiber, seed " + std::to_string(seed) +
                ", attempt " + std::to_string(attempt + 1));
    return pts.points[static_cast<std::size_t>(uniform_int(gen, 0, static_cast<std::int64_t>(pts.points.size()) - 1))];
  }
  throw MathError("no rational witness point found on " + z.prime().to_string());
}

std::uint64_t multiplicity_along(const VarietyPresentation& y, const Ideal& j, const PrimeComponent& z, Context& ctx) {
  const PolyRing& ring = y.ring();
  const Ideal k = ideal_sum(y.defining, require_in_ring(j, ring));
  if (z.dim() == 0) return local_length(k, witness_point(z, ctx), ctx);

  std::vector<std::uint64_t> results;
  for (int trial = 0; trial < 3; ++trial) {
    bool done = false;
    for (int attempt = 0; attempt < kSliceRetries && !done; ++attempt) {
      PointSpec p = witness_point(z, ctx);
      if (!vanishes_at(k, p)) throw MathError("component " + z.prime().to_string() + " is not contained in V(I_Y + J)");
      const std::uint64_t seed = ctx.next_seed();
      std::mt19937_64 gen(seed);
      std::vector<Polynomial> slice;
      for (int h = 0; h < z.dim(); ++h) {
        Polynomial form(ring);
        for (std::size_t i = 0; i < ring.arity(); ++i)
          form += Rational(uniform_int(gen, -kGenericBox, kGenericBox)) *
                  (Polynomial::variable(ring, i) - Polynomial::constant(ring, p[i]));
        slice.push_back(std::move(form));
      }
      try {
        results.push_back(local_length(add_generators(k, std::move(slice)), p, ctx));
        ctx.certify("slice of [" + z.prime().to_string() + "] trial " + std::to_string(trial + 1) + ": seed " +
                    std::to_string(seed) + ", retries " + std::to_string(attempt) + ", length " +
                    std::to_string(results.back()));
        done = true;
      } catch (const MathError&) {
        if (attempt + 1 == kSliceRetries) throw;
      }
    }
  }
  if (!std::all_of(results.begin(), results.end(), [&](std::uint64_t r) { return r == results[0]; })) {
    std::string seen;
    for (auto r : results) seen += (seen.empty() ? "" : ", ") + std::to_string(r);
    throw MathError("multiplicity along " + z.prime().to_string() + " is unstable across slices: " + seen);
  }
  return results[0];
}

}  // namespace propint
