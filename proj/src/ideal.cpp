#include <algorithm>
#include <functional>
#include <numeric>

#include "propint/errors.hpp"
#include "propint/ideal.hpp"

namespace propint {

Ideal::Ideal(PolyRing ring, std::vector<Polynomial> generators) : ring_(std::move(ring)) {
  for (auto& g : generators) {
    if (!(g.ring() == ring_)) throw MathError("ideal generator lives in a different ring");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

Ideal Ideal::from_strings(const PolyRing& ring, std::span<const std::string> generators) {
  std::vector<Polynomial> gens;
  for (const auto& g : generators) gens.push_back(parse_polynomial(g, ring));
  return Ideal(ring, std::move(gens));
}

Ideal Ideal::unit(const PolyRing& ring) { return Ideal(ring, {Polynomial::constant(ring, 1)}); }

std::string Ideal::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) out += ", ";
    out += generators_[i].to_string();
  }
  return out + ")";
}

// ---------------------------------------------------------------- ring plumbing

PolyRing prepend_variables(const PolyRing& ring, std::span<const std::string> extra) {
  std::vector<std::string> names(extra.begin(), extra.end());
  names.insert(names.end(), ring.variables().begin(), ring.variables().end());
  return PolyRing(std::move(names));
}

Polynomial move_to_ring(const Polynomial& p, const PolyRing& target) {
  if (p.ring() == target) return p;
  std::vector<std::size_t> index;
  for (const auto& name : p.ring().variables()) {
    auto i = target.index_of(name);
    if (!i) throw MathError("variable '" + name + "' missing from target ring");
    index.push_back(*i);
  }
  return remap(p, target, index);
}

Ideal move_to_ring(const Ideal& ideal, const PolyRing& target) {
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(move_to_ring(g, target));
  return Ideal(target, std::move(gens));
}

namespace {

void require_same_ring(const Ideal& a, const Ideal& b) {
  if (!(a.ring() == b.ring())) throw MathError("ideals live in different rings");
}

}  // namespace

// ---------------------------------------------------------------- arithmetic

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  std::vector<Polynomial> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.ring(), std::move(gens));
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators())
    for (const auto& g : b.generators()) gens.push_back(f * g);
  return Ideal(a.ring(), std::move(gens));
}

Ideal eliminate(const Ideal& a, std::size_t first_k, Context& ctx) {
  const PolyRing& ring = a.ring();
  if (first_k > ring.arity()) throw MathError("eliminate: too many variables");
  std::vector<std::string> rest(ring.variables().begin() + static_cast<std::ptrdiff_t>(first_k),
                                ring.variables().end());
  PolyRing sub(rest);
  GroebnerBasis gb = groebner(a, MonomialOrder::block_elimination(first_k), ctx);
  std::vector<Polynomial> kept;
  for (const auto& g : gb.basis()) {
    bool free = true;
    for (const auto& t : g.terms()) {
      for (std::size_t i = 0; i < first_k && free; ++i)
        if (t.monomial[i]) free = false;
      if (!free) break;
    }
    if (!free) continue;
    std::vector<Term> terms;
    for (const auto& t : g.terms()) {
      Monomial m(sub.arity());
      for (std::size_t i = first_k; i < ring.arity(); ++i) m.set(i - first_k, t.monomial[i]);
      terms.push_back({m, t.coeff});
    }
    kept.push_back(Polynomial::from_terms(sub, std::move(terms)));
  }
  return Ideal(sub, std::move(kept));
}

Ideal intersection(const Ideal& a, const Ideal& b, Context& ctx) {
  require_same_ring(a, b);
  if (a.is_zero() || b.is_zero()) return Ideal(a.ring());
  const std::string t = a.ring().fresh_name("_t");
  const std::string extra[] = {t};
  PolyRing big = prepend_variables(a.ring(), extra);
  Polynomial tv = Polynomial::variable(big, 0);
  Polynomial one_minus_t = Polynomial::constant(big, 1) - tv;
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) gens.push_back(tv * move_to_ring(f, big));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * move_to_ring(g, big));
  Ideal result = eliminate(Ideal(big, std::move(gens)), 1, ctx);
  return move_to_ring(result, a.ring());
}

Ideal quotient(const Ideal& a, const Polynomial& f, Context& ctx) {
  if (!(f.ring() == a.ring())) throw MathError("quotient: ring mismatch");
  if (f.is_zero()) return Ideal::unit(a.ring());
  if (a.is_zero()) return a;
  if (f.is_constant()) return a;
  Ideal both = intersection(a, Ideal(a.ring(), {f}), ctx);
  std::vector<Polynomial> gens;
  for (const auto& g : both.generators()) gens.push_back(divide_exact(g, f));
  return Ideal(a.ring(), std::move(gens));
}

Ideal quotient(const Ideal& a, const Ideal& b, Context& ctx) {
  require_same_ring(a, b);
  if (b.is_zero()) return Ideal::unit(a.ring());
  std::optional<Ideal> acc;
  for (const auto& g : b.generators()) {
    Ideal q = quotient(a, g, ctx);
    acc = acc ? intersection(*acc, q, ctx) : q;
  }
  return *acc;
}

namespace {

template <class Step>
Ideal saturate_by(const Ideal& a, Context& ctx, Step step) {
  GroebnerBasis current = groebner(a, MonomialOrder::grevlex(), ctx);
  while (true) {
    if (current.is_unit()) return current.ideal();
    GroebnerBasis next = groebner(step(current.ideal()), MonomialOrder::grevlex(), ctx);
    if (next == current) return current.ideal();
    current = next;
  }
}

}  // namespace

Ideal saturation(const Ideal& a, const Ideal& b, Context& ctx) {
  require_same_ring(a, b);
  return saturate_by(a, ctx, [&](const Ideal& i) { return quotient(i, b, ctx); });
}

Ideal saturation(const Ideal& a, const Polynomial& f, Context& ctx) {
  return saturate_by(a, ctx, [&](const Ideal& i) { return quotient(i, f, ctx); });
}

bool is_unit_ideal(const Ideal& a, Context& ctx) { return groebner(a, MonomialOrder::grevlex(), ctx).is_unit(); }

bool contains(const Ideal& a, const Polynomial& p, Context& ctx) {
  return groebner(a, MonomialOrder::grevlex(), ctx).contains(p);
}

bool same_ideal(const Ideal& a, const Ideal& b, Context& ctx) {
  require_same_ring(a, b);
  return groebner(a, MonomialOrder::grevlex(), ctx).basis() == groebner(b, MonomialOrder::grevlex(), ctx).basis();
}

bool ideal_contains(const Ideal& outer, const Ideal& inner, Context& ctx) {
  require_same_ring(outer, inner);
  GroebnerBasis gb = groebner(outer, MonomialOrder::grevlex(), ctx);
  return std::all_of(inner.generators().begin(), inner.generators().end(),
                     [&](const Polynomial& g) { return gb.contains(g); });
}

// ---------------------------------------------------------------- dimension, colength

int dimension(const GroebnerBasis& basis) {
  if (basis.is_unit()) return kEmptyDimension;
  const std::size_t n = basis.ring().arity();
  std::vector<std::uint32_t> supports;
  for (const auto& m : basis.leading_monomials()) supports.push_back(m.support());

  // Largest variable set S with no leading monomial supported inside S.
  int best = 0;
  std::function<void(std::size_t, std::uint32_t, int)> search = [&](std::size_t next, std::uint32_t set, int size) {
    best = std::max(best, size);
    if (size + static_cast<int>(n - next) <= best) return;
    for (std::size_t v = next; v < n; ++v) {
      std::uint32_t grown = set | (1u << v);
      bool independent = std::none_of(supports.begin(), supports.end(),
                                      [&](std::uint32_t s) { return (s & ~grown) == 0; });
      if (independent) search(v + 1, grown, size + 1);
      if (size + static_cast<int>(n - v - 1) <= best) return;
    }
  };
  search(0, 0, 0);
  return best;
}

int dimension(const Ideal& ideal, Context& ctx) { return dimension(groebner(ideal, MonomialOrder::grevlex(), ctx)); }

std::vector<std::uint32_t> independent_sets(const GroebnerBasis& basis) {
  const int dim = dimension(basis);
  std::vector<std::uint32_t> out;
  if (dim < 0) return out;
  const std::size_t n = basis.ring().arity();
  std::vector<std::uint32_t> supports;
  for (const auto& m : basis.leading_monomials()) supports.push_back(m.support());
  std::function<void(std::size_t, std::uint32_t, int)> search = [&](std::size_t next, std::uint32_t set, int size) {
    if (size == dim) {
      out.push_back(set);
      return;
    }
    for (std::size_t v = next; v + static_cast<std::size_t>(dim - size) <= n; ++v) {
      std::uint32_t grown = set | (1u << v);
      if (std::none_of(supports.begin(), supports.end(), [&](std::uint32_t s) { return (s & ~grown) == 0; }))
        search(v + 1, grown, size + 1);
    }
  };
  search(0, 0, 0);
  return out;
}

std::vector<Monomial> standard_monomials(const GroebnerBasis& basis) {
  if (basis.is_unit()) return {};
  if (dimension(basis) != 0) throw MathError("ideal is not zero-dimensional");
  const std::size_t n = basis.ring().arity();
  const auto& leading = basis.leading_monomials();
  auto reducible = [&](const Monomial& m) {
    return std::any_of(leading.begin(), leading.end(), [&](const Monomial& l) { return l.divides(m); });
  };
  std::vector<Monomial> out;
  Monomial current(n);
  std::function<void(std::size_t)> walk = [&](std::size_t var) {
    if (var == n) {
      out.push_back(current);
      return;
    }
    for (std::uint32_t e = 0;; ++e) {
      current.set(var, e);
      if (reducible(current)) break;
      walk(var + 1);
    }
    current.set(var, 0);
  };
  walk(0);
  return out;
}

std::uint64_t colength(const GroebnerBasis& basis) { return standard_monomials(basis).size(); }

std::uint64_t colength(const Ideal& ideal, Context& ctx) { return colength(groebner(ideal, MonomialOrder::grevlex(), ctx)); }

// ---------------------------------------------------------------- Hilbert series

namespace {

using Series = std::vector<Integer>;

void add_into(Series& acc, const Series& s, std::size_t shift, int sign) {
  if (acc.size() < s.size() + shift) acc.resize(s.size() + shift, 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (sign > 0) {
      acc[i + shift] += s[i];
    } else {
      acc[i + shift] -= s[i];
    }
  }
}

Series multiply(const Series& a, const Series& b) {
  Series out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void minimalize(std::vector<Monomial>& gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  std::vector<Monomial> out;
  for (const auto& m : gens) {
    if (std::none_of(out.begin(), out.end(), [&](const Monomial& o) { return o.divides(m); })) out.push_back(m);
  }
  gens = std::move(out);
}

Series numerator_rec(std::vector<Monomial> gens, std::size_t n) {
  minimalize(gens);
  if (gens.empty()) return {1};
  std::vector<std::size_t> count(n, 0);
  bool coprime = true;
  std::uint32_t seen = 0;
  for (const auto& m : gens) {
    std::uint32_t s = m.support();
    if (s & seen) coprime = false;
    seen |= s;
    for (std::size_t i = 0; i < n; ++i)
      if (m[i]) ++count[i];
  }
  if (coprime) {
    Series acc{1};
    for (const auto& m : gens) {
      Series factor(m.degree() + 1, 0);
      factor[0] = 1;
      factor[m.degree()] -= 1;
      acc = multiply(acc, factor);
    }
    return acc;
  }
  // Pivot on the variable shared by the most generators:
  // HN(I) = HN(I + (x)) + t * HN(I : x).
  std::size_t pivot = static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
  std::vector<Monomial> with_pivot, colon;
  Monomial x(n);
  x.set(pivot, 1);
  with_pivot.push_back(x);
  for (const auto& m : gens) {
    if (!m[pivot]) with_pivot.push_back(m);
    Monomial c = m;
    if (c[pivot]) c.set(pivot, c[pivot] - 1);
    colon.push_back(c);
  }
  Series result = numerator_rec(std::move(with_pivot), n);
  add_into(result, numerator_rec(std::move(colon), n), 1, +1);
  while (result.size() > 1 && result.back() == 0) result.pop_back();
  return result;
}

}  // namespace

std::vector<Integer> hilbert_numerator(std::vector<Monomial> monomials, std::size_t arity) {
  return numerator_rec(std::move(monomials), arity);
}

HilbertData hilbert(const Ideal& ideal, Context& ctx) {
  for (const auto& g : ideal.generators())
    if (!g.is_homogeneous()) throw MathError("hilbert: generator '" + g.to_string() + "' is not homogeneous");
  GroebnerBasis gb = groebner(ideal, MonomialOrder::grevlex(), ctx);
  if (gb.is_unit()) throw MathError("hilbert: unit ideal has no Hilbert polynomial");
  Series num = hilbert_numerator(gb.leading_monomials(), ideal.ring().arity());
  int dim = static_cast<int>(ideal.ring().arity());
  auto value_at_one = [](const Series& s) { return std::accumulate(s.begin(), s.end(), Integer(0)); };
  while (dim > 0 && value_at_one(num) == 0) {
    // Synthetic division by (1 - t).
    Series q(num.size() - 1, 0);
    Integer carry = 0;
    for (std::size_t i = 0; i + 1 < num.size(); ++i) {
      carry += num[i];
      q[i] = carry;
    }
    num = std::move(q);
    --dim;
  }
  HilbertData data;
  data.degree = value_at_one(num);
  data.numerator = std::move(num);
  data.dimension = dim;
  return data;
}

Integer projective_degree(const Ideal& ideal, Context& ctx) { return hilbert(ideal, ctx).degree; }

bool radical_membership(const Polynomial& p, const Ideal& ideal, Context& ctx) {
  if (!(p.ring() == ideal.ring())) throw MathError("radical_membership: ring mismatch");
  if (p.is_zero()) return true;
  const std::string t = ideal.ring().fresh_name("_t");
  const std::string extra[] = {t};
  PolyRing big = prepend_variables(ideal.ring(), extra);
  Ideal lifted = move_to_ring(ideal, big);
  std::vector<Polynomial> gens = lifted.generators();
  gens.push_back(Polynomial::constant(big, 1) - Polynomial::variable(big, 0) * move_to_ring(p, big));
  return is_unit_ideal(Ideal(big, std::move(gens)), ctx);
}

}  // namespace propint
