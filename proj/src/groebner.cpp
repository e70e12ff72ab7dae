#include <algorithm>
#include <limits>
#include <tuple>
#include <sstream>

#include "propint/errors.hpp"
#include "propint/ideal.hpp"

namespace propint {

Context::Context(std::uint64_t seed, std::uint64_t step_budget)
    : seed_(seed), stream_(seed), step_budget_(step_budget) {}

void Context::charge(std::uint64_t steps) {
  steps_used_ += steps;
  if (steps_used_ > step_budget_)
    throw ResourceLimit("reduction step budget of " + std::to_string(step_budget_) + " exhausted");
}

void Context::caveat(const std::string& line) {
  if (std::find(caveats_.begin(), caveats_.end(), line) == caveats_.end()) caveats_.push_back(line);
}

std::shared_ptr<const GroebnerBasis> Context::cached_basis(const std::string& key) const {
  auto it = basis_cache_.find(key);
  return it == basis_cache_.end() ? nullptr : it->second;
}

void Context::store_basis(const std::string& key, std::shared_ptr<const GroebnerBasis> basis) {
  basis_cache_[key] = std::move(basis);
}

std::int64_t uniform_int(std::mt19937_64& gen, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = gen();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

namespace {

using TermVec = std::vector<Term>;

/// Returns p[start..] - c * m * g, assuming both are sorted under `order`.
TermVec sub_scaled(TermVec&& p, std::size_t start, const Rational& c, const Monomial& m, const TermVec& g,
                   const MonomialOrder& order) {
  TermVec out;
  out.reserve(p.size() - start + g.size());
  std::size_t i = start, j = 0;
  Monomial gm;
  if (!g.empty()) gm = m * g[0].monomial;
  Rational prod;
  while (i < p.size() || j < g.size()) {
    int cmp = j == g.size() ? 1 : i == p.size() ? -1 : order.compare(p[i].monomial, gm);
    if (cmp > 0) {
      out.push_back(std::move(p[i++]));
      continue;
    }
    prod = c * g[j].coeff;
    if (cmp < 0) {
      out.push_back({gm, -prod});
    } else {
      p[i].coeff -= prod;
      if (p[i].coeff != 0) out.push_back(std::move(p[i]));
      ++i;
    }
    if (++j < g.size()) gm = m * g[j].monomial;
  }
  return out;
}

TermVec mul_monomial(const TermVec& f, const Monomial& m) {
  TermVec out;
  out.reserve(f.size());
  for (const auto& t : f) out.push_back({t.monomial * m, t.coeff});
  return out;
}

void make_monic(TermVec& p) {
  if (p.empty() || p[0].coeff == 1) return;
  Rational inv = 1 / p[0].coeff;
  for (auto& t : p) t.coeff *= inv;
}

TermVec sorted_terms(const Polynomial& p, const MonomialOrder& order) {
  TermVec terms(p.terms().begin(), p.terms().end());
  if (order.kind() != MonomialOrder::Kind::grevlex)
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return order.compare(a.monomial, b.monomial) > 0; });
  return terms;
}

/// Full reduction of p by the polynomials `basis` (sorted term vectors).
TermVec reduce_full(TermVec p, const std::vector<const TermVec*>& basis, const MonomialOrder& order,
                    Context* ctx) {
  TermVec rest;
  std::size_t start = 0;
  while (start < p.size()) {
    const Term& lead = p[start];
    const TermVec* divisor = nullptr;
    for (const TermVec* g : basis) {
      if ((*g)[0].monomial.divides(lead.monomial)) {
        divisor = g;
        break;
      }
    }
    if (!divisor) {
      rest.push_back(std::move(p[start++]));
      continue;
    }
    if (ctx) ctx->charge();
    Rational c = lead.coeff / (*divisor)[0].coeff;
    Monomial m = lead.monomial / (*divisor)[0].monomial;
    p = sub_scaled(std::move(p), start, c, m, *divisor, order);
    start = 0;
  }
  return rest;
}

class Buchberger {
 public:
  Buchberger(const MonomialOrder& order, Context& ctx) : order_(order), ctx_(ctx) {}

  /// Returns the reduced basis as sorted term vectors, or {1} for the unit ideal.
  std::vector<TermVec> run(std::vector<TermVec> inputs) {
    std::sort(inputs.begin(), inputs.end(), [&](const TermVec& a, const TermVec& b) {
      return order_.compare(a[0].monomial, b[0].monomial) < 0;
    });
    for (auto& f : inputs) {
      std::uint64_t sugar = 0;
      for (const auto& t : f) sugar = std::max(sugar, t.monomial.degree());
      if (!add(std::move(f), sugar)) return unit_basis();
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k)
        if (before(pairs_[k], pairs_[best])) best = k;
      Pair pair = pairs_[best];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
      TermVec s = spoly(pair);
      if (!add(std::move(s), pair.sugar)) return unit_basis();
    }
    return finish();
  }

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint64_t sugar;
  };

  const Monomial& lm(std::size_t k) const { return polys_[k][0].monomial; }

  bool before(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = order_.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  }

  TermVec spoly(const Pair& p) {
    const Monomial mi = p.lcm / lm(p.i);
    const Monomial mj = p.lcm / lm(p.j);
    TermVec left = mul_monomial(polys_[p.i], mi);
    return sub_scaled(std::move(left), 0, polys_[p.j][0].coeff / polys_[p.i][0].coeff, mj, polys_[p.j], order_);
  }

  /// Top-reduces f by the current basis and, if nonzero, inserts it. Returns
  /// false when a nonzero constant appears.
  bool add(TermVec f, std::uint64_t sugar) {
    while (!f.empty()) {
      const std::size_t* divisor = nullptr;
      for (const std::size_t& g : basis_) {
        if (lm(g).divides(f[0].monomial)) {
          divisor = &g;
          break;
        }
      }
      if (!divisor) break;
      ctx_.charge();
      const TermVec& g = polys_[*divisor];
      Monomial m = f[0].monomial / g[0].monomial;
      sugar = std::max(sugar, m.degree() + sugar_[*divisor]);
      Rational c = f[0].coeff / g[0].coeff;
      f = sub_scaled(std::move(f), 0, c, m, g, order_);
    }
    if (f.empty()) return true;
    if (f[0].monomial.is_one()) return false;
    make_monic(f);
    polys_.push_back(std::move(f));
    sugar_.push_back(sugar);
    update(polys_.size() - 1);
    return true;
  }

  std::uint64_t pair_sugar(std::size_t i, std::size_t j, const Monomial& l) const {
    return std::max(sugar_[i] + l.degree() - lm(i).degree(), sugar_[j] + l.degree() - lm(j).degree());
  }

  // Gebauer–Möller installation of the new element h.
  void update(std::size_t h) {
    const Monomial& lh = lm(h);
    std::vector<std::pair<std::size_t, Monomial>> candidates;
    candidates.reserve(basis_.size());
    for (std::size_t g : basis_) candidates.emplace_back(g, lcm(lh, lm(g)));

    std::vector<std::pair<std::size_t, Monomial>> kept;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const auto& [g1, l1] = candidates[k];
      bool keep = gcd(lh, lm(g1)).is_one();
      if (!keep) {
        keep = true;
        for (std::size_t k2 = k + 1; k2 < candidates.size() && keep; ++k2)
          if (candidates[k2].second.divides(l1)) keep = false;
        for (std::size_t k2 = 0; k2 < kept.size() && keep; ++k2)
          if (kept[k2].second.divides(l1)) keep = false;
      }
      if (keep) kept.push_back(candidates[k]);
    }

    std::vector<Pair> next;
    next.reserve(pairs_.size() + kept.size());
    for (auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) && !(lcm(lm(p.i), lh) == p.lcm) && !(lcm(lh, lm(p.j)) == p.lcm);
      if (!drop) next.push_back(std::move(p));
    }
    for (auto& [g, l] : kept) {
      if (gcd(lh, lm(g)).is_one()) continue;  // product criterion
      std::size_t i = std::min(g, h), j = std::max(g, h);
      next.push_back({i, j, l, pair_sugar(i, j, l)});
    }
    pairs_ = std::move(next);

    std::vector<std::size_t> basis;
    for (std::size_t g : basis_)
      if (!lh.divides(lm(g))) basis.push_back(g);
    basis.push_back(h);
    basis_ = std::move(basis);
  }

  std::vector<TermVec> finish() {
    std::vector<std::size_t> order = basis_;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return order_.compare(lm(a), lm(b)) > 0; });
    std::vector<TermVec> out;
    out.reserve(order.size());
    for (std::size_t k : order) {
      std::vector<const TermVec*> others;
      for (std::size_t o : order)
        if (o != k) others.push_back(&polys_[o]);
      TermVec tail(polys_[k].begin() + 1, polys_[k].end());
      TermVec reduced = reduce_full(std::move(tail), others, order_, &ctx_);
      TermVec full;
      full.reserve(reduced.size() + 1);
      full.push_back(polys_[k][0]);
      for (auto& t : reduced) full.push_back(std::move(t));
      out.push_back(std::move(full));
    }
    return out;
  }

  std::vector<TermVec> unit_basis() const { return {}; }

  const MonomialOrder& order_;
  Context& ctx_;
  std::vector<TermVec> polys_;
  std::vector<std::uint64_t> sugar_;
  std::vector<std::size_t> basis_;
  std::vector<Pair> pairs_;
};

std::string cache_key(const Ideal& ideal, const MonomialOrder& order) {
  std::ostringstream key;
  key << order.name() << '|';
  for (const auto& v : ideal.ring().variables()) key << v << ',';
  key << '|';
  for (const auto& g : ideal.generators()) key << g.to_string() << ';';
  return key.str();
}

}  // namespace

bool GroebnerBasis::is_unit() const {
  return data_->basis.size() == 1 && data_->basis[0].is_constant() && !data_->basis[0].is_zero();
}

Polynomial GroebnerBasis::normal_form(const Polynomial& p) const {
  if (!(p.ring() == data_->ring)) throw MathError("normal_form: ring mismatch");
  std::vector<const TermVec*> basis;
  for (const auto& s : data_->sorted) basis.push_back(&s);
  return Polynomial::from_terms(data_->ring, reduce_full(sorted_terms(p, data_->order), basis, data_->order, nullptr));
}

bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
  return a.data_->ring == b.data_->ring && a.data_->order == b.data_->order && a.data_->basis == b.data_->basis;
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& basis) { return basis.normal_form(p); }

GroebnerBasis groebner(const Ideal& ideal, const MonomialOrder& order, Context& ctx) {
  const std::string key = cache_key(ideal, order);
  if (auto hit = ctx.cached_basis(key)) return *hit;

  std::vector<TermVec> inputs;
  for (const auto& g : ideal.generators()) inputs.push_back(sorted_terms(g, order));
  bool unit = false;
  for (const auto& g : ideal.generators())
    if (g.is_constant()) unit = true;

  std::vector<TermVec> result;
  if (!unit && !inputs.empty()) {
    result = Buchberger(order, ctx).run(std::move(inputs));
    unit = result.empty();
  }
  auto data = std::make_shared<GroebnerBasis::Data>(GroebnerBasis::Data{ideal.ring(), order, {}, {}, {}});
  if (unit) {
    Monomial one(ideal.ring().arity());
    result = {TermVec{Term{one, 1}}};
  }
  for (auto& terms : result) {
    data->leading.push_back(terms[0].monomial);
    data->basis.push_back(Polynomial::from_terms(ideal.ring(), terms));
    data->sorted.push_back(std::move(terms));
  }
  GroebnerBasis gb(std::move(data));
  ctx.store_basis(key, std::make_shared<const GroebnerBasis>(gb));
  return gb;
}

GroebnerBasis groebner(const Ideal& ideal, const MonomialOrder& order) {
  Context ctx;
  return groebner(ideal, order, ctx);
}

}  // namespace propint
