#include "propint/polynomial.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "propint/errors.hpp"

namespace propint {

namespace {

constexpr std::uint32_t kMaxExponent = 1u << 30;

std::uint32_t checked_add(std::uint32_t a, std::uint32_t b) {
  std::uint64_t s = std::uint64_t(a) + b;
  if (s >= kMaxExponent) throw MathError("exponent overflow");
  return static_cast<std::uint32_t>(s);
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

const std::shared_ptr<const std::vector<std::string>>& empty_names() {
  static const auto names = std::make_shared<const std::vector<std::string>>();
  return names;
}

int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

// ---------------------------------------------------------------- PolyRing

PolyRing::PolyRing() : vars_(empty_names()) {}

PolyRing::PolyRing(std::vector<std::string> variables) {
  if (variables.size() > kMaxVariables)
    throw MathError("too many variables (max " + std::to_string(kMaxVariables) + ")");
  std::set<std::string> seen;
  for (const auto& v : variables) {
    if (!valid_identifier(v)) throw MathError("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw MathError("duplicate variable name '" + v + "'");
  }
  vars_ = std::make_shared<const std::vector<std::string>>(std::move(variables));
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_->size(); ++i)
    if ((*vars_)[i] == name) return i;
  return std::nullopt;
}

std::string PolyRing::fresh_name(std::string_view stem) const {
  std::string candidate(stem);
  for (int k = 0; index_of(candidate); ++k) candidate = std::string(stem) + std::to_string(k);
  return candidate;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::size_t arity) : arity_(static_cast<std::uint8_t>(arity)) {
  if (arity > kMaxVariables) throw MathError("monomial arity exceeds limit");
}

Monomial::Monomial(std::initializer_list<std::uint32_t> exponents) : Monomial(exponents.size()) {
  std::size_t i = 0;
  for (auto e : exponents) set(i++, e);
}

Monomial Monomial::from_exponents(std::span<const std::uint32_t> exponents) {
  Monomial m(exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) m.set(i, exponents[i]);
  return m;
}

void Monomial::set(std::size_t i, std::uint32_t e) {
  if (e >= kMaxExponent) throw MathError("exponent overflow");
  degree_ = degree_ - exp_[i] + e;
  exp_[i] = e;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < arity_; ++i)
    if (exp_[i] > other.exp_[i]) return false;
  return true;
}

std::uint32_t Monomial::support() const {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < arity_; ++i)
    if (exp_[i]) mask |= 1u << i;
  return mask;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a.arity_);
  for (std::size_t i = 0; i < a.arity_; ++i) r.exp_[i] = checked_add(a.exp_[i], b.exp_[i]);
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r(a.arity_);
  for (std::size_t i = 0; i < a.arity_; ++i) r.exp_[i] = a.exp_[i] - b.exp_[i];
  r.degree_ = a.degree_ - b.degree_;
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.arity_);
  for (std::size_t i = 0; i < a.arity_; ++i) r.set(i, std::max(a.exp_[i], b.exp_[i]));
  return r;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r(a.arity_);
  for (std::size_t i = 0; i < a.arity_; ++i) r.set(i, std::min(a.exp_[i], b.exp_[i]));
  return r;
}

// ---------------------------------------------------------------- MonomialOrder

std::string MonomialOrder::name() const {
  switch (kind_) {
    case Kind::lex: return "lex";
    case Kind::grevlex: return "grevlex";
    case Kind::block: return "block(" + std::to_string(block_) + ")";
  }
  return "?";
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = a.arity();
  switch (kind_) {
    case Kind::lex:
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      return 0;
    case Kind::grevlex:
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      for (std::size_t i = n; i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
      return 0;
    case Kind::block: {
      const std::size_t k = std::min(block_, n);
      if (int c = grevlex_range(a, b, 0, k)) return c;
      return grevlex_range(a, b, k, n);
    }
  }
  return 0;
}

void normalize_terms(std::vector<Term>& terms, const MonomialOrder& order) {
  std::sort(terms.begin(), terms.end(),
            [&](const Term& x, const Term& y) { return order.compare(x.monomial, y.monomial) > 0; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms = std::move(out);
}

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(PolyRing ring, const Rational& c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({Monomial(p.ring_.arity()), c});
  return p;
}

Polynomial Polynomial::variable(PolyRing ring, std::size_t index) {
  Monomial m(ring.arity());
  m.set(index, 1);
  return term(std::move(ring), m, 1);
}

Polynomial Polynomial::term(PolyRing ring, Monomial m, const Rational& c) {
  Polynomial p(std::move(ring));
  if (m.arity() != p.ring_.arity()) throw MathError("monomial arity does not match ring");
  if (c != 0) p.terms_.push_back({std::move(m), c});
  return p;
}

Polynomial Polynomial::from_terms(PolyRing ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  for (const auto& t : terms)
    if (t.monomial.arity() != p.ring_.arity()) throw MathError("monomial arity does not match ring");
  normalize_terms(terms, MonomialOrder::grevlex());
  p.terms_ = std::move(terms);
  return p;
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
  return 0;
}

std::uint64_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.monomial.degree() != terms_.front().monomial.degree()) return false;
  return true;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

std::vector<Term> merge_add(std::span<const Term> a, std::span<const Term> b, bool subtract) {
  const auto order = MonomialOrder::grevlex();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? -1 : j == b.size() ? 1 : order.compare(a[i].monomial, b[j].monomial);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].monomial, subtract ? Rational(-b[j].coeff) : b[j].coeff});
      ++j;
    } else {
      Rational s = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (s != 0) out.push_back({a[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

void require_same_ring(const Polynomial& a, const Polynomial& b) {
  if (!(a.ring() == b.ring())) throw MathError("polynomials live in different rings");
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(*this, other);
  terms_ = merge_add(terms_, other.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_ring(*this, other);
  terms_ = merge_add(terms_, other.terms_, true);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a, b);
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) prod.push_back({x.monomial * y.monomial, x.coeff * y.coeff});
  Polynomial r(a.ring_);
  normalize_terms(prod, MonomialOrder::grevlex());
  r.terms_ = std::move(prod);
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!(a.ring_ == b.ring_) || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].monomial == b.terms_[i].monomial) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != ring_.arity())
    throw MathError("evaluate: point has " + std::to_string(point.size()) + " coordinates, ring has " +
                    std::to_string(ring_.arity()));
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      if (t.monomial[i] == 0) continue;
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), point[i].get_num_mpz_t(), t.monomial[i]);
      mpz_pow_ui(pw.get_den_mpz_t(), point[i].get_den_mpz_t(), t.monomial[i]);
      pw.canonicalize();
      v *= pw;
    }
    sum += v;
  }
  return sum;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coeff < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    Rational mag = abs(t.coeff);
    bool need_star = false;
    if (t.monomial.is_one()) {
      out << propint::to_string(mag);
      continue;
    }
    if (mag != 1) {
      out << propint::to_string(mag);
      need_star = true;
    }
    for (std::size_t i = 0; i < t.monomial.arity(); ++i) {
      if (t.monomial[i] == 0) continue;
      if (need_star) out << '*';
      out << ring_.name(i);
      if (t.monomial[i] > 1) out << '^' << t.monomial[i];
      need_star = true;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------- free functions

Polynomial pow(const Polynomial& p, unsigned exponent) {
  Polynomial result = Polynomial::constant(p.ring(), 1);
  Polynomial base = p;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

Polynomial derivative(const Polynomial& p, std::size_t var) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    if (t.monomial[var] == 0) continue;
    Monomial m = t.monomial;
    m.set(var, m[var] - 1);
    out.push_back({m, t.coeff * t.monomial[var]});
  }
  return Polynomial::from_terms(p.ring(), std::move(out));
}

Polynomial substitute(const Polynomial& p, const PolyRing& target, std::span<const Polynomial> images) {
  if (images.size() != p.ring().arity()) throw MathError("substitute: wrong number of images");
  // Power cache per variable keeps repeated exponents cheap.
  std::vector<std::map<std::uint32_t, Polynomial>> powers(images.size());
  auto power_of = [&](std::size_t i, std::uint32_t e) -> const Polynomial& {
    auto it = powers[i].find(e);
    if (it != powers[i].end()) return it->second;
    return powers[i].emplace(e, pow(images[i], e)).first->second;
  };
  Polynomial result(target);
  for (const auto& t : p.terms()) {
    Polynomial acc = Polynomial::constant(target, t.coeff);
    for (std::size_t i = 0; i < images.size(); ++i)
      if (t.monomial[i]) acc = acc * power_of(i, t.monomial[i]);
    result += acc;
  }
  return result;
}

Polynomial remap(const Polynomial& p, const PolyRing& target, std::span<const std::size_t> index) {
  if (index.size() != p.ring().arity()) throw MathError("remap: index size mismatch");
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m(target.arity());
    for (std::size_t i = 0; i < index.size(); ++i)
      if (t.monomial[i]) m.set(index[i], checked_add(m[index[i]], t.monomial[i]));
    out.push_back({m, t.coeff});
  }
  return Polynomial::from_terms(target, std::move(out));
}

Polynomial homogenize(const Polynomial& p, const std::string& new_var, std::size_t position) {
  const PolyRing& ring = p.ring();
  if (ring.index_of(new_var)) throw MathError("homogenize: variable '" + new_var + "' already in ring");
  if (position > ring.arity()) throw MathError("homogenize: bad position");
  std::vector<std::string> names = ring.variables();
  names.insert(names.begin() + static_cast<std::ptrdiff_t>(position), new_var);
  PolyRing target(std::move(names));
  const std::uint64_t d = p.total_degree();
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    Monomial m(target.arity());
    for (std::size_t i = 0; i < ring.arity(); ++i) m.set(i < position ? i : i + 1, t.monomial[i]);
    m.set(position, static_cast<std::uint32_t>(d - t.monomial.degree()));
    out.push_back({m, t.coeff});
  }
  return Polynomial::from_terms(target, std::move(out));
}

Polynomial dehomogenize(const Polynomial& p, std::size_t var, const Rational& value) {
  const PolyRing& ring = p.ring();
  if (var >= ring.arity()) throw MathError("dehomogenize: bad variable index");
  std::vector<std::string> names = ring.variables();
  names.erase(names.begin() + static_cast<std::ptrdiff_t>(var));
  PolyRing target(std::move(names));
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    Monomial m(target.arity());
    for (std::size_t i = 0; i < ring.arity(); ++i)
      if (i != var) m.set(i < var ? i : i - 1, t.monomial[i]);
    Rational c = t.coeff;
    for (std::uint32_t k = 0; k < t.monomial[var]; ++k) c *= value;
    out.push_back({m, c});
  }
  return Polynomial::from_terms(target, std::move(out));
}

std::pair<Monomial, Rational> leading_term(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) throw MathError("leading_term of the zero polynomial");
  const Term* best = &p.terms()[0];
  for (const auto& t : p.terms())
    if (order.compare(t.monomial, best->monomial) > 0) best = &t;
  return {best->monomial, best->coeff};
}

Polynomial divide_exact(const Polynomial& p, const Polynomial& divisor) {
  require_same_ring(p, divisor);
  if (divisor.is_zero()) throw MathError("division by zero polynomial");
  const auto& lead = divisor.terms()[0];
  Polynomial rest = p;
  std::vector<Term> quotient;
  while (!rest.is_zero()) {
    const auto& top = rest.terms()[0];
    if (!lead.monomial.divides(top.monomial)) throw MathError("divide_exact: not divisible");
    Term q{top.monomial / lead.monomial, top.coeff / lead.coeff};
    rest -= Polynomial::term(p.ring(), q.monomial, q.coeff) * divisor;
    quotient.push_back(std::move(q));
  }
  return Polynomial::from_terms(p.ring(), std::move(quotient));
}

}  // namespace propint
