#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "propint/rational.hpp"

namespace propint {

inline constexpr std::size_t kMaxVariables = 32;

/// Ordered list of distinct variable names over Q. Copies share storage.
class PolyRing {
 public:
  PolyRing();
  explicit PolyRing(std::vector<std::string> variables);

  std::size_t arity() const { return vars_->size(); }
  const std::vector<std::string>& variables() const { return *vars_; }
  const std::string& name(std::size_t i) const { return (*vars_)[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// A name not used by this ring, derived from `stem`.
  std::string fresh_name(std::string_view stem) const;

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.vars_ == b.vars_ || *a.vars_ == *b.vars_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> vars_;
};

/// Exponent vector. Storage is inline; unused slots stay zero so that whole-array
/// comparison is valid.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity);
  Monomial(std::initializer_list<std::uint32_t> exponents);
  static Monomial from_exponents(std::span<const std::uint32_t> exponents);

  std::size_t arity() const { return arity_; }
  std::uint32_t operator[](std::size_t i) const { return exp_[i]; }
  void set(std::size_t i, std::uint32_t e);
  std::uint64_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }
  std::span<const std::uint32_t> exponents() const { return {exp_.data(), arity_}; }

  bool divides(const Monomial& other) const;
  /// Bitmask of variables with positive exponent.
  std::uint32_t support() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Exact quotient; requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend Monomial gcd(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.arity_ == b.arity_ && a.exp_ == b.exp_;
  }

 private:
  std::array<std::uint32_t, kMaxVariables> exp_{};
  std::uint64_t degree_ = 0;
  std::uint8_t arity_ = 0;
};

/// Admissible monomial orders. block_elimination(k) compares the first k
/// variables by grevlex first, then the remaining variables by grevlex, so it
/// eliminates the first k variables.
class MonomialOrder {
 public:
  enum class Kind { lex, grevlex, block };

  static MonomialOrder lex() { return MonomialOrder(Kind::lex, 0); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, 0); }
  static MonomialOrder block_elimination(std::size_t k) { return MonomialOrder(Kind::block, k); }

  Kind kind() const { return kind_; }
  std::size_t block_size() const { return block_; }
  std::string name() const;

  /// Negative, zero or positive as a <, =, > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind_ == b.kind_ && a.block_ == b.block_;
  }

 private:
  MonomialOrder(Kind kind, std::size_t block) : kind_(kind), block_(block) {}
  Kind kind_;
  std::size_t block_;
};

struct Term {
  Monomial monomial;
  Rational coeff;
};

/// Sorts terms descending under `order` and merges equal monomials, dropping zeros.
void normalize_terms(std::vector<Term>& terms, const MonomialOrder& order);

/// Sparse polynomial over Q. Terms are stored strictly descending in grevlex,
/// with no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(PolyRing ring) : ring_(std::move(ring)) {}

  static Polynomial constant(PolyRing ring, const Rational& c);
  static Polynomial variable(PolyRing ring, std::size_t index);
  static Polynomial term(PolyRing ring, Monomial m, const Rational& c);
  static Polynomial from_terms(PolyRing ring, std::vector<Term> terms);

  const PolyRing& ring() const { return ring_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  /// Coefficient of the monomial 1.
  Rational constant_term() const;
  std::uint64_t total_degree() const;
  bool is_homogeneous() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Exact value at a rational point. Throws MathError on arity mismatch.
  Rational evaluate(std::span<const Rational> point) const;

  /// Canonical text form accepted back by parse_polynomial.
  std::string to_string() const;

 private:
  PolyRing ring_;
  std::vector<Term> terms_;
};

Polynomial pow(const Polynomial& p, unsigned exponent);
Polynomial derivative(const Polynomial& p, std::size_t var);

/// Replaces variable i of p by images[i] (all in `target`).
Polynomial substitute(const Polynomial& p, const PolyRing& target, std::span<const Polynomial> images);

/// Moves p into `target`, sending variable i to target variable index[i].
Polynomial remap(const Polynomial& p, const PolyRing& target, std::span<const std::size_t> index);

/// Homogenizes with a new variable inserted at `position` (default: first).
Polynomial homogenize(const Polynomial& p, const std::string& new_var, std::size_t position = 0);
/// Sets variable `var` to `value` and drops it from the ring.
Polynomial dehomogenize(const Polynomial& p, std::size_t var, const Rational& value = 1);

/// Maximal term under `order`. Throws MathError for the zero polynomial.
std::pair<Monomial, Rational> leading_term(const Polynomial& p, const MonomialOrder& order);

/// Divides exactly; throws MathError if divisor does not divide p.
Polynomial divide_exact(const Polynomial& p, const Polynomial& divisor);

/// Grammar: expr := [sign] term (('+'|'-') term)*; term := factor ('*' factor)*;
/// factor := atom ('^' uint)?; atom := var | rational | '(' expr ')'.
Polynomial parse_polynomial(std::string_view text, const PolyRing& ring);

}  // namespace propint
