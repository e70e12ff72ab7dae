#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "propint/context.hpp"
#include "propint/polynomial.hpp"

namespace propint {

/// Finite generating set in one ring. Zero generators are dropped, so the zero
/// ideal has no generators.
class Ideal {
 public:
  Ideal() = default;
  explicit Ideal(PolyRing ring, std::vector<Polynomial> generators = {});
  static Ideal from_strings(const PolyRing& ring, std::span<const std::string> generators);
  static Ideal unit(const PolyRing& ring);

  const PolyRing& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  bool is_zero() const { return generators_.empty(); }

  /// Rendered generators, e.g. "(x*y - z^2, x)".
  std::string to_string() const;

 private:
  PolyRing ring_;
  std::vector<Polynomial> generators_;
};

/// Reduced Gröbner basis of an ideal under a fixed order. Immutable; copies
/// share the underlying data.
class GroebnerBasis {
 public:
  const PolyRing& ring() const { return data_->ring; }
  const MonomialOrder& order() const { return data_->order; }
  /// Monic, sorted by leading monomial descending.
  const std::vector<Polynomial>& basis() const { return data_->basis; }
  const std::vector<Monomial>& leading_monomials() const { return data_->leading; }
  bool reduced() const { return true; }
  bool is_unit() const;
  bool is_zero() const { return data_->basis.empty(); }

  /// Remainder with no term divisible by a leading monomial.
  Polynomial normal_form(const Polynomial& p) const;
  bool contains(const Polynomial& p) const { return normal_form(p).is_zero(); }
  Ideal ideal() const { return Ideal(data_->ring, data_->basis); }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b);

 private:
  struct Data {
    PolyRing ring;
    MonomialOrder order;
    std::vector<Polynomial> basis;
    std::vector<std::vector<Term>> sorted;  // terms descending under `order`
    std::vector<Monomial> leading;
  };
  explicit GroebnerBasis(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  friend GroebnerBasis groebner(const Ideal&, const MonomialOrder&, Context&);

  std::shared_ptr<const Data> data_;
};

/// Buchberger's algorithm with the sugar selection strategy and the
/// Gebauer–Möller pair criteria. Deterministic for fixed input.
GroebnerBasis groebner(const Ideal& ideal, const MonomialOrder& order, Context& ctx);
GroebnerBasis groebner(const Ideal& ideal, const MonomialOrder& order);

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& basis);

// Ideal arithmetic. All operands must share a ring.
Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);
Ideal intersection(const Ideal& a, const Ideal& b, Context& ctx);
/// a : b
Ideal quotient(const Ideal& a, const Ideal& b, Context& ctx);
Ideal quotient(const Ideal& a, const Polynomial& f, Context& ctx);
/// a : b^infinity, by iterated quotients until the reduced basis stops changing.
Ideal saturation(const Ideal& a, const Ideal& b, Context& ctx);
Ideal saturation(const Ideal& a, const Polynomial& f, Context& ctx);
/// a ∩ Q[x_{k+1}, ...], returned in the ring of the remaining variables.
Ideal eliminate(const Ideal& a, std::size_t first_k, Context& ctx);

bool is_unit_ideal(const Ideal& a, Context& ctx);
bool contains(const Ideal& a, const Polynomial& p, Context& ctx);
/// Same ideal (compares reduced grevlex bases).
bool same_ideal(const Ideal& a, const Ideal& b, Context& ctx);
/// Every generator of `inner` lies in `outer`.
bool ideal_contains(const Ideal& outer, const Ideal& inner, Context& ctx);

/// Returned by dimension() for the unit ideal.
inline constexpr int kEmptyDimension = -1;

/// Krull dimension of ring/I via maximal independent sets of the leading-term ideal.
int dimension(const Ideal& ideal, Context& ctx);
int dimension(const GroebnerBasis& basis);
/// Every variable set (as a bitmask) of size dimension(basis) containing no
/// leading monomial. Empty for the unit ideal.
std::vector<std::uint32_t> independent_sets(const GroebnerBasis& basis);

/// dim_Q ring/I for a zero-dimensional ideal. Throws MathError otherwise.
std::uint64_t colength(const Ideal& ideal, Context& ctx);
std::uint64_t colength(const GroebnerBasis& basis);
/// Standard monomials of a zero-dimensional basis.
std::vector<Monomial> standard_monomials(const GroebnerBasis& basis);

struct HilbertData {
  /// Coefficients of the reduced numerator, lowest degree first.
  std::vector<Integer> numerator;
  int dimension = 0;
  Integer degree;
};

/// Hilbert series of ring/I = numerator(t) / (1-t)^dimension. Requires
/// homogeneous generators; throws MathError otherwise or for the unit ideal.
HilbertData hilbert(const Ideal& ideal, Context& ctx);
/// Numerator of the Hilbert series of ring/(monomials), unreduced, over (1-t)^arity.
std::vector<Integer> hilbert_numerator(std::vector<Monomial> monomials, std::size_t arity);
Integer projective_degree(const Ideal& ideal, Context& ctx);

/// p ∈ √I, via 1 ∈ I + (1 - t·p).
bool radical_membership(const Polynomial& p, const Ideal& ideal, Context& ctx);

// Ring plumbing shared by the geometry layers.

/// Ring with `extra` variables placed before the existing ones.
PolyRing prepend_variables(const PolyRing& ring, std::span<const std::string> extra);
/// Moves an ideal into a ring that contains every variable of the source ring by name.
Ideal move_to_ring(const Ideal& ideal, const PolyRing& target);
Polynomial move_to_ring(const Polynomial& p, const PolyRing& target);

}  // namespace propint
