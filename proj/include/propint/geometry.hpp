#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "propint/ideal.hpp"

namespace propint {

/// Affine variety Y = V(I_Y). Radicality, purity and smoothness are taken on
/// the caller's word; they are echoed into reports, never checked.
struct VarietyPresentation {
  Ideal defining;
  int dim = 0;
  bool asserted_radical = true;
  bool asserted_pure = true;
  bool asserted_smooth = false;

  const PolyRing& ring() const { return defining.ring(); }
  /// Computes dim from the defining ideal. Throws MathError for the empty variety.
  static VarietyPresentation make(Ideal defining, Context& ctx);
  static VarietyPresentation affine_space(const PolyRing& ring);
};

using PointSpec = std::vector<Rational>;

/// Coordinates as polynomials in parameters: t ↦ (coordinates[i](t)).
struct Parametrization {
  PolyRing parameters;
  std::vector<Polynomial> coordinates;
  PointSpec at(std::span<const Rational> values) const;
};

/// Prime ideal (asserted) with its dimension and an optional way of producing
/// points on it. The ideal is stored as its reduced grevlex basis so that two
/// components compare equal exactly when the ideals are equal.
class PrimeComponent {
 public:
  PrimeComponent() = default;
  PrimeComponent(const Ideal& prime, Context& ctx);

  const Ideal& prime() const { return prime_; }
  int dim() const { return dim_; }
  /// Canonical generator strings, sorted.
  const std::vector<std::string>& key() const { return key_; }

  std::optional<PointSpec> point;
  std::optional<Parametrization> parametrization;

  static PrimeComponent from_point(const PolyRing& ring, const PointSpec& p, Context& ctx);

  friend bool operator==(const PrimeComponent& a, const PrimeComponent& b) { return a.key_ == b.key_; }
  friend bool operator<(const PrimeComponent& a, const PrimeComponent& b) { return a.key_ < b.key_; }

 private:
  Ideal prime_;
  int dim_ = 0;
  std::vector<std::string> key_;
};

struct CycleTerm {
  Rational coeff;
  PrimeComponent component;
};

/// Finite Q-combination of distinct prime components on one variety. Terms
/// stay sorted by component key with nonzero coefficients.
class Cycle {
 public:
  Cycle() = default;
  explicit Cycle(VarietyPresentation variety) : variety_(std::move(variety)) {}

  const VarietyPresentation& variety() const { return variety_; }
  const std::vector<CycleTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  bool effective() const;
  /// Adds coeff·[component], merging with an existing term.
  void add(const Rational& coeff, const PrimeComponent& component);
  std::string to_string() const;

  friend bool operator==(const Cycle& a, const Cycle& b);

 private:
  VarietyPresentation variety_;
  std::vector<CycleTerm> terms_;
};

Cycle cycle_add(const Cycle& a, const Cycle& b);
Cycle cycle_scale(const Rational& q, const Cycle& a);
std::vector<PrimeComponent> support(const Cycle& a);

/// n - dim(I_Y + J), or nullopt when the intersection is empty.
std::optional<int> codim_in(const VarietyPresentation& y, const Ideal& j, Context& ctx);

struct ComponentVerdict {
  bool accepted = true;
  std::vector<std::string> failures;
};

/// Accepts candidates iff each contains I_Y + J, their intersection lies in
/// the radical of I_Y + J, and each has the dimension of V(I_Y + J).
ComponentVerdict verify_components(const VarietyPresentation& y, const Ideal& j,
                                   const std::vector<PrimeComponent>& candidates, Context& ctx);

/// Irreducible components of V(I_Y + J) found automatically: rational points of
/// zero-dimensional pieces, and coordinate strata cut out by linear or binomial
/// prime ideals. Throws MathError when some piece falls outside these classes.
std::vector<PrimeComponent> discover_components(const VarietyPresentation& y, const Ideal& j, Context& ctx);

/// Candidates when given (and verified), otherwise discover_components.
std::vector<PrimeComponent> resolve_components(const VarietyPresentation& y, const Ideal& j,
                                               const std::optional<std::vector<PrimeComponent>>& candidates,
                                               Context& ctx);

struct RationalPoints {
  std::vector<PointSpec> points;  // sorted
  /// False when V(ideal) also has points with irrational coordinates.
  bool complete = true;
};

/// Rational points of a zero-dimensional ideal: each coordinate runs over the
/// rational roots of its minimal polynomial in the quotient algebra.
RationalPoints rational_points(const Ideal& zero_dim, Context& ctx);

/// Length of the localization of ring/K at p. Requires p isolated in V(K) or
/// outside it (then 0); throws MathError when p lies on a positive-dimensional
/// component.
std::uint64_t local_length(const Ideal& k, const PointSpec& p, Context& ctx);
std::uint64_t local_colength(const VarietyPresentation& y, const Ideal& j, const PointSpec& p, Context& ctx);

/// A random point on the component, from its point, its parametrization, or
/// a random rational fiber over an independent variable set.
PointSpec witness_point(const PrimeComponent& z, Context& ctx);

/// Length of ring/(I_Y + J) at the generic point of Z: slice with dim Z random
/// hyperplanes through a witness, then take the local length there. Three
/// independent slices must agree.
std::uint64_t multiplicity_along(const VarietyPresentation& y, const Ideal& j, const PrimeComponent& z, Context& ctx);

/// Ideal of polynomials in the ring, (x_i - p_i).
Ideal point_ideal(const PolyRing& ring, const PointSpec& p);

}  // namespace propint
