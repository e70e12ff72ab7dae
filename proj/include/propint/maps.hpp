#pragma once

#include <vector>

#include "propint/fundamental_cycle.hpp"

namespace propint {

/// Polynomial map source → target, x ↦ (f_1(x), ..., f_M(x)). Finiteness is
/// the caller's assertion.
struct FiniteMapPresentation {
  VarietyPresentation source;
  VarietyPresentation target;
  std::vector<Polynomial> component_fns;
  bool asserted_finite = true;

  /// Throws MathError unless there is one function per target variable, all
  /// in the source ring, and every target generator pulls back into I_source.
  void validate(Context& ctx) const;
  /// f^* g = g(f_1, ..., f_M) in the source ring.
  Polynomial pullback(const Polynomial& g) const;
  TupleSection pullback(const TupleSection& t) const;
};

struct DegreeCertificate {
  std::uint64_t degree = 0;
  PointSpec sample_point;
  std::uint64_t fiber_colength = 0;
};

/// Ideal of the closure of m(C) in the target ring.
Ideal image_ideal(const FiniteMapPresentation& m, const PrimeComponent& c, Context& ctx);

/// Number of points of a generic fiber of m|_C, as the colength of
/// I_C + (f - f(x̃)) at a random witness x̃. Three seeds must agree.
DegreeCertificate generic_degree(const FiniteMapPresentation& m, const PrimeComponent& c, Context& ctx);

/// Σ a_j deg(m|_{Z_j}) [m(Z_j)], dropping terms whose image has smaller dimension.
Cycle pushforward_cycle(const FiniteMapPresentation& m, const Cycle& mu, Context& ctx);

/// (1/deg q) q_*(fundamental cycle of (q^*f_1, q^*f_2) on the smooth source).
Cycle local_model_product(const FiniteMapPresentation& q, const TupleSection& f1, const TupleSection& f2,
                          Context& ctx);

}  // namespace propint
