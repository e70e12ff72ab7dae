#pragma once

#include <optional>
#include <string>
#include <vector>

#include "propint/fundamental_cycle.hpp"

namespace propint {

struct RESummand {
  Rational weight;
  TupleSection tuple;
};

/// Σ weight_k · μ_{(tuple_k)} with positive weights and regular tuples. The
/// empty tuple stands for Y itself.
struct RECyclePresentation {
  VarietyPresentation variety;
  std::vector<RESummand> summands;

  static RECyclePresentation single(const Rational& weight, TupleSection tuple);
  /// a ⊕ b: summands of both, on the same variety.
  static RECyclePresentation sum(const RECyclePresentation& a, const RECyclePresentation& b);
  RECyclePresentation scaled(const Rational& q) const;
  /// Throws MathError if a weight is not positive or a tuple is not regular.
  void validate(Context& ctx) const;
  Cycle realize(Context& ctx) const;
};

struct ProperCertificate {
  bool proper = false;
  std::vector<int> codims;
  int expected = 0;
  /// Codimension of the common intersection, nullopt when it is empty.
  std::optional<int> achieved;
  std::string text() const;
};

/// Proper iff codim_in(Y, ΣJ_j) = Σ codim_in(Y, J_j). An empty common
/// intersection counts as proper.
ProperCertificate check_proper(const VarietyPresentation& y, const std::vector<Ideal>& ideals, Context& ctx);

enum class Route { re_sum, q_cartier, representatives, ideal_cycle, diagonal };
std::string route_name(Route r);

struct ProductReport {
  Cycle cycle;
  std::vector<std::string> certificate;
  Route route = Route::re_sum;
  std::vector<std::string> caveats;
};

/// The RE presentation of a·b: pairwise concatenated tuples with multiplied
/// weights, after checking each pair for properness.
RECyclePresentation re_product(const RECyclePresentation& a, const RECyclePresentation& b, Context& ctx,
                               std::vector<std::string>* certificate = nullptr);

ProductReport intersect_re(const RECyclePresentation& a, const RECyclePresentation& b, Context& ctx);

/// (1/(q1 q2)) · μ_{(f1, f2)} where div f_j = q_j μ_j.
ProductReport intersect_qcartier(const VarietyPresentation& y, const Polynomial& f1, unsigned q1,
                                 const Polynomial& f2, unsigned q2, Context& ctx);

/// Jacobian criterion: the singular locus, I_Y plus the c×c minors of the
/// Jacobian (c the codimension), is empty. Exponential in c; an optional check.
bool verify_smooth(const VarietyPresentation& y, Context& ctx);

/// Representatives μ'_j on a smooth ambient of the factors μ_j on Y ⊂ ambient.
struct RepresentativeSet {
  VarietyPresentation ambient;
  VarietyPresentation y;
  std::vector<RECyclePresentation> reps;
};

/// i_*(μ_1 ⋯ μ_r) = μ'_1 ⋯ μ'_r · i_*Y, computed as fundamental cycles of
/// I_Y + (concatenated tuples) and read as a cycle on Y.
ProductReport intersect_via_representatives(const RepresentativeSet& r, Context& ctx);

/// J·μ := Σ a_j ι_* μ_{ι^* f} over the terms a_j [Z_j] of μ. Accepts cycles
/// that are not nice; the result may then depend on the ideal and not only on
/// its fundamental cycle, which the report records as a caveat.
ProductReport intersect_ideal_cycle(const TupleSection& f, const Cycle& mu, Context& ctx);

/// The product on an affine space recomputed through the diagonal of the
/// doubled space; throws MathError if it disagrees with intersect_re.
ProductReport diagonal_crosscheck(const VarietyPresentation& ambient, const RECyclePresentation& mu1,
                                  const RECyclePresentation& mu2, Context& ctx);

}  // namespace propint
