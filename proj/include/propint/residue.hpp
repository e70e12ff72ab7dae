#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "propint/context.hpp"
#include "propint/polynomial.hpp"

namespace propint {

/// Admissible cutoffs χ: 0 on [0, 1], 1 on [2, ∞).
enum class Cutoff {
  quintic,  // C² join 10t³ - 15t⁴ + 6t⁵
  smooth,   // C∞ join e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)})
};

double cutoff_value(Cutoff c, double s);
double cutoff_derivative(Cutoff c, double s);

struct RegularizationJob {
  /// Polynomials in one variable (kappa 1) or two variables (kappa 2).
  std::vector<Polynomial> tuple;
  int kappa = 1;
  Cutoff cutoff = Cutoff::quintic;
  std::vector<double> epsilons{1e-2, 3e-3, 1e-3, 3e-4};
  /// Angular grid size for kappa 1; number of directions on S³ for kappa 2.
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct MassEstimate {
  std::vector<std::pair<double, double>> per_epsilon;
  double extrapolated = 0;
  double error_bar = 0;
  /// Exponent p of the fitted model m(ε) = m₀ + C ε^p, when a fit was possible.
  std::optional<double> fitted_order;
  bool converged = true;
  std::vector<std::string> notes;
};

/// Fits m(ε) = m₀ + C ε^p through the last three schedule points and returns
/// the estimate with per_epsilon filled in.
MassEstimate extrapolate(const std::vector<std::pair<double, double>>& per_epsilon, double quadrature_error);

/// Mass of ∂̄χ(|f|²/ε) ∧ ∂log|f|²/(2πi) against a radial bump that is 1 on
/// |z| ≤ 1/2 and 0 outside the unit disc.
MassEstimate lelong_mass_1d(const RegularizationJob& job, Context& ctx);

/// Mass of ∂̄χ(|σ|²/ε) ∧ (2πi)⁻¹∂log|σ|² ∧ dd^c log|σ|² against the same bump
/// on the unit ball of C², by randomly shifted Halton directions on S³ and
/// adaptive radial quadrature.
MassEstimate lelong_mass_2d(const RegularizationJob& job, Context& ctx);

}  // namespace propint
