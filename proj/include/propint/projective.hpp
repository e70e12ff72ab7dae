#pragma once

#include <optional>
#include <vector>

#include "propint/intersect.hpp"

namespace propint {

/// A cycle on a projective variety Y ⊂ P^N is kept as a Cycle on the affine
/// cone over Y: the variety's ideal and every prime are homogeneous in the
/// N + 1 coordinates.
using ProjectiveCycle = Cycle;

/// True iff the ideal is generated by homogeneous polynomials (tested on its
/// reduced grevlex basis).
bool is_homogeneous_ideal(const Ideal& ideal, Context& ctx);

/// Σ a_j deg(Z_j). Throws MathError for a prime that is not homogeneous.
Rational total_degree(const ProjectiveCycle& mu, Context& ctx);

/// The ideal on the chart x_i = 1, in the ring without x_i.
Ideal dehomogenize_ideal(const Ideal& homogeneous, std::size_t chart);
/// Closure in P^N of an ideal on the chart x_i = 1. `projective` is the ring
/// with x_i restored at position `chart`.
Ideal homogenize_ideal(const Ideal& affine, const PolyRing& projective, std::size_t chart, Context& ctx);

/// First standard chart x_i = 1 such that no component of V(k) lies in
/// {x_i = 0}; nullopt if there is none.
std::optional<std::size_t> select_chart(const Ideal& homogeneous, Context& ctx);

struct BezoutSection {
  unsigned degree = 1;
  Polynomial form;
  /// The divisor is (1/q) div(form).
  unsigned q = 1;
};

struct BezoutReport {
  ProjectiveCycle product;
  std::size_t chart = 0;
  Integer degree_y;
  Rational total;
  /// Π(d_j / q_j) · deg Y.
  Rational expected;
  bool holds = false;
  std::vector<std::string> certificate;
};

/// Computes (1/q_r) div F_r ⋯ (1/q_1) div F_1 in an affine chart meeting every
/// component, homogenizes it and compares its total degree with
/// Π(d_j / q_j) · deg Y. Throws MathError on properness failure or when no
/// standard chart sees every component.
BezoutReport bezout_on_Y(const VarietyPresentation& y, const std::vector<BezoutSection>& sections, Context& ctx,
                         std::optional<std::size_t> chart = std::nullopt);

}  // namespace propint
