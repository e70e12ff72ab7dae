#pragma once

#include <optional>
#include <string>
#include <vector>

#include "propint/geometry.hpp"

namespace propint {

/// Tuple f = (f_1, ..., f_k) of ambient polynomials restricted to Y, with the
/// codimension the caller expects it to cut out.
struct TupleSection {
  VarietyPresentation variety;
  std::vector<Polynomial> entries;
  int declared_codim = 0;

  /// (f_1, ..., f_k) in the ring of Y.
  Ideal ideal() const;
  /// Throws MathError when an entry is not in the ring of Y or vanishes identically on Y.
  void validate(Context& ctx) const;

  static TupleSection of(const VarietyPresentation& y, std::vector<Polynomial> entries);
  static TupleSection parse(const VarietyPresentation& y, const std::vector<std::string>& entries);
};

/// Concatenation f ⧺ g on the same variety.
TupleSection concatenate(const TupleSection& a, const TupleSection& b);

struct FundamentalCycleResult {
  Cycle cycle;
  bool regular = false;
  std::vector<std::string> log;
};

/// True iff V(I_Y + (f)) has codimension equal to the number of entries in Y.
/// An empty intersection counts as regular.
bool is_regular_intersection(const TupleSection& f, Context& ctx);

/// Σ m_j [Z_j] over the components of V(I_Y + (f)), where m_j is the length at
/// the generic point of Z_j. Components come from `candidates` when given.
FundamentalCycleResult fundamental_cycle(const TupleSection& f, Context& ctx,
                                         const std::optional<std::vector<PrimeComponent>>& candidates = std::nullopt);

/// Fundamental cycle of a single nonzerodivisor on Y.
FundamentalCycleResult divisor(const TupleSection& f, Context& ctx,
                               const std::optional<std::vector<PrimeComponent>>& candidates = std::nullopt);

/// True iff f is a nonzerodivisor modulo I_Y, that is I_Y : f = I_Y.
bool is_nonzerodivisor(const VarietyPresentation& y, const Polynomial& f, Context& ctx);

/// e·[p] where e is the Hilbert–Samuel multiplicity of (f) at the isolated
/// point p, by generic reduction: the minimum over seeded trials of the local
/// length of kappa random combinations of the entries, confirmed by three
/// more trials.
Cycle m_class(const TupleSection& f, int kappa, const PointSpec& p, Context& ctx);

}  // namespace propint
