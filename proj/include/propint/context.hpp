#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace propint {

class GroebnerBasis;

/// Per-job state: the seeded random stream, the reduction-step budget, the
/// certificate/caveat log that ends up in reports, and a Gröbner-basis memo.
/// A Context is never shared between jobs.
class Context {
 public:
  static constexpr std::uint64_t kDefaultStepBudget = 10'000'000;

  explicit Context(std::uint64_t seed = 0, std::uint64_t step_budget = kDefaultStepBudget);

  std::uint64_t seed() const { return seed_; }
  /// Sub-seed for one randomized decision. Draw order is deterministic.
  std::uint64_t next_seed() { return stream_(); }

  /// Counts reduction steps; throws ResourceLimit once the budget is spent.
  void charge(std::uint64_t steps = 1);
  std::uint64_t steps_used() const { return steps_used_; }
  std::uint64_t step_budget() const { return step_budget_; }

  void certify(std::string line) { certificates_.push_back(std::move(line)); }
  void caveat(const std::string& line);
  const std::vector<std::string>& certificates() const { return certificates_; }
  const std::vector<std::string>& caveats() const { return caveats_; }

  std::shared_ptr<const GroebnerBasis> cached_basis(const std::string& key) const;
  void store_basis(const std::string& key, std::shared_ptr<const GroebnerBasis> basis);

 private:
  std::uint64_t seed_;
  std::mt19937_64 stream_;
  std::uint64_t step_budget_;
  std::uint64_t steps_used_ = 0;
  std::vector<std::string> certificates_;
  std::vector<std::string> caveats_;
  std::map<std::string, std::shared_ptr<const GroebnerBasis>> basis_cache_;
};

/// Uniform integer in [lo, hi] drawn from a generator. Written out instead of
/// std::uniform_int_distribution so that streams agree across standard libraries.
std::int64_t uniform_int(std::mt19937_64& gen, std::int64_t lo, std::int64_t hi);

}  // namespace propint
