#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "propint/context.hpp"
#include "propint/geometry.hpp"

namespace propint::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kInternalFailure = 1, kMathFailure = 2, kResourceLimit = 3, kSchemaFailure = 4 };

struct RunOptions {
  std::uint64_t budget = Context::kDefaultStepBudget;
  unsigned threads = 1;
};

struct Outcome {
  Json report;
  int exit_code = kOk;
};

/// Parses and runs one job document. Never throws for bad input; the report
/// carries the error and exit_code its class.
Outcome run_job_text(const std::string& text, const RunOptions& options);
Outcome run_job(const Json& job, const RunOptions& options);

/// Report for input that never reached a command (unreadable file, bad flags).
Outcome schema_failure(const std::string& message);

/// Sorted list of {"coeff": "p/q", "prime": {"generators": [...]}}.
Json cycle_to_json(const Cycle& cycle);

/// The report without its timing field, compact. Two runs of the same job
/// must agree on this string.
std::string canonical_dump(const Json& report);

/// Runs every case listed in <dir>/manifest.json, writes a pass/fail table to
/// `table` and returns the summary report.
Outcome verify_corpus(const std::filesystem::path& dir, const RunOptions& options, std::ostream& table);

}  // namespace propint::cli
