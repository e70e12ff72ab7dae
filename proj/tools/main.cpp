#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "job.hpp"

#ifndef PROPINT_CORPUS_DIR
#define PROPINT_CORPUS_DIR "corpus"
#endif

namespace {

using propint::cli::Json;

const char* const kCommands[] = {"gb",          "dim",         "fundcycle", "divisor", "intersect",
                                 "intersect-reps", "ideal-cycle", "pushforward", "local-model", "degree",
                                 "bezout",      "oracle"};

int emit(const Json& report, const std::string& out_path, int code) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "propint: cannot write " << out_path << "\n";
      return propint::cli::kSchemaFailure;
    }
    out << text;
  }
  return code;
}

bool read_job(const std::string& path, std::string& text) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    text = s.str();
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream s;
  s << in.rdbuf();
  text = s.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact proper intersection products on singular varieties"};
  app.require_subcommand(1);

  std::string job_path, out_path, corpus_dir = PROPINT_CORPUS_DIR;
  propint::cli::RunOptions options;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Report destination (default stdout)");
    sub->add_option("--budget", options.budget, "Reduction-step budget")->check(CLI::PositiveNumber);
    sub->add_option("--threads", options.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  };
  for (const char* name : kCommands) {
    CLI::App* sub = app.add_subcommand(name, std::string("Run the ") + name + " command on a job file");
    sub->add_option("--job", job_path, "Job file, or - for stdin")->required();
    add_common(sub);
  }
  CLI::App* verify = app.add_subcommand("verify-corpus", "Run every golden case and compare");
  verify->add_option("--corpus", corpus_dir, "Corpus directory holding manifest.json");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : propint::cli::kSchemaFailure;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen == verify) {
    const auto outcome = propint::cli::verify_corpus(corpus_dir, options, std::cerr);
    return emit(outcome.report, out_path, outcome.exit_code);
  }

  std::string text;
  propint::cli::Outcome outcome;
  if (!read_job(job_path, text)) {
    outcome = propint::cli::schema_failure("cannot read job file " + job_path);
  } else {
    const Json doc = Json::parse(text, nullptr, false);
    if (doc.is_object() && doc.contains("command") && doc["command"] != chosen->get_name())
      outcome = propint::cli::schema_failure("job command " + doc["command"].dump() + " does not match subcommand " +
                                             chosen->get_name());
    else
      outcome = propint::cli::run_job_text(text, options);
  }
  return emit(outcome.report, out_path, outcome.exit_code);
}
