#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include <unistd.h>

#include "job.hpp"

using propint::cli::Json;
using propint::cli::RunOptions;
using propint::cli::run_job_text;

namespace {

const std::filesystem::path kCorpus = PROPINT_CORPUS_DIR;

const char* const kConeJob = R"({
  "ring": {"vars": ["x", "y", "z"]},
  "variety": {"generators": ["x*y - z^2"], "assert": {"radical": true, "pure_dim": 2}},
  "command": "intersect",
  "args": {"sections": [{"f": "x", "q": 2}, {"f": "y", "q": 2}]},
  "seed": 73
})";

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("propint_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("the cone job reproduces L2 . L1 = (1/2)[p]") {
  const auto o = run_job_text(kConeJob, {});
  CHECK(o.exit_code == 0);
  CHECK(o.report["result"]["route"] == "q-cartier");
  CHECK(o.report["result"]["cycle"].dump() == R"([{"coeff":"1/2","prime":{"generators":["x","y","z"]}}])");
  CHECK(o.report["certificates"][0] == "job seed 73");
  std::vector<std::string> keys;
  for (const auto& [k, v] : o.report.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"status", "result", "certificates", "assertions_used", "caveats", "timing_ms"});
}

TEST_CASE("exit codes by error class") {
  auto code = [](const std::string& text) { return run_job_text(text, {}).exit_code; };
  CHECK(code("{\"ring\": ") == 4);
  CHECK(code("[1, 2]") == 4);
  CHECK(code(R"({"ring": {"vars": ["x"]}, "command": "divisor", "args": {"f": "x"}})") == 4);
  CHECK(code(R"({"ring": {"vars": ["x"]}, "command": "divisor", "args": {"f": "x", "g": 1}, "seed": 1})") == 4);
  CHECK(code(R"({"ring": {"vars": ["x"]}, "command": "divisor", "args": {"f": "q + 1"}, "seed": 1})") == 4);
  CHECK(code(R"({"ring": {"vars": ["x"]}, "command": "frobnicate", "seed": 1})") == 4);
  CHECK(code(R"({"ring": {"vars": ["t"]}, "command": "intersect",
                 "args": {"a": [{"tuple": ["t^2"]}], "b": [{"tuple": ["t^3"]}]}, "seed": 1})") == 2);
  CHECK(code(R"({"ring": {"vars": ["x", "y"]}, "variety": {"generators": ["x*y"], "assert": {"pure_dim": 0}},
                 "command": "dim"})") == 2);

  RunOptions tight;
  tight.budget = 3;
  const auto o = run_job_text(kConeJob, tight);
  CHECK(o.exit_code == 3);
  CHECK(o.report["error"]["kind"] == "ResourceLimit");
}

TEST_CASE("error reports keep the report shape") {
  const auto o = run_job_text("{\"ring\": ", {});
  CHECK(o.report["status"] == "error");
  CHECK(o.report["result"].is_null());
  CHECK(o.report["error"]["message"].get<std::string>().size() > 0);
  for (const char* key : {"certificates", "assertions_used", "caveats"}) CHECK(o.report[key].is_array());
}

TEST_CASE("determinism: identical seeds give identical canonical reports") {
  for (const auto& entry : std::filesystem::directory_iterator(kCorpus / "jobs")) {
    const std::string text = slurp(entry.path());
    if (Json::parse(text)["command"] == "oracle") continue;
    CAPTURE(entry.path().filename().string());
    RunOptions many;
    many.threads = 3;
    const auto a = run_job_text(text, {}), b = run_job_text(text, {}), c = run_job_text(text, many);
    CHECK(propint::cli::canonical_dump(a.report) == propint::cli::canonical_dump(b.report));
    CHECK(propint::cli::canonical_dump(a.report) == propint::cli::canonical_dump(c.report));
  }
}

TEST_CASE("verify-corpus: the shipped corpus passes") {
  std::ostringstream table;
  const auto o = propint::cli::verify_corpus(kCorpus, {}, table);
  INFO(table.str());
  CHECK(o.exit_code == 0);
  CHECK(o.report["result"]["failed"] == 0);
  CHECK(table.str().find("FAIL") == std::string::npos);
}

TEST_CASE("verify-corpus: a perturbed expectation fails with a cycle diff") {
  const auto dir = scratch_dir("perturbed");
  std::filesystem::copy(kCorpus, dir, std::filesystem::copy_options::recursive);
  Json manifest = Json::parse(slurp(dir / "manifest.json"));
  Json kept = Json::array();
  for (auto& c : manifest) {
    if (c["expected"].contains("oracle")) continue;
    if (c["id"] == "cone-div-x") c["expected"]["result"]["cycle"][0]["coeff"] = "3";
    kept.push_back(c);
  }
  std::ofstream(dir / "manifest.json") << kept.dump(2);

  std::ostringstream table;
  const auto o = propint::cli::verify_corpus(dir, {}, table);
  CHECK(o.exit_code == 2);
  CHECK(o.report["result"]["failed"] == 1);
  CHECK(table.str().find("FAIL  cone-div-x") != std::string::npos);
  for (const auto& c : o.report["result"]["cases"]) {
    if (c["id"] != "cone-div-x") continue;
    CHECK_FALSE(c["pass"].get<bool>());
    CHECK(c["diff"].dump() == R"([{"op":"replace","path":"/result/cycle/0/coeff","value":"2"}])");
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify-corpus: missing or empty corpus is a schema failure") {
  std::ostringstream table;
  CHECK(propint::cli::verify_corpus(kCorpus / "no-such-dir", {}, table).exit_code == 4);
  const auto dir = scratch_dir("empty");
  CHECK(propint::cli::verify_corpus(dir, {}, table).exit_code == 4);
  std::ofstream(dir / "manifest.json") << "[]";
  CHECK(propint::cli::verify_corpus(dir, {}, table).exit_code == 4);
  std::filesystem::remove_all(dir);
}
