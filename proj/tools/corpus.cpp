#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "job.hpp"
#include "propint/errors.hpp"

namespace propint::cli {

namespace {

struct Case {
  std::string id;
  std::string anchor;
  Json job;
  Json expected;
};

struct Verdict {
  bool pass = false;
  Json report;
  Json diff;
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw SchemaError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json parse_file(const std::filesystem::path& p) {
  try {
    return Json::parse(read_file(p));
  } catch (const Json::parse_error& e) {
    throw SchemaError("malformed JSON in " + p.string() + ": " + e.what());
  }
}

std::vector<Case> load_manifest(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw SchemaError("corpus path " + dir.string() + " is not a directory");
  const auto manifest = dir / "manifest.json";
  if (!std::filesystem::exists(manifest)) throw SchemaError("corpus path " + dir.string() + " has no manifest.json");
  const Json doc = parse_file(manifest);
  if (!doc.is_array()) throw SchemaError("manifest.json: expected a list of cases");
  if (doc.empty()) throw SchemaError("manifest.json: the corpus is empty");
  std::vector<Case> out;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("id") || !entry.contains("anchor") || !entry.contains("job") ||
        !entry.contains("expected") || !entry["id"].is_string() || !entry["anchor"].is_string())
      throw SchemaError("manifest.json: every case needs string id, string anchor, job and expected");
    Case c{entry["id"].get<std::string>(), entry["anchor"].get<std::string>(), entry["job"], entry["expected"]};
    if (c.job.is_string()) c.job = parse_file(dir / c.job.get<std::string>());
    if (!c.expected.is_object()) throw SchemaError("manifest.json: " + c.id + ": expected must be an object");
    out.push_back(std::move(c));
  }
  return out;
}

Verdict judge(const Case& c, const RunOptions& options) {
  Verdict v;
  const Outcome o = run_job(c.job, options);
  v.report = o.report;
  v.report.erase("timing_ms");
  const Json& e = c.expected;
  if (e.contains("oracle")) {
    const double mass = e["oracle"].value("mass", 0.0), tol = e["oracle"].value("tolerance", 0.0);
    const bool ok = o.report["status"] == "ok" && o.report["result"].contains("extrapolated");
    const double got = ok ? o.report["result"]["extrapolated"].get<double>() : NAN;
    v.pass = ok && std::abs(got - mass) <= tol;
    if (!v.pass)
      v.diff = Json{{"expected_mass", mass}, {"tolerance", tol}, {"status", o.report["status"]},
                    {"extrapolated", ok ? Json(got) : Json(nullptr)}};
    return v;
  }
  Json actual;
  actual["status"] = o.report["status"];
  if (o.report["status"] == "ok") actual["result"] = o.report["result"];
  else actual["kind"] = o.report["error"]["kind"];
  v.pass = actual.dump() == e.dump();
  if (!v.pass) v.diff = Json::diff(e, actual);
  return v;
}

}  // namespace

Outcome verify_corpus(const std::filesystem::path& dir, const RunOptions& options, std::ostream& table) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  std::vector<Case> cases;
  try {
    cases = load_manifest(dir);
  } catch (const SchemaError& e) {
    out.exit_code = kSchemaFailure;
    out.report = Json{{"status", "error"},
                      {"error", {{"kind", "SchemaError"}, {"message", e.what()}}},
                      {"result", nullptr},
                      {"certificates", Json::array()},
                      {"assertions_used", Json::array()},
                      {"caveats", Json::array()},
                      {"timing_ms", 0}};
    table << "verify-corpus: " << e.what() << "\n";
    return out;
  }

  // Cases run single-threaded each, spread over the workers; results are
  // stored by manifest position so the merge order is fixed.
  std::vector<Verdict> verdicts(cases.size());
  RunOptions per_case = options;
  per_case.threads = 1;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < cases.size();) verdicts[i] = judge(cases[i], per_case);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, options.threads); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::size_t width = 4;
  for (const auto& c : cases) width = std::max(width, c.id.size());
  Json list = Json::array();
  std::size_t passed = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Verdict& v = verdicts[i];
    passed += v.pass ? 1 : 0;
    table << (v.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << cases[i].id << "  "
          << cases[i].anchor << "\n";
    if (!v.pass) table << "      diff: " << v.diff.dump() << "\n";
    Json entry;
    entry["id"] = cases[i].id;
    entry["anchor"] = cases[i].anchor;
    entry["pass"] = v.pass;
    if (!v.pass) entry["diff"] = v.diff;
    entry["report"] = v.report;
    list.push_back(std::move(entry));
  }
  const std::size_t failed = cases.size() - passed;
  table << passed << "/" << cases.size() << " cases passed\n";

  Json result;
  result["passed"] = passed;
  result["failed"] = failed;
  result["cases"] = std::move(list);
  Json report;
  report["status"] = failed == 0 ? "ok" : "error";
  if (failed) report["error"] = Json{{"kind", "MathError"}, {"message", std::to_string(failed) + " corpus case(s) failed"}};
  report["result"] = std::move(result);
  report["certificates"] = Json::array({std::to_string(cases.size()) + " corpus cases"});
  report["assertions_used"] = Json::array();
  report["caveats"] = Json::array();
  report["timing_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  out.report = std::move(report);
  out.exit_code = failed == 0 ? kOk : kMathFailure;
  return out;
}

}  // namespace propint::cli
