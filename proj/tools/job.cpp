#include "job.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <optional>

#include "propint/errors.hpp"
#include "propint/intersect.hpp"
#include "propint/maps.hpp"
#include "propint/projective.hpp"
#include "propint/residue.hpp"

namespace propint::cli {

namespace {

// Typed access to job fields; every failure names the JSON path.
class Node {
 public:
  Node(const Json& value, std::string path) : value_(&value), path_(std::move(path)) {}

  const Json& json() const { return *value_; }
  const std::string& path() const { return path_; }

  bool has(const char* key) const { return value_->is_object() && value_->contains(key); }
  Node at(const char* key) const {
    require_object();
    if (!value_->contains(key)) throw SchemaError(path_ + "." + key + ": required field is missing");
    return Node((*value_)[key], path_ + "." + key);
  }
  std::optional<Node> find(const char* key) const {
    require_object();
    if (!value_->contains(key) || (*value_)[key].is_null()) return std::nullopt;
    return Node((*value_)[key], path_ + "." + key);
  }
  std::vector<Node> items() const {
    if (!value_->is_array()) throw SchemaError(path_ + ": expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < value_->size(); ++i) out.emplace_back((*value_)[i], path_ + "[" + std::to_string(i) + "]");
    return out;
  }
  std::string str() const {
    if (!value_->is_string()) throw SchemaError(path_ + ": expected a string");
    return value_->get<std::string>();
  }
  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (const auto& n : items()) out.push_back(n.str());
    return out;
  }
  std::int64_t integer() const {
    if (!value_->is_number_integer()) throw SchemaError(path_ + ": expected an integer");
    return value_->get<std::int64_t>();
  }
  unsigned positive() const {
    const std::int64_t v = integer();
    if (v <= 0 || v > 1'000'000) throw SchemaError(path_ + ": expected a positive integer");
    return static_cast<unsigned>(v);
  }
  bool boolean() const {
    if (!value_->is_boolean()) throw SchemaError(path_ + ": expected a boolean");
    return value_->get<bool>();
  }
  double number() const {
    if (!value_->is_number()) throw SchemaError(path_ + ": expected a number");
    return value_->get<double>();
  }
  Rational rational() const {
    if (value_->is_number_integer()) return Rational(value_->get<long>());
    try {
      return parse_rational(str());
    } catch (const ParseError& e) {
      throw SchemaError(path_ + ": " + e.what());
    }
  }
  void require_object() const {
    if (!value_->is_object()) throw SchemaError(path_ + ": expected an object");
  }
  void allow_only(std::initializer_list<const char*> keys) const {
    require_object();
    for (const auto& [k, v] : value_->items()) {
      bool known = false;
      for (const char* key : keys) known = known || k == key;
      if (!known) throw SchemaError(path_ + "." + k + ": unknown field");
    }
  }

 private:
  const Json* value_;
  std::string path_;
};

struct Job {
  PolyRing ring;
  VarietyPresentation variety;
  Node args;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> assertions;
  unsigned threads = 1;
};

std::vector<Polynomial> parse_polys(const Node& n, const PolyRing& ring) {
  std::vector<Polynomial> out;
  for (const auto& s : n.strings()) out.push_back(parse_polynomial(s, ring));
  return out;
}

Json strings_json(const std::vector<std::string>& xs) {
  Json out = Json::array();
  for (const auto& s : xs) out.push_back(s);
  return out;
}

Json poly_list(const std::vector<Polynomial>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

PolyRing ring_from_vars(const Node& n) {
  auto vars = n.strings();
  if (vars.empty()) throw SchemaError(n.path() + ": at least one variable is required");
  try {
    return PolyRing(std::move(vars));
  } catch (const Error& e) {
    throw SchemaError(n.path() + ": " + e.what());
  }
}

PolyRing parse_ring(const Node& n) {
  n.allow_only({"vars"});
  return ring_from_vars(n.at("vars"));
}

// {"generators": [...], "assert": {...}} in `ring`.
VarietyPresentation parse_variety(const Node& n, const PolyRing& ring, Context& ctx,
                                  std::vector<std::string>& assertions, const std::string& label) {
  n.allow_only({"generators", "assert"});
  std::vector<Polynomial> gens;
  if (auto g = n.find("generators")) gens = parse_polys(*g, ring);
  VarietyPresentation y = gens.empty() ? VarietyPresentation::affine_space(ring)
                                       : VarietyPresentation::make(Ideal(ring, std::move(gens)), ctx);
  if (auto a = n.find("assert")) {
    a->allow_only({"radical", "pure_dim", "smooth"});
    if (auto r = a->find("radical")) y.asserted_radical = r->boolean();
    if (auto d = a->find("pure_dim")) {
      if (d->integer() != y.dim)
        throw MathError(label + " asserted pure of dimension " + std::to_string(d->integer()) + " but has dimension " +
                        std::to_string(y.dim));
    }
    if (auto s = a->find("smooth")) y.asserted_smooth = s->boolean();
  }
  if (y.defining.is_zero()) {
    y.asserted_smooth = true;
    assertions.push_back(label + " is affine space");
    return y;
  }
  if (!y.asserted_radical) throw MathError(label + " must be asserted radical");
  assertions.push_back(label + " radical (asserted)");
  assertions.push_back(label + " pure of dimension " + std::to_string(y.dim) + " (asserted)");
  if (y.asserted_smooth) assertions.push_back(label + " smooth (asserted)");
  return y;
}

PrimeComponent parse_prime(const Node& n, const PolyRing& ring, Context& ctx) {
  n.allow_only({"generators", "point"});
  PrimeComponent c(Ideal(ring, parse_polys(n.at("generators"), ring)), ctx);
  if (auto p = n.find("point")) {
    PointSpec pt;
    for (const auto& x : p->items()) pt.push_back(x.rational());
    c.point = pt;
  }
  return c;
}

Cycle parse_cycle(const Node& n, const VarietyPresentation& y, Context& ctx) {
  Cycle out(y);
  for (const auto& term : n.items()) {
    term.allow_only({"coeff", "prime"});
    out.add(term.at("coeff").rational(), parse_prime(term.at("prime"), y.ring(), ctx));
  }
  return out;
}

RECyclePresentation parse_re(const Node& n, const VarietyPresentation& y) {
  RECyclePresentation out;
  out.variety = y;
  for (const auto& s : n.items()) {
    s.allow_only({"weight", "tuple"});
    const Rational w = s.has("weight") ? s.at("weight").rational() : Rational(1);
    out.summands.push_back({w, TupleSection::of(y, parse_polys(s.at("tuple"), y.ring()))});
  }
  if (out.summands.empty()) throw SchemaError(n.path() + ": an RE presentation needs at least one summand");
  return out;
}

PointSpec parse_point(const Node& n) {
  PointSpec p;
  for (const auto& x : n.items()) p.push_back(x.rational());
  return p;
}

MonomialOrder parse_order(const std::string& name, std::size_t arity, const std::string& path) {
  if (name == "grevlex") return MonomialOrder::grevlex();
  if (name == "lex") return MonomialOrder::lex();
  if (name.rfind("elim:", 0) == 0) {
    std::size_t k = 0;
    try {
      k = std::stoul(name.substr(5));
    } catch (const std::exception&) {
      throw SchemaError(path + ": malformed elimination order " + name);
    }
    if (k == 0 || k > arity) throw SchemaError(path + ": elimination block out of range");
    return MonomialOrder::block_elimination(k);
  }
  throw SchemaError(path + ": unknown order " + name + " (grevlex, lex, elim:k)");
}

Json product_json(const ProductReport& r) {
  Json out;
  out["route"] = route_name(r.route);
  out["cycle"] = cycle_to_json(r.cycle);
  return out;
}

// Target variety and map of pushforward / local-model jobs.
FiniteMapPresentation parse_map(Job& job, Context& ctx) {
  const Node target = job.args.at("target");
  target.allow_only({"vars", "generators", "assert"});
  const PolyRing tring = ring_from_vars(target.at("vars"));
  FiniteMapPresentation m;
  m.source = job.variety;
  m.component_fns = parse_polys(job.args.at("map"), job.ring);
  if (job.args.has("assert_finite")) m.asserted_finite = job.args.at("assert_finite").boolean();
  if (!m.asserted_finite) throw MathError("the map must be asserted finite");
  job.assertions.push_back("map finite (asserted)");
  if (target.has("generators")) {
    Json tv = Json::object();
    tv["generators"] = target.at("generators").json();
    if (target.has("assert")) tv["assert"] = target.at("assert").json();
    m.target = parse_variety(Node(tv, target.path()), tring, ctx, job.assertions, "target");
  } else {
    // Target = closure of the image of an irreducible source.
    m.target = VarietyPresentation::affine_space(tring);
    job.assertions.push_back("source irreducible (asserted)");
    const Ideal image = image_ideal(m, PrimeComponent(job.variety.defining, ctx), ctx);
    m.target = VarietyPresentation::make(image, ctx);
    ctx.certify("target = closure of the image, " + std::to_string(image.generators().size()) + " generators, dim " +
                std::to_string(m.target.dim));
  }
  m.validate(ctx);
  return m;
}

using Handler = std::function<Json(Job&, Context&)>;

Json cmd_gb(Job& job, Context& ctx) {
  job.args.allow_only({"ideal", "order"});
  const Ideal ideal = job.args.has("ideal") ? Ideal(job.ring, parse_polys(job.args.at("ideal"), job.ring))
                                            : job.variety.defining;
  const MonomialOrder order = job.args.has("order")
                                  ? parse_order(job.args.at("order").str(), job.ring.arity(), job.args.path() + ".order")
                                  : MonomialOrder::grevlex();
  const GroebnerBasis gb = groebner(ideal, order, ctx);
  Json out;
  out["order"] = order.name();
  out["basis"] = poly_list(gb.basis());
  return out;
}

Json cmd_dim(Job& job, Context& ctx) {
  job.args.allow_only({"ideal"});
  Json out;
  if (!job.args.has("ideal")) {
    out["dim"] = job.variety.dim;
    return out;
  }
  const Ideal j(job.ring, parse_polys(job.args.at("ideal"), job.ring));
  const auto codim = codim_in(job.variety, j, ctx);
  out["dim"] = codim ? job.variety.dim - *codim : kEmptyDimension;
  out["codim"] = codim ? Json(*codim) : Json(nullptr);
  return out;
}

Json cmd_fundcycle(Job& job, Context& ctx) {
  job.args.allow_only({"tuple", "candidates", "kappa", "point"});
  const TupleSection f = TupleSection::of(job.variety, parse_polys(job.args.at("tuple"), job.ring));
  Json out;
  if (job.args.has("point")) {
    const int kappa = job.args.has("kappa") ? static_cast<int>(job.args.at("kappa").positive()) : job.variety.dim;
    out["cycle"] = cycle_to_json(m_class(f, kappa, parse_point(job.args.at("point")), ctx));
    return out;
  }
  std::optional<std::vector<PrimeComponent>> candidates;
  if (auto c = job.args.find("candidates")) {
    candidates.emplace();
    for (const auto& p : c->items()) candidates->push_back(parse_prime(p, job.ring, ctx));
  }
  const auto r = fundamental_cycle(f, ctx, candidates);
  out["regular"] = r.regular;
  out["cycle"] = cycle_to_json(r.cycle);
  return out;
}

Json cmd_divisor(Job& job, Context& ctx) {
  job.args.allow_only({"f"});
  const TupleSection f = TupleSection::of(job.variety, {parse_polynomial(job.args.at("f").str(), job.ring)});
  Json out;
  out["cycle"] = cycle_to_json(divisor(f, ctx).cycle);
  return out;
}

Json cmd_intersect(Job& job, Context& ctx) {
  job.args.allow_only({"route", "sections", "a", "b"});
  const std::string route = job.args.has("route") ? job.args.at("route").str()
                            : job.args.has("sections") ? "q-cartier"
                                                       : "re-sum";
  if (route == "q-cartier") {
    const auto sections = job.args.at("sections").items();
    if (sections.size() != 2) throw SchemaError(job.args.path() + ".sections: exactly two sections are required");
    std::vector<Polynomial> f;
    std::vector<unsigned> q;
    for (const auto& s : sections) {
      s.allow_only({"f", "q"});
      f.push_back(parse_polynomial(s.at("f").str(), job.ring));
      q.push_back(s.has("q") ? s.at("q").positive() : 1u);
    }
    return product_json(intersect_qcartier(job.variety, f[0], q[0], f[1], q[1], ctx));
  }
  const auto a = parse_re(job.args.at("a"), job.variety), b = parse_re(job.args.at("b"), job.variety);
  if (route == "re-sum") return product_json(intersect_re(a, b, ctx));
  if (route == "diagonal") return product_json(diagonal_crosscheck(job.variety, a, b, ctx));
  throw SchemaError(job.args.path() + ".route: unknown route " + route + " (re-sum, q-cartier, diagonal)");
}

Json cmd_intersect_reps(Job& job, Context& ctx) {
  job.args.allow_only({"ambient", "reps", "verify_smooth"});
  RepresentativeSet r;
  r.y = job.variety;
  r.ambient = job.args.has("ambient")
                  ? parse_variety(job.args.at("ambient"), job.ring, ctx, job.assertions, "ambient")
                  : VarietyPresentation::affine_space(job.ring);
  if (job.args.has("verify_smooth") && job.args.at("verify_smooth").boolean()) {
    if (!verify_smooth(r.ambient, ctx)) throw MathError("the ambient fails the Jacobian criterion");
    ctx.certify("ambient smooth by the Jacobian criterion");
  }
  for (const auto& rep : job.args.at("reps").items()) r.reps.push_back(parse_re(rep, r.ambient));
  return product_json(intersect_via_representatives(r, ctx));
}

Json cmd_ideal_cycle(Job& job, Context& ctx) {
  job.args.allow_only({"tuple", "cycle"});
  const TupleSection f = TupleSection::of(job.variety, parse_polys(job.args.at("tuple"), job.ring));
  return product_json(intersect_ideal_cycle(f, parse_cycle(job.args.at("cycle"), job.variety, ctx), ctx));
}

Json cmd_pushforward(Job& job, Context& ctx) {
  job.args.allow_only({"target", "map", "cycle", "assert_finite"});
  const FiniteMapPresentation m = parse_map(job, ctx);
  Json out;
  out["cycle"] = cycle_to_json(pushforward_cycle(m, parse_cycle(job.args.at("cycle"), job.variety, ctx), ctx));
  return out;
}

Json cmd_local_model(Job& job, Context& ctx) {
  job.args.allow_only({"target", "map", "f1", "f2", "assert_finite"});
  if (!job.variety.asserted_smooth) throw MathError("the source of a local model must be asserted smooth");
  const FiniteMapPresentation m = parse_map(job, ctx);
  const auto f1 = TupleSection::of(m.target, parse_polys(job.args.at("f1"), m.target.ring()));
  const auto f2 = TupleSection::of(m.target, parse_polys(job.args.at("f2"), m.target.ring()));
  Json out;
  out["target_generators"] = poly_list(m.target.defining.generators());
  out["cycle"] = cycle_to_json(local_model_product(m, f1, f2, ctx));
  return out;
}

Json cmd_degree(Job& job, Context& ctx) {
  job.args.allow_only({"cycle"});
  Json out;
  out["total_degree"] = to_string(total_degree(parse_cycle(job.args.at("cycle"), job.variety, ctx), ctx));
  return out;
}

Json cmd_bezout(Job& job, Context& ctx) {
  job.args.allow_only({"sections", "chart"});
  std::vector<BezoutSection> sections;
  for (const auto& s : job.args.at("sections").items()) {
    s.allow_only({"form", "degree", "q"});
    const Polynomial form = parse_polynomial(s.at("form").str(), job.ring);
    const unsigned degree = s.has("degree") ? s.at("degree").positive() : static_cast<unsigned>(form.total_degree());
    sections.push_back({degree, form, s.has("q") ? s.at("q").positive() : 1u});
  }
  std::optional<std::size_t> chart;
  if (auto c = job.args.find("chart")) {
    chart = job.ring.index_of(c->str());
    if (!chart) throw SchemaError(c->path() + ": unknown variable");
  }
  const BezoutReport r = bezout_on_Y(job.variety, sections, ctx, chart);
  if (!r.holds)
    throw MathError("degree identity fails: total " + to_string(r.total) + " != expected " + to_string(r.expected));
  Json out;
  out["chart"] = job.ring.name(r.chart);
  out["cycle"] = cycle_to_json(r.product);
  out["degree_y"] = r.degree_y.get_str();
  out["total"] = to_string(r.total);
  out["expected"] = to_string(r.expected);
  out["holds"] = r.holds;
  return out;
}

class OracleUnconverged : public MathError {
 public:
  OracleUnconverged(Json result) : MathError("oracle did not converge across the epsilon schedule"), result(std::move(result)) {}
  Json result;
};

Json cmd_oracle(Job& job, Context& ctx) {
  job.args.allow_only({"tuple", "kappa", "cutoff", "epsilons", "samples"});
  RegularizationJob r;
  r.tuple = parse_polys(job.args.at("tuple"), job.ring);
  r.kappa = job.args.has("kappa") ? static_cast<int>(job.args.at("kappa").positive())
                                  : static_cast<int>(job.ring.arity());
  if (auto c = job.args.find("cutoff")) {
    const std::string name = c->str();
    if (name == "quintic") r.cutoff = Cutoff::quintic;
    else if (name == "smooth") r.cutoff = Cutoff::smooth;
    else throw SchemaError(c->path() + ": unknown cutoff " + name + " (quintic, smooth)");
  }
  if (auto e = job.args.find("epsilons")) {
    r.epsilons.clear();
    for (const auto& x : e->items()) r.epsilons.push_back(x.number());
  }
  if (auto s = job.args.find("samples")) r.samples = s->positive();
  r.seed = *job.seed;
  r.threads = job.threads;
  if (r.kappa != 1 && r.kappa != 2) throw SchemaError(job.args.path() + ".kappa: must be 1 or 2");
  const MassEstimate est = r.kappa == 1 ? lelong_mass_1d(r, ctx) : lelong_mass_2d(r, ctx);
  Json out;
  out["kappa"] = r.kappa;
  out["cutoff"] = r.cutoff == Cutoff::quintic ? "quintic" : "smooth";
  Json per = Json::array();
  for (const auto& [eps, mass] : est.per_epsilon) per.push_back(Json{{"epsilon", eps}, {"mass", mass}});
  out["per_epsilon"] = per;
  out["extrapolated"] = est.extrapolated;
  out["error_bar"] = est.error_bar;
  out["fitted_order"] = est.fitted_order ? Json(*est.fitted_order) : Json(nullptr);
  out["converged"] = est.converged;
  out["notes"] = strings_json(est.notes);
  if (!est.converged) throw OracleUnconverged(out);
  return out;
}

struct CommandSpec {
  Handler run;
  bool randomized;
};

const std::map<std::string, CommandSpec>& commands() {
  static const std::map<std::string, CommandSpec> table{
      {"gb", {cmd_gb, false}},
      {"dim", {cmd_dim, false}},
      {"fundcycle", {cmd_fundcycle, true}},
      {"divisor", {cmd_divisor, true}},
      {"intersect", {cmd_intersect, true}},
      {"intersect-reps", {cmd_intersect_reps, true}},
      {"ideal-cycle", {cmd_ideal_cycle, true}},
      {"pushforward", {cmd_pushforward, true}},
      {"local-model", {cmd_local_model, true}},
      {"degree", {cmd_degree, false}},
      {"bezout", {cmd_bezout, true}},
      {"oracle", {cmd_oracle, true}},
  };
  return table;
}

Json error_report(const std::string& kind, const std::string& message) {
  Json r;
  r["status"] = "error";
  r["error"] = Json{{"kind", kind}, {"message", message}};
  r["result"] = nullptr;
  r["certificates"] = Json::array();
  r["assertions_used"] = Json::array();
  r["caveats"] = Json::array();
  r["timing_ms"] = 0;
  return r;
}

}  // namespace

Json cycle_to_json(const Cycle& cycle) {
  Json out = Json::array();
  for (const auto& t : cycle.terms()) {
    Json term;
    term["coeff"] = to_string(t.coeff);
    term["prime"] = Json{{"generators", strings_json(t.component.key())}};
    out.push_back(term);
  }
  return out;
}

std::string canonical_dump(const Json& report) {
  Json copy = report;
  if (copy.is_object()) copy.erase("timing_ms");
  return copy.dump();
}

Outcome run_job(const Json& doc, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::optional<Context> ctx;
  std::vector<std::string> assertions;
  Outcome out;
  auto finish = [&](Json report) {
    if (ctx) {
      report["certificates"] = strings_json(ctx->certificates());
      report["assertions_used"] = strings_json(assertions);
      report["caveats"] = strings_json(ctx->caveats());
    }
    report["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    out.report = std::move(report);
  };
  auto fail = [&](int code, const std::string& kind, const std::string& message, Json result = nullptr) {
    Json r = error_report(kind, message);
    r["result"] = std::move(result);
    out.exit_code = code;
    finish(std::move(r));
  };
  try {
    const Node root(doc, "$");
    root.allow_only({"ring", "variety", "command", "args", "seed"});
    const std::string command = root.at("command").str();
    const auto it = commands().find(command);
    if (it == commands().end()) throw SchemaError("$.command: unknown command " + command);
    std::optional<std::uint64_t> seed;
    if (auto s = root.find("seed")) {
      if (!s->json().is_number_unsigned()) throw SchemaError("$.seed: expected an unsigned integer");
      seed = s->json().get<std::uint64_t>();
    } else if (it->second.randomized) {
      throw SchemaError("$.seed: command " + command + " is randomized and needs a seed");
    }
    ctx.emplace(seed.value_or(0), options.budget);
    if (seed) ctx->certify("job seed " + std::to_string(*seed));
    const PolyRing ring = parse_ring(root.at("ring"));
    static const Json empty_object = Json::object();
    Job job{ring, VarietyPresentation::affine_space(ring),
            root.has("args") ? root.at("args") : Node(empty_object, "$.args"), seed, {}, options.threads};
    job.args.require_object();
    if (auto v = root.find("variety")) job.variety = parse_variety(*v, ring, *ctx, job.assertions, "Y");
    else job.assertions.push_back("Y is affine space");
    assertions = job.assertions;
    Json result = it->second.run(job, *ctx);
    assertions = job.assertions;
    Json report;
    report["status"] = "ok";
    report["result"] = std::move(result);
    finish(std::move(report));
  } catch (const OracleUnconverged& e) {
    fail(kMathFailure, "MathError", e.what(), e.result);
  } catch (const SchemaError& e) {
    fail(kSchemaFailure, "SchemaError", e.what());
  } catch (const ParseError& e) {
    fail(kSchemaFailure, "ParseError", e.what());
  } catch (const ResourceLimit& e) {
    fail(kResourceLimit, "ResourceLimit", e.what());
  } catch (const MathError& e) {
    fail(kMathFailure, "MathError", e.what());
  } catch (const Json::exception& e) {
    fail(kSchemaFailure, "SchemaError", e.what());
  } catch (const std::exception& e) {
    fail(kInternalFailure, "InternalError", e.what());
  }
  return out;
}

Outcome schema_failure(const std::string& message) {
  Outcome out;
  out.exit_code = kSchemaFailure;
  out.report = error_report("SchemaError", message);
  return out;
}

Outcome run_job_text(const std::string& text, const RunOptions& options) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    return schema_failure(std::string("malformed JSON: ") + e.what());
  }
  return run_job(doc, options);
}

}  // namespace propint::cli
