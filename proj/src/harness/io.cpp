#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ivcalc/errors.hpp"
#include "ivcalc/gallery.hpp"
#include "ivcalc/harness.hpp"

namespace ivc::harness {

// ---------------------------------------------------------------------------
// Configuration.

void HarnessConfig::validate() const {
  auto fail = [](const std::string& what) { throw PreconditionFailed("config: " + what); };
  if (!(tau_cmp > 0) || !(tau_conv > 0) || !(tau_feas > 0) || !(tau_slack > 0)) {
    fail("tolerances must be positive");
  }
  if (!(lambda0 > 0)) fail("lambda0 must be positive");
  if (!(rho > 0 && rho < 1)) fail("rho must lie in (0, 1)");
  if (steps < 1 || seeds < 1 || directions < 1 || grid_points < 1) fail("counts must be >= 1");
}

ProbeConfig HarnessConfig::probe() const {
  ProbeConfig p;
  p.tau_cmp = tau_cmp;
  p.tau_conv = tau_conv;
  p.lambda0 = lambda0;
  p.rho = rho;
  p.steps = steps;
  p.seeds = seeds;
  p.directions = directions;
  p.seed = seed;
  p.cauchy_window = std::min(p.cauchy_window, steps);
  return p;
}

OptimalityConfig HarnessConfig::optimality() const {
  OptimalityConfig o;
  o.probe = probe();
  o.convexity.seed = seed;
  o.grid_points = grid_points;
  o.directions = directions;
  o.tau_feas = tau_feas;
  o.tau_slack = tau_slack;
  o.seed = seed;
  return o;
}

SVMConfig HarnessConfig::svm() const {
  SVMConfig s;
  s.tau_feas = tau_feas;
  s.tau_slack = tau_slack;
  return s;
}

json HarnessConfig::to_json() const {
  return json{{"tau_cmp", tau_cmp},     {"tau_conv", tau_conv},   {"tau_feas", tau_feas},
              {"tau_slack", tau_slack}, {"lambda0", lambda0},     {"rho", rho},
              {"steps", steps},         {"seeds", seeds},         {"directions", directions},
              {"grid_points", grid_points}, {"seed", seed},
              {"format", format == Format::Json ? "json" : "text"}};
}

namespace {

template <typename T>
T get_as(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ParseError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

HarnessConfig config_from_json(const json& j, HarnessConfig c) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "tau_cmp") c.tau_cmp = get_as<double>(v, key);
    else if (key == "tau_conv") c.tau_conv = get_as<double>(v, key);
    else if (key == "tau_feas") c.tau_feas = get_as<double>(v, key);
    else if (key == "tau_slack") c.tau_slack = get_as<double>(v, key);
    else if (key == "lambda0") c.lambda0 = get_as<double>(v, key);
    else if (key == "rho") c.rho = get_as<double>(v, key);
    else if (key == "steps") c.steps = get_as<int>(v, key);
    else if (key == "seeds") c.seeds = get_as<int>(v, key);
    else if (key == "directions") c.directions = get_as<int>(v, key);
    else if (key == "grid_points") c.grid_points = get_as<int>(v, key);
    else if (key == "seed") c.seed = get_as<std::uint64_t>(v, key);
    else if (key == "format") {
      const auto f = get_as<std::string>(v, key);
      if (f == "json") c.format = Format::Json;
      else if (f == "text") c.format = Format::Text;
      else throw ParseError("config key 'format' must be json or text");
    } else {
      throw ParseError("unknown config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace

HarnessConfig load_config(const std::string& path, HarnessConfig base) {
  return config_from_json(read_json_file(path), base);
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Reference:
      return "reference";
    case Provenance::Derived:
      return "derived";
    case Provenance::Trivial:
      return "trivial";
  }
  return "?";
}

json interval_json(const Interval& a) { return json::array({a.lo(), a.hi()}); }

// ---------------------------------------------------------------------------
// Problem files.

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

double number_at(const json& v, const std::string& where) {
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) bad(where, "expected a number");
  return v.get<double>();
}

struct Term {
  double coef;
  std::vector<int> powers;
};

RealFn polynomial(const json& p, std::size_t dim, const std::string& where) {
  std::vector<Term> terms;
  if (p.is_array()) {
    if (dim != 1) bad(where, "coefficient lists describe 1D polynomials only; use \"terms\"");
    for (std::size_t k = 0; k < p.size(); ++k) {
      terms.push_back({number_at(p[k], where + "/" + std::to_string(k)), {static_cast<int>(k)}});
    }
  } else if (p.is_object() && p.contains("terms") && p.size() == 1) {
    const json& ts = p["terms"];
    if (!ts.is_array()) bad(where + "/terms", "expected an array");
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const std::string at = where + "/terms/" + std::to_string(k);
      const json& t = ts[k];
      if (!t.is_object() || !t.contains("coef") || !t.contains("powers")) {
        bad(at, "a term needs \"coef\" and \"powers\"");
      }
      Term term{number_at(t["coef"], at + "/coef"), {}};
      const json& pw = t["powers"];
      if (!pw.is_array() || pw.size() != dim) bad(at + "/powers", "expected one power per variable");
      for (const json& e : pw) {
        if (!e.is_number_integer() || e.get<int>() < 0) bad(at + "/powers", "powers are nonnegative integers");
        term.powers.push_back(e.get<int>());
      }
      terms.push_back(std::move(term));
    }
  } else {
    bad(where, "expected a coefficient list or {\"terms\": [...]}");
  }
  for (const Term& t : terms) {
    if (!std::isfinite(t.coef)) bad(where, "coefficients must be finite");
  }
  return [terms](std::span<const double> x) {
    double s = 0.0;
    for (const Term& t : terms) {
      double m = t.coef;
      for (std::size_t i = 0; i < t.powers.size(); ++i) m *= std::pow(x[i], t.powers[i]);
      s += m;
    }
    return s;
  };
}

Ivf gallery_ivf(const std::string& id, std::size_t dim, const std::string& where) {
  auto need = [&](std::size_t n) {
    if (dim != n) bad(where, "gallery IVF '" + id + "' has dimension " + std::to_string(n));
  };
  if (id == "ne1") return need(1), gallery::ne1().objective;
  if (id == "remark_in") return need(1), gallery::remark_in().objective;
  if (id == "x2_3x2") return need(1), gallery::x2_3x2();
  if (id == "nee1") return need(1), gallery::nee1();
  if (id == "step") return need(1), gallery::step();
  if (id == "squared_norm") return gallery::squared_norm(dim, Interval(1, 2));
  if (id == "norm_counterexample") return gallery::norm_times(dim, Interval(1, 2));
  if (id == "remark_r2") return need(2), gallery::rational_r2(Interval(3, 9));
  throw UnknownCaseId("unknown gallery IVF '" + id + "'");
}

Ivf parse_ivf(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  if (j.contains("gallery")) {
    if (!j["gallery"].is_string()) bad(where + "/gallery", "expected a string");
    return gallery_ivf(j["gallery"].get<std::string>(), dim, where);
  }
  if (j.contains("lower") || j.contains("upper")) {
    if (!j.contains("lower") || !j.contains("upper")) bad(where, "need both \"lower\" and \"upper\"");
    return Ivf::from_endpoints(dim, polynomial(j["lower"], dim, where + "/lower"),
                               polynomial(j["upper"], dim, where + "/upper"));
  }
  if (j.contains("value")) {
    const RealFn g = polynomial(j["value"], dim, where + "/value");
    if (!j.contains("scale")) return Ivf::degenerate(dim, g);
    const json& s = j["scale"];
    if (!s.is_array() || s.size() != 2) bad(where + "/scale", "expected [lo, hi]");
    try {
      return Ivf::scaled(dim, g, Interval(number_at(s[0], where + "/scale/0"),
                                          number_at(s[1], where + "/scale/1")));
    } catch (const InvalidInterval& e) {
      bad(where + "/scale", e.what());
    }
  }
  bad(where, "expected \"gallery\", \"lower\"/\"upper\" or \"value\"");
}

Vec number_list(const json& j, std::size_t dim, const std::string& where, double null_value) {
  if (!j.is_array() || j.size() != dim) bad(where, "expected " + std::to_string(dim) + " numbers");
  Vec out;
  for (std::size_t i = 0; i < dim; ++i) {
    const double v = number_at(j[i], where + "/" + std::to_string(i));
    out.push_back(std::isnan(v) ? null_value : v);
  }
  return out;
}

FeasibleRegion parse_region(const json& j, std::size_t dim, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() != "whole_space") bad(where, "unknown region '" + j.get<std::string>() + "'");
    return FeasibleRegion::whole(dim);
  }
  if (!j.is_object() || j.size() != 1) bad(where, "expected \"whole_space\", {\"box\": ...} or {\"subspace\": ...}");
  if (j.contains("box")) {
    const json& b = j["box"];
    if (!b.is_object() || !b.contains("lo") || !b.contains("hi")) bad(where + "/box", "need \"lo\" and \"hi\"");
    const double inf = std::numeric_limits<double>::infinity();
    Box box{number_list(b["lo"], dim, where + "/box/lo", -inf),
            number_list(b["hi"], dim, where + "/box/hi", inf)};
    for (std::size_t i = 0; i < dim; ++i) {
      if (box.lo[i] > box.hi[i]) bad(where + "/box", "lo exceeds hi");
    }
    return FeasibleRegion::box(std::move(box));
  }
  if (j.contains("subspace")) {
    const json& s = j["subspace"];
    if (!s.is_array() || s.empty()) bad(where + "/subspace", "expected a list of basis vectors");
    std::vector<Vec> basis;
    for (std::size_t k = 0; k < s.size(); ++k) {
      basis.push_back(number_list(s[k], dim, where + "/subspace/" + std::to_string(k), NAN));
      for (double v : basis.back()) {
        if (!std::isfinite(v)) bad(where + "/subspace", "basis entries must be finite");
      }
    }
    return FeasibleRegion::subspace(dim, std::move(basis));
  }
  bad(where, "unknown region kind");
}

IOPInstance gallery_problem(const std::string& id) {
  if (id == "ne1") return gallery::ne1();
  if (id == "remark_in") return gallery::remark_in();
  if (id == "x2_3x2") return gallery::x2_3x2_problem();
  if (id == "linear_unconstrained") return gallery::linear_unconstrained();
  for (const auto& k : gallery::kkt_cases()) {
    if (k.iop.name == id) return k.iop;
  }
  throw UnknownCaseId("unknown gallery problem '" + id + "'");
}

}  // namespace

IOPInstance parse_problem(const json& j) {
  if (!j.is_object()) bad("/", "problem must be a JSON object");
  if (j.contains("gallery")) {
    if (j.size() != 1 || !j["gallery"].is_string()) bad("/gallery", "a gallery problem is {\"gallery\": id}");
    return gallery_problem(j["gallery"].get<std::string>());
  }
  for (const auto& [key, v] : j.items()) {
    if (key != "name" && key != "dim" && key != "objective" && key != "constraints" &&
        key != "region") {
      bad("/" + key, "unknown key");
    }
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<int>() < 1) {
    bad("/dim", "expected a positive integer");
  }
  const auto dim = static_cast<std::size_t>(j["dim"].get<int>());
  if (!j.contains("objective")) bad("/objective", "missing");
  IOPInstance p;
  p.name = j.value("name", std::string("problem"));
  p.objective = parse_ivf(j["objective"], dim, "/objective");
  if (j.contains("constraints")) {
    const json& cs = j["constraints"];
    if (!cs.is_array()) bad("/constraints", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      p.constraints.push_back(parse_ivf(cs[i], dim, "/constraints/" + std::to_string(i)));
    }
  }
  p.region = j.contains("region") ? parse_region(j["region"], dim, "/region")
                                  : FeasibleRegion::whole(dim);
  p.validate();
  return p;
}

IOPInstance load_problem(const std::string& path) {
  const json j = read_json_file(path);
  try {
    return parse_problem(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + e.what());
  }
}

Vec parse_point(const std::string& text) {
  Vec out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(field, &used));
      while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) ++used;
      if (used != field.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("point: cannot parse '" + field + "'");
    }
  }
  if (out.empty()) throw ParseError("point: no coordinates");
  return out;
}

// ---------------------------------------------------------------------------
// Problem reports.

namespace {

std::string error_name(const std::exception& e) {
  if (dynamic_cast<const PreconditionFailed*>(&e)) return "PreconditionFailed";
  if (dynamic_cast<const LinearIndependenceViolated*>(&e)) return "LinearIndependenceViolated";
  if (dynamic_cast<const SlacknessViolated*>(&e)) return "SlacknessViolated";
  if (dynamic_cast<const InfeasiblePoint*>(&e)) return "InfeasiblePoint";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const DimensionError*>(&e)) return "DimensionError";
  if (dynamic_cast<const InvalidIvf*>(&e)) return "InvalidIvf";
  if (dynamic_cast<const NotSeparable*>(&e)) return "NotSeparable";
  if (dynamic_cast<const ScaleExceeded*>(&e)) return "ScaleExceeded";
  if (dynamic_cast<const EmptyBiasSet*>(&e)) return "EmptyBiasSet";
  return "Error";
}

template <typename Fn>
json guarded(Fn fn) {
  try {
    return fn();
  } catch (const InfeasiblePoint&) {
    throw;
  } catch (const Error& e) {
    return json{{"error", error_name(e)}, {"message", e.what()}};
  }
}

json vec_json(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

json condition_json(const ConditionResult& r) {
  json j{{"status", to_string(r.status)}, {"samples", r.samples}};
  if (r.counterexample) {
    j["counterexample"] = {{"direction", vec_json(r.counterexample->direction)},
                           {"value", interval_json(r.counterexample->value)}};
  }
  if (r.unconditional) j["unconditional"] = to_string(*r.unconditional);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json efficiency_json(const EfficiencyCertificate& c) {
  json j{{"verdict", to_string(c.verdict)},
         {"value", interval_json(c.value)},
         {"grid_per_axis", c.grid_per_axis},
         {"grid_checked", c.grid_checked},
         {"random_checked", c.random_checked}};
  if (c.witness) {
    j["witness"] = vec_json(*c.witness);
    j["witness_value"] = interval_json(*c.witness_value);
  }
  j["note"] = c.note;
  return j;
}

json kkt_json(const KKTCertificate& c) {
  json j{{"found", c.found},
         {"u0", c.u0},
         {"u", vec_json(c.u)},
         {"active", c.active},
         {"max_residual", c.max_residual},
         {"slackness", vec_json(c.slackness)},
         {"directions", c.stationarity.size()}};
  if (!c.found) j["verdict"] = "NoCertificate";
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

}  // namespace

json check_problem(const IOPInstance& iop, std::span<const double> x, const HarnessConfig& cfg) {
  const OptimalityConfig oc = cfg.optimality();
  json r{{"schema_version", kSchemaVersion},
         {"problem", iop.name},
         {"point", vec_json(x)}};
  r["efficiency"] = efficiency_json(is_efficient(iop, x, oc));
  r["sufficient"] = guarded([&] { return condition_json(sufficient_condition(iop, x, oc)); });
  r["necessary"] = guarded([&] {
    const NecessaryConditions n = necessary_conditions(iop, x, oc);
    return json{{"not_strict_descent", condition_json(n.not_strict_descent)},
                {"no_better_strict_descent", condition_json(n.no_better_strict_descent)},
                {"zero_containment", condition_json(n.zero_containment)}};
  });
  r["fritz_john"] = guarded([&] { return kkt_json(fritz_john_check(iop, x, oc)); });
  r["kkt_necessary"] = guarded([&] { return kkt_json(kkt_necessary_check(iop, x, oc)); });
  return r;
}

// ---------------------------------------------------------------------------
// SVM models.

json model_to_json(const SVMSolution& sol) {
  return json{{"schema_version", kSchemaVersion},
              {"w", vec_json(sol.w)},
              {"b", sol.b},
              {"u", vec_json(sol.u)},
              {"support_indices", sol.support_indices}};
}

SVMSolution model_from_json(const json& j) {
  SVMSolution s;
  try {
    s.w = j.at("w").get<Vec>();
    s.b = j.at("b").get<double>();
    s.u = j.value("u", Vec{});
    s.support_indices = j.value("support_indices", std::vector<std::size_t>{});
  } catch (const json::exception& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
  if (s.w.empty()) throw ParseError("model: empty weight vector");
  return s;
}

json train_report(const SVMSolution& sol, const SVMDataset& data) {
  const SVMKKTReport& k = sol.kkt_report;
  json containment = json::array();
  for (const Interval& c : k.containment) containment.push_back(interval_json(c));
  json r{{"schema_version", kSchemaVersion},
         {"model", model_to_json(sol)},
         {"margin", sol.margin()},
         {"kkt",
          {{"pass", k.pass},
           {"containment", containment},
           {"containment_residual", k.containment_residual},
           {"sum_uy", k.sum_uy},
           {"strict_slackness", k.strict_pass},
           {"relaxed_slackness", k.relaxed_pass},
           {"max_violation", k.max_violation}}}};
  r["bias_set"] = guarded([&] {
    const BiasSet b = bias_set(sol, data);
    json j = json::object();
    j["relaxed"] = b.relaxed ? interval_json(*b.relaxed) : json(nullptr);
    j["strict"] = b.strict ? interval_json(*b.strict) : json(nullptr);
    return j;
  });
  return r;
}

json classify_report(const SVMSolution& sol, const IntervalTable& table) {
  json rows = json::array();
  std::size_t agree = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const Classification c = classify(sol, table.rows[i]);
    json row{{"index", i},
             {"label", to_string(c.label)},
             {"score", interval_json(c.score)},
             {"midpoint_sign", c.midpoint_sign}};
    if (!table.labels.empty()) {
      row["expected"] = table.labels[i];
      const bool ok = (c.label == SVMLabel::Positive && table.labels[i] == 1) ||
                      (c.label == SVMLabel::Negative && table.labels[i] == -1);
      agree += ok;
    }
    rows.push_back(std::move(row));
  }
  json r{{"schema_version", kSchemaVersion}, {"rows", rows}};
  if (!table.labels.empty()) r["agree"] = agree;
  return r;
}

// ---------------------------------------------------------------------------
// Text rendering.

namespace {

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array()) &&
             !(j.size() == 2 && j[0].is_number())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << " = " << j.dump() << '\n';
  }
}

}  // namespace

std::string render_text(const json& j) {
  std::ostringstream out;
  flatten(j, "", out);
  return out.str();
}

}  // namespace ivc::harness
