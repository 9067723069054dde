#include <algorithm>
#include <cmath>
#include <sstream>

#include "ivcalc/errors.hpp"
#include "ivcalc/gallery.hpp"
#include "ivcalc/harness.hpp"

namespace ivc::harness {

namespace {

json vec_json(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

CaseResult start(const GalleryCase& c) {
  CaseResult r;
  r.id = c.id;
  r.provenance = c.provenance;
  r.title = c.title;
  return r;
}

double max_iterate_norm(const DerivativeEstimate& e, const std::string& label) {
  double m = 0.0;
  for (const ScheduleTrace& t : e.schedules) {
    if (t.label != label) continue;
    for (const ScheduleStep& s : t.steps) m = std::max(m, norm(s.iterate));
  }
  return m;
}

CaseResult case_ee1(const GalleryCase& gc, const HarnessConfig& cfg) {
  CaseResult r = start(gc);
  const Interval c(1, 2);
  const Vec x{0.7, -1.3}, v{0.4, 0.9};
  const DerivativeEstimate e = hadamard_derivative(gallery::squared_norm(2, c), x, v, cfg.probe());
  const Interval expected = scalar_mul(2.0 * dot(x, v), c);
  const double err = gh_distance(e.value, expected);
  r.expected = {{"value", interval_json(expected)}, {"linear", "Yes"}, {"tolerance", 1e-6}};
  r.measured = {{"value", interval_json(e.value)},
                {"exists", to_string(e.exists)},
                {"linear", to_string(e.linear)},
                {"error", err}};
  r.pass = e.exists == Existence::Exists && e.linear == Tri::Yes && err <= 1e-6;
  return r;
}

CaseResult case_r2(const GalleryCase& gc, const HarnessConfig& cfg) {
  CaseResult r = start(gc);
  ProbeConfig p = cfg.probe();
  p.adversarial = gallery::r2_schedules();
  const Ivf f = gallery::rational_r2(Interval(3, 9));
  const Vec origin{0.0, 0.0};
  double worst_dir = 0.0, worst_gateaux = 0.0;
  bool all_exist = true;
  for (const Vec& h : {Vec{1, 0}, Vec{0, 1}, Vec{0.6, 0.8}, Vec{-1, 2}}) {
    ProbeConfig plain = cfg.probe();
    const DerivativeEstimate d = directional_derivative(f, origin, h, plain);
    const DerivativeEstimate g = gateaux_derivative(f, origin, h, plain);
    worst_dir = std::max(worst_dir, norm(d.value));
    worst_gateaux = std::max(worst_gateaux, norm(g.value));
    all_exist = all_exist && d.exists == Existence::Exists && g.exists == Existence::Exists;
  }
  const DerivativeEstimate lit = hadamard_derivative(f, origin, origin, p);
  const double blowup = max_iterate_norm(lit, "h_n=(1/n,1/n^3)");
  r.expected = {{"directional", interval_json(Interval())},
                {"gateaux", interval_json(Interval())},
                {"hadamard_along_h_n", "DoesNotExist"},
                {"iterate_norm_exceeds", p.norm_cap}};
  r.measured = {{"directional_max_norm", worst_dir},
                {"gateaux_max_norm", worst_gateaux},
                {"hadamard_along_h_n", to_string(lit.exists)},
                {"max_iterate_norm", blowup}};
  r.pass = all_exist && worst_dir <= 1e-6 && worst_gateaux <= 1e-6 &&
           lit.exists == Existence::DoesNotExist && blowup > p.norm_cap;
  return r;
}

CaseResult case_norm(const GalleryCase& gc, const HarnessConfig& cfg) {
  CaseResult r = start(gc);
  const Ivf f = gallery::norm_times(2, Interval(1, 2));
  const Vec origin{0.0, 0.0};
  const ProbeConfig p = cfg.probe();
  const ContinuityResult cont = is_gh_continuous_at(f, origin, p);
  const DerivativeEstimate h = hadamard_derivative(f, origin, Vec{1.0, 0.0}, p);
  const FrechetResult fr = frechet_differentiable(f, origin, p);
  r.expected = {{"continuity", "Continuous"}, {"hadamard", false}, {"frechet", false}};
  r.measured = {{"continuity", to_string(cont.verdict)},
                {"hadamard", is_hadamard_differentiable(h)},
                {"linear", to_string(h.linear)},
                {"frechet", fr.differentiable}};
  r.pass = cont.verdict == Continuity::Continuous && !is_hadamard_differentiable(h) &&
           !fr.differentiable;
  return r;
}

CaseResult case_nee1(const GalleryCase& gc, const HarnessConfig& cfg) {
  CaseResult r = start(gc);
  const Ivf f = gallery::nee1();
  const Vec origin{0.0};
  const ProbeConfig p = cfg.probe();
  int violations = 0, samples = 0;
  double worst_derivative = 0.0;
  for (int k = -10; k <= 10; ++k) {
    const Vec v{0.5 * k};
    const DerivativeEstimate e = hadamard_derivative(f, origin, v, p);
    worst_derivative = std::max(worst_derivative, norm(e.value));
    const Interval diff = gh_difference(f(v), f(origin));
    ++samples;
    if (strictly_dominates(diff, e.value, cfg.tau_cmp)) ++violations;
  }
  const ConvexityResult conv = is_convex_on(f, Box::cube(1, -5, 5), cfg.optimality().convexity);
  r.expected = {{"derivative", interval_json(Interval())},
                {"inequality_violations", 0},
                {"convexity", "NotConvex"}};
  r.measured = {{"derivative_max_norm", worst_derivative},
                {"inequality_violations", violations},
                {"samples", samples},
                {"convexity", to_string(conv.verdict)}};
  r.note = "inequality read as F(v) ⊖gH F(x) ⊀ F_H(x)(v − x)";
  r.pass = worst_derivative <= 1e-6 && violations == 0 && conv.verdict == Convexity::NotConvex;
  return r;
}

CaseResult case_monotonicity(const GalleryCase& gc, const HarnessConfig& cfg) {
  CaseResult r = start(gc);
  const Interval c(1, 3);
  // F_H(x)(d) = 2x d ⊙ [1, 3].
  const Interval closed = moore_sub(scalar_mul(2.0 * 1.0 * 1.0, c), scalar_mul(2.0 * 2.0 * 1.0, c));
  const Ivf f = gallery::x2_3x2();
  const ProbeConfig p = cfg.probe();
  const Vec d{1.0};
  const Interval at1 = hadamard_derivative(f, Vec{1.0}, d, p).value;
  const Interval at2 = hadamard_derivative(f, Vec{2.0}, d, p).value;
  const Interval estimated = moore_sub(at1, at2);
  const Interval expected(-10, 2);
  r.expected = {{"value", interval_json(expected)}, {"dominates_zero", false}};
  r.measured = {{"closed_form", interval_json(closed)},
                {"estimated", interval_json(estimated)},
                {"estimate_error", gh_distance(estimated, expected)},
                {"dominates_zero", dominates(closed, Interval(), cfg.tau_cmp)}};
  r.pass = closed == expected && gh_distance(estimated, expected) <= 1e-6 &&
           !dominates(closed, Interval(), cfg.tau_cmp);
  return r;
}

CaseResult case_ex31(const GalleryCase& gc, const HarnessConfig& cfg) {
  CaseResult r = start(gc);
  ProbeConfig p = cfg.probe();
  p.adversarial = gallery::r2_schedules();
  const ChainRuleResult c =
      chain_rule(gallery::ex31_outer(), gallery::ex31_inner(), 1, Vec{0.0}, Vec{1.0}, p);
  double blowup = 0.0;
  for (const ScheduleStep& s : c.direct.diagnostics) blowup = std::max(blowup, norm(s.iterate));
  r.expected = {{"status", "PreconditionFailed"}, {"direct", "DoesNotExist"}};
  r.measured = {{"status", to_string(c.status)},
                {"direct", to_string(c.direct.exists)},
                {"direct_max_iterate_norm", blowup},
                {"inner_derivative", vec_json(c.z)}};
  r.note = c.note;
  r.pass = c.status == ChainStatus::PreconditionFailed &&
           c.direct.exists == Existence::DoesNotExist;
  return r;
}

CaseResult case_max_family(const GalleryCase& gc, const HarnessConfig& cfg) {
  CaseResult r = start(gc);
  const auto fs = gallery::max_family();
  const Interval c(1, 2);
  json rows = json::array();
  bool pass = true;
  for (double h : {1.0, -1.0, 0.5, -2.0}) {
    const MaxFamilyResult m = max_family_derivative(fs, Vec{1.0}, Vec{h}, cfg.probe());
    // Member derivatives at 1 are 2h, 4h and h (each ⊙ C); the largest wins.
    const Interval expected = scalar_mul(h > 0 ? 4 * h : h, c);
    const double err = std::max(gh_distance(m.value, expected), gh_distance(m.direct.value, expected));
    rows.push_back({{"h", h},
                    {"expected", interval_json(expected)},
                    {"max_rule", interval_json(m.value)},
                    {"direct", interval_json(m.direct.value)},
                    {"active", m.active_set},
                    {"error", err}});
    pass = pass && m.agree && err <= 1e-6 && m.active_set.size() == 3;
  }
  r.expected = {{"agree", true}, {"tolerance", 1e-6}};
  r.measured = {{"directions", rows}};
  r.pass = pass;
  return r;
}

CaseResult case_ne1(const GalleryCase& gc, const HarnessConfig& cfg) {
  CaseResult r = start(gc);
  const IOPInstance iop = gallery::ne1();
  const OptimalityConfig oc = cfg.optimality();
  const Vec x{0.0};
  const EfficiencyCertificate e = is_efficient(iop, x, oc);
  const ConditionResult s = sufficient_condition(iop, x, oc);
  const NecessaryConditions n = necessary_conditions(iop, x, oc);
  const Interval d1 = hadamard_derivative(iop.objective, x, Vec{1.0}, oc.probe).value;
  const bool cone_pos = descent_cone_member(iop.objective, x, Vec{1.0}, oc);
  const bool cone_neg = descent_cone_member(iop.objective, x, Vec{-1.0}, oc);
  r.expected = {{"efficiency", "Efficient"},
                {"sufficient", "Fail"},
                {"no_better_strict_descent", "Pass"},
                {"derivative_at_1", interval_json(Interval(-4, 0))},
                {"descent_cone", {{"d=1", true}, {"d=-1", false}}}};
  r.measured = {{"efficiency", to_string(e.verdict)},
                {"grid_per_axis", e.grid_per_axis},
                {"sufficient", to_string(s.status)},
                {"no_better_strict_descent", to_string(n.no_better_strict_descent.status)},
                {"derivative_at_1", interval_json(d1)},
                {"descent_cone", {{"d=1", cone_pos}, {"d=-1", cone_neg}}}};
  r.pass = e.verdict == Efficiency::Efficient && s.status == CheckStatus::Fail &&
           n.no_better_strict_descent.status == CheckStatus::Pass &&
           gh_distance(d1, Interval(-4, 0)) <= 1e-6 && cone_pos && !cone_neg;
  return r;
}

CaseResult case_in(const GalleryCase& gc, const HarnessConfig& cfg) {
  CaseResult r = start(gc);
  const IOPInstance iop = gallery::remark_in();
  const OptimalityConfig oc = cfg.optimality();
  const Vec x{0.0};
  const EfficiencyCertificate e = is_efficient(iop, x, oc);
  std::string sufficient_default;
  try {
    sufficient_default = std::string(to_string(sufficient_condition(iop, x, oc).status));
  } catch (const PreconditionFailed&) {
    sufficient_default = "PreconditionFailed";
  }
  OptimalityConfig assumed = oc;
  assumed.assume_convex = true;
  const ConditionResult s = sufficient_condition(iop, x, assumed);
  const Interval d1 = hadamard_derivative(iop.objective, x, Vec{1.0}, oc.probe).value;
  const NecessaryConditions n = necessary_conditions(iop, x, oc);
  const EfficiencyCertificate e5 = is_efficient(iop, Vec{5.0}, oc);
  const auto& nsd = n.not_strict_descent;
  r.expected = {{"efficiency", "Efficient"},
                {"derivative_at_1", interval_json(Interval(-4, 0))},
                {"sufficient_sampled_convexity", "PreconditionFailed"},
                {"sufficient", "Fail"},
                {"not_strict_descent", "PreconditionFailed"},
                {"not_strict_descent_unconditional", "Fail"},
                {"no_better_strict_descent", "Pass"},
                {"efficiency_at_5", "NotEfficient"}};
  r.measured = {{"efficiency", to_string(e.verdict)},
                {"derivative_at_1", interval_json(d1)},
                {"sufficient_sampled_convexity", sufficient_default},
                {"sufficient", to_string(s.status)},
                {"not_strict_descent", to_string(nsd.status)},
                {"not_strict_descent_unconditional",
                 nsd.unconditional ? json(to_string(*nsd.unconditional)) : json(nullptr)},
                {"no_better_strict_descent", to_string(n.no_better_strict_descent.status)},
                {"efficiency_at_5", to_string(e5.verdict)},
                {"witness_at_5", e5.witness ? vec_json(*e5.witness) : json(nullptr)}};
  r.note = "objective is the hull of the endpoint functions, which cross at x = -1/4; "
           "the sufficient condition is also run with convexity assumed";
  r.pass = e.verdict == Efficiency::Efficient && gh_distance(d1, Interval(-4, 0)) <= 1e-6 &&
           sufficient_default == "PreconditionFailed" && s.status == CheckStatus::Fail &&
           nsd.status == CheckStatus::PreconditionFailed && nsd.unconditional &&
           *nsd.unconditional == CheckStatus::Fail &&
           n.no_better_strict_descent.status == CheckStatus::Pass &&
           e5.verdict == Efficiency::NotEfficient;
  return r;
}

CaseResult case_zero_containment(const GalleryCase& gc, const HarnessConfig& cfg) {
  CaseResult r = start(gc);
  const IOPInstance iop = gallery::x2_3x2_problem();
  const OptimalityConfig oc = cfg.optimality();
  const Vec x{0.0};
  const NecessaryConditions n = necessary_conditions(iop, x, oc);
  const ConditionResult s = sufficient_condition(iop, x, oc);
  r.expected = {{"sufficient", "Pass"},
                {"not_strict_descent", "Pass"},
                {"no_better_strict_descent", "Pass"},
                {"zero_containment", "Pass"}};
  r.measured = {{"sufficient", to_string(s.status)},
                {"not_strict_descent", to_string(n.not_strict_descent.status)},
                {"no_better_strict_descent", to_string(n.no_better_strict_descent.status)},
                {"zero_containment", to_string(n.zero_containment.status)}};
  r.pass = s.status == CheckStatus::Pass && n.not_strict_descent.status == CheckStatus::Pass &&
           n.no_better_strict_descent.status == CheckStatus::Pass &&
           n.zero_containment.status == CheckStatus::Pass;
  return r;
}

CaseResult case_kkt(const GalleryCase& gc, const HarnessConfig& cfg) {
  CaseResult r = start(gc);
  const OptimalityConfig oc = cfg.optimality();
  json rows = json::array();
  bool pass = true;
  for (const gallery::KKTCase& k : gallery::kkt_cases()) {
    const KKTCertificate fj = fritz_john_check(k.iop, k.point, oc);
    const KKTCertificate kkt = kkt_necessary_check(k.iop, k.point, oc);
    if (!kkt.found) {
      rows.push_back({{"instance", k.iop.name}, {"fj_u0", fj.u0}, {"kkt", "NoCertificate"},
                      {"pass", false}});
      pass = false;
      continue;
    }
    const KKTSufficientResult suff = kkt_sufficient_check(k.iop, k.point, kkt.u, oc);
    double u_err = std::abs(fj.u0 - k.fj_u0);
    for (std::size_t i = 0; i < k.kkt_u.size(); ++i) {
      u_err = std::max(u_err, std::abs(kkt.u[i] - k.kkt_u[i]));
    }
    const bool ok = fj.found && fj.max_residual <= 1e-8 && kkt.max_residual <= 1e-8 &&
                    u_err <= 1e-4 && suff.condition.status == CheckStatus::Pass && suff.consistent &&
                    suff.cross_check->verdict == Efficiency::Efficient;
    rows.push_back({{"instance", k.iop.name},
                    {"expected_u0", k.fj_u0},
                    {"expected_u", vec_json(k.kkt_u)},
                    {"fj_u0", fj.u0},
                    {"fj_residual", fj.max_residual},
                    {"kkt_u", vec_json(kkt.u)},
                    {"kkt_residual", kkt.max_residual},
                    {"sufficient", to_string(suff.condition.status)},
                    {"efficiency", to_string(suff.cross_check->verdict)},
                    {"pass", ok}});
    pass = pass && ok;
  }
  const KKTCertificate none = fritz_john_check(gallery::linear_unconstrained(), Vec{0.0}, oc);
  r.expected = {{"residual_tolerance", 1e-8}, {"multiplier_tolerance", 1e-4},
                {"not_efficient_point", "NoCertificate"}};
  r.measured = {{"instances", rows},
                {"not_efficient_point", none.found ? "Certificate" : "NoCertificate"}};
  r.pass = pass && !none.found;
  return r;
}

CaseResult case_svm_degenerate(const GalleryCase& gc, const HarnessConfig& cfg) {
  CaseResult r = start(gc);
  const SVMDataset d = gallery::svm_degenerate();
  const SVMSolution s = train(d, cfg.svm());
  const BiasSet b = bias_set(s, d);
  r.expected = {{"w", {1.0}}, {"b", 0.0}, {"kkt", true}, {"strict_slackness", true},
                {"bias_set", interval_json(Interval())}};
  r.measured = {{"w", vec_json(s.w)},
                {"b", s.b},
                {"u", vec_json(s.u)},
                {"kkt", s.kkt_report.pass},
                {"strict_slackness", s.kkt_report.strict_pass},
                {"bias_set", b.strict ? interval_json(*b.strict) : json(nullptr)}};
  r.pass = std::abs(s.w[0] - 1) <= 1e-9 && std::abs(s.b) <= 1e-9 && s.kkt_report.pass &&
           s.kkt_report.strict_pass && b.strict && norm(*b.strict) <= 1e-9;
  return r;
}

CaseResult case_svm_interval(const GalleryCase& gc, const HarnessConfig& cfg) {
  CaseResult r = start(gc);
  const SVMDataset d = gallery::svm_interval_1d();
  const SVMSolution s = train(d, cfg.svm());
  const BiasSet b = bias_set(s, d);
  const Interval cont = s.kkt_report.containment[0];
  r.expected = {{"w", {1.0}}, {"b", 0.0}, {"containment_has_zero", true},
                {"strict_slackness", false}, {"relaxed_slackness", true}};
  r.measured = {{"w", vec_json(s.w)},
                {"b", s.b},
                {"u", vec_json(s.u)},
                {"containment", interval_json(cont)},
                {"containment_has_zero", contains_zero(cont, cfg.tau_slack)},
                {"strict_slackness", s.kkt_report.strict_pass},
                {"relaxed_slackness", s.kkt_report.relaxed_pass},
                {"bias_set", b.relaxed ? interval_json(*b.relaxed) : json(nullptr)}};
  r.note = "with u = (1/2, 1/2) the containment interval is [-1, 0]";
  r.pass = std::abs(s.w[0] - 1) <= 1e-9 && std::abs(s.b) <= 1e-9 &&
           contains_zero(cont, cfg.tau_slack) && !s.kkt_report.strict_pass &&
           s.kkt_report.relaxed_pass && s.kkt_report.pass;
  return r;
}

CaseResult case_svm_overlap(const GalleryCase& gc, const HarnessConfig& cfg) {
  CaseResult r = start(gc);
  r.expected = {{"error", "NotSeparable"}};
  try {
    train(gallery::svm_overlapping(), cfg.svm());
    r.measured = {{"error", nullptr}};
  } catch (const NotSeparable& e) {
    r.measured = {{"error", "NotSeparable"}, {"message", e.what()}};
    r.pass = true;
  }
  return r;
}

CaseResult case_step(const GalleryCase& gc, const HarnessConfig& cfg) {
  CaseResult r = start(gc);
  const ContinuityResult c = is_gh_continuous_at(gallery::step(), Vec{0.0}, cfg.probe());
  r.expected = {{"continuity", "Discontinuous"}};
  r.measured = {{"continuity", to_string(c.verdict)}};
  r.pass = c.verdict == Continuity::Discontinuous;
  return r;
}

std::vector<GalleryCase> build() {
  std::vector<GalleryCase> cs;
  auto add = [&](std::string id, Provenance p, std::string title,
                 CaseResult (*fn)(const GalleryCase&, const HarnessConfig&)) {
    GalleryCase g{std::move(id), p, std::move(title), {}};
    g.run = [fn, g](const HarnessConfig& cfg) { return fn(g, cfg); };
    cs.push_back(std::move(g));
  };
  add("ee1", Provenance::Reference, "Hadamard derivative of |x|^2 ⊙ C is 2<x,v> ⊙ C", case_ee1);
  add("remark_r2", Provenance::Reference,
      "directional/Gateaux derivatives vanish but the Hadamard limit diverges", case_r2);
  add("norm_counterexample", Provenance::Reference,
      "|x| ⊙ C is continuous at 0 without a Hadamard derivative", case_norm);
  add("nee1", Provenance::Reference, "derivative inequality holds for a nonconvex IVF", case_nee1);
  add("x2_3x2_monotonicity", Provenance::Reference,
      "derivative difference of [x^2, 3x^2] at 1 and 2 is [-10, 2]", case_monotonicity);
  add("ex31", Provenance::Reference,
      "composition with a non-Hadamard outer map breaks the chain rule", case_ex31);
  add("thm36_max_family", Provenance::Derived,
      "max rule over three comparable quadratics at a crossing point", case_max_family);
  add("ne1", Provenance::Reference,
      "efficient point where the sufficient condition fails", case_ne1);
  add("remark_in", Provenance::Reference,
      "efficient point on a non-subspace region with a strict descent direction", case_in);
  add("x2_3x2_conditions", Provenance::Derived,
      "all first-order conditions hold for [x^2, 3x^2] at 0 on R", case_zero_containment);
  add("kkt_instances", Provenance::Derived,
      "Fritz John and KKT certificates on constrained convex instances", case_kkt);
  add("svm_degenerate", Provenance::Derived, "degenerate two-point hard-margin SVM",
      case_svm_degenerate);
  add("svm_interval_1d", Provenance::Derived, "interval two-point hard-margin SVM",
      case_svm_interval);
  add("svm_overlapping", Provenance::Derived, "overlapping boxes are not separable",
      case_svm_overlap);
  add("step_discontinuous", Provenance::Trivial, "a jump is reported as a discontinuity",
      case_step);
  std::sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return cs;
}

}  // namespace

const std::vector<GalleryCase>& gallery_cases() {
  static const std::vector<GalleryCase> cases = build();
  return cases;
}

std::size_t GalleryReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; }));
}

GalleryReport run_gallery(const std::string& filter, const HarnessConfig& cfg) {
  cfg.validate();
  GalleryReport report;
  for (const GalleryCase& c : gallery_cases()) {
    if (!filter.empty() && c.id.find(filter) == std::string::npos) continue;
    CaseResult r;
    try {
      r = c.run(cfg);
    } catch (const Error& e) {
      r.id = c.id;
      r.provenance = c.provenance;
      r.title = c.title;
      r.measured = {{"error", e.what()}};
      r.pass = false;
    }
    report.cases.push_back(std::move(r));
  }
  if (report.cases.empty()) throw UnknownCaseId("no gallery case matches '" + filter + "'");
  return report;
}

json to_json(const GalleryReport& r, const HarnessConfig& cfg) {
  json cases = json::array();
  for (const CaseResult& c : r.cases) {
    json j{{"id", c.id},
           {"provenance", to_string(c.provenance)},
           {"title", c.title},
           {"pass", c.pass},
           {"expected", c.expected},
           {"measured", c.measured}};
    if (!c.note.empty()) j["note"] = c.note;
    cases.push_back(std::move(j));
  }
  return json{{"schema_version", kSchemaVersion},
              {"config", cfg.to_json()},
              {"cases", cases},
              {"summary", {{"total", r.cases.size()}, {"passed", r.passed()},
                           {"failed", r.cases.size() - r.passed()}}}};
}

std::string to_text(const GalleryReport& r) {
  std::ostringstream out;
  for (const CaseResult& c : r.cases) {
    out << (c.pass ? "PASS " : "FAIL ") << c.id << " [" << to_string(c.provenance) << "] "
        << c.title << '\n';
    out << "  expected " << c.expected.dump() << '\n';
    out << "  measured " << c.measured.dump() << '\n';
    if (!c.note.empty()) out << "  note " << c.note << '\n';
  }
  out << r.passed() << '/' << r.cases.size() << " cases pass\n";
  return out.str();
}

}  // namespace ivc::harness
