#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "ivcalc/calculus.hpp"
#include "ivcalc/errors.hpp"

namespace ivc {

std::string_view to_string(Existence e) {
  switch (e) {
    case Existence::Exists:
      return "Exists";
    case Existence::DoesNotExist:
      return "DoesNotExist";
    case Existence::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::Yes:
      return "Yes";
    case Tri::No:
      return "No";
    case Tri::Unknown:
      return "Unknown";
  }
  return "?";
}

std::string_view to_string(DerivativeKind k) {
  switch (k) {
    case DerivativeKind::Directional:
      return "Directional";
    case DerivativeKind::Gateaux:
      return "Gateaux";
    case DerivativeKind::Frechet:
      return "Frechet";
    case DerivativeKind::Hadamard:
      return "Hadamard";
  }
  return "?";
}

namespace {

bool same_vector(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-15 * (1.0 + std::abs(a[i]))) return false;
  }
  return true;
}

}  // namespace

bool PathSchedule::applies(std::span<const double> x, std::span<const double> v) const {
  if (!step || !same_vector(base, x)) return false;
  return !direction || same_vector(*direction, v);
}

void ProbeConfig::validate() const {
  auto fail = [](const char* what) { throw PreconditionFailed(what); };
  if (!(lambda0 > 0.0)) fail("lambda0 must be positive");
  if (!(rho > 0.0 && rho < 1.0)) fail("rho must lie in (0, 1)");
  if (steps < 1 || seeds < 0 || directions < 1 || linear_probes < 1) fail("counts must be >= 1");
  if (cauchy_window < 2 || cauchy_window > steps) fail("cauchy window must lie in [2, steps]");
  if (!(eps0 > 0.0) || !(tau_conv > 0.0) || !(tau_cmp > 0.0) || !(norm_cap > 0.0) ||
      !(linear_tol > 0.0) || !(jump_tol > 0.0)) {
    fail("tolerances must be positive");
  }
}

bool is_hadamard_differentiable(const DerivativeEstimate& e) {
  return e.exists == Existence::Exists && e.linear == Tri::Yes;
}

namespace {

using Stepper = std::function<std::pair<double, Vec>(int k)>;

// Long directions shrink the step and widen the tolerance in proportion, so
// verdicts do not depend on |h| beyond the unit scale.
double direction_size(std::span<const double> v) { return std::max(1.0, euclidean_norm(v)); }

void analyse(ScheduleTrace& t, const ProbeConfig& cfg, double size) {
  if (t.diverged) {
    t.verdict = Existence::DoesNotExist;
    t.spread = std::numeric_limits<double>::infinity();
    if (!t.steps.empty()) {
      t.limit = t.steps.back().iterate;
      t.limit_index = t.steps.size() - 1;
    }
    return;
  }
  const std::size_t w = static_cast<std::size_t>(cfg.cauchy_window);
  if (t.steps.size() < w) {
    t.verdict = Existence::Inconclusive;
    t.spread = std::numeric_limits<double>::infinity();
    return;
  }
  // Raw iterates and, along an unperturbed stretch, their Richardson
  // extrapolation (λ_{k-1} q_k − λ_k q_{k-1}) / (λ_{k-1} − λ_k), which cancels
  // the O(λ) term of a smooth quotient.
  std::vector<Interval> raw(t.steps.size()), ext(t.steps.size());
  std::vector<double> raw_noise(t.steps.size()), ext_noise(t.steps.size());
  std::vector<bool> ext_ok(t.steps.size(), false);
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    raw[k] = t.steps[k].iterate;
    raw_noise[k] = t.steps[k].noise;
    if (k == 0) continue;
    const ScheduleStep& a = t.steps[k - 1];
    const ScheduleStep& b = t.steps[k];
    if (a.radius != 0.0 || b.radius != 0.0 || !(a.lambda > b.lambda)) continue;
    const double den = a.lambda - b.lambda;
    const double lo = (a.lambda * b.iterate.lo() - b.lambda * a.iterate.lo()) / den;
    const double hi = (a.lambda * b.iterate.hi() - b.lambda * a.iterate.hi()) / den;
    if (!std::isfinite(lo) || !std::isfinite(hi)) continue;
    ext[k] = Interval(std::min(lo, hi), std::max(lo, hi));
    ext_noise[k] = (a.lambda * b.noise + b.lambda * a.noise) / den;
    ext_ok[k] = true;
  }
  // The window of consecutive iterates with the smallest spread plus rounding
  // noise; deeper windows trade truncation error for cancellation in
  // F(x̄+λh) ⊖ F(x̄), which can also fake a zero spread.
  struct Window {
    double score = std::numeric_limits<double>::infinity();
    double spread = std::numeric_limits<double>::infinity();
    std::size_t end = 0;
  };
  const auto best_window = [&](const std::vector<Interval>& seq, const std::vector<double>& noise,
                               const std::vector<bool>* ok) {
    Window best;
    for (std::size_t e = w - 1; e < seq.size(); ++e) {
      bool usable = true;
      double spread = 0.0;
      for (std::size_t i = e + 1 - w; i <= e && usable; ++i) {
        if (ok && !(*ok)[i]) usable = false;
        for (std::size_t j = i + 1; j <= e && usable; ++j) {
          spread = std::max(spread, gh_distance(seq[i], seq[j]));
        }
      }
      if (!usable) continue;
      const double score = spread + noise[e];
      if (score < best.score) best = {score, spread, e};
    }
    return best;
  };
  const Window plain = best_window(raw, raw_noise, nullptr);
  const Window extrapolated = best_window(ext, ext_noise, &ext_ok);
  const bool use_ext = extrapolated.score < plain.score;
  const Window& best = use_ext ? extrapolated : plain;
  t.spread = best.spread;
  t.limit_index = best.end;
  t.limit = use_ext ? ext[best.end] : raw[best.end];
  // Rounding may account for part of the spread, but only while the rounding
  // bound itself is within tolerance.
  const double noise = best.score - best.spread;
  const double tol = cfg.tau_conv * (size + norm(t.limit));
  t.verdict = best.spread <= tol + noise && noise <= tol ? Existence::Exists
                                                         : Existence::Inconclusive;
}

ScheduleTrace run_schedule(const Ivf& f, std::span<const double> x, const Interval& fx,
                           std::span<const double> v, std::string label, const Stepper& step,
                           const ProbeConfig& cfg) {
  ScheduleTrace t;
  t.label = std::move(label);
  for (int k = 0; k < cfg.steps; ++k) {
    auto [lambda, h] = step(k);
    if (!(lambda > 0.0) || h.size() != x.size()) throw PreconditionFailed("invalid schedule step");
    const Vec p = axpy(lambda, h, x);
    Vec diff(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) diff[i] = h[i] - v[i];
    const double radius = euclidean_norm(diff);
    Interval fp;
    try {
      fp = f.eval(p);
    } catch (const InvalidIvf&) {
      t.diverged = true;
      break;
    }
    const Interval d = gh_difference(fp, fx);
    const double lo = d.lo() / lambda;
    const double hi = d.hi() / lambda;
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      t.diverged = true;
      break;
    }
    const Interval q(lo, hi);
    // Rounding in F(x̄+λh) and F(x̄), plus the rounding of the point x̄+λh
    // itself carried through F at the observed slope.
    const double h_norm = euclidean_norm(h);
    const double slope = h_norm > 0.0 ? norm(q) / h_norm : 0.0;
    const double noise = std::numeric_limits<double>::epsilon() *
                         (norm(fp) + norm(fx) + slope * euclidean_norm(x)) / lambda;
    t.steps.push_back({lambda, radius, q, noise});
    if (norm(q) > cfg.norm_cap) {
      t.diverged = true;
      break;
    }
  }
  analyse(t, cfg, direction_size(v));
  return t;
}

double geometric(double base, double rho, int k) { return base * std::pow(rho, k); }

Vec random_unit(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  for (;;) {
    Vec u(n);
    for (double& c : u) c = normal(rng);
    const double r = euclidean_norm(u);
    if (r > 1e-12) {
      for (double& c : u) c /= r;
      return u;
    }
  }
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
}

void require_query(const Ivf& f, std::span<const double> x, std::span<const double> v) {
  if (x.size() != f.dim() || v.size() != f.dim()) {
    throw DimensionError("derivative query dimension does not match IVF");
  }
  if (!f.in_domain(x)) throw DomainError("base point outside IVF domain");
}

Stepper plain_stepper(std::span<const double> v, const ProbeConfig& cfg) {
  Vec dir(v.begin(), v.end());
  const double lambda0 = cfg.lambda0 / direction_size(v);
  return [dir, lambda0, cfg](int k) { return std::pair{geometric(lambda0, cfg.rho, k), dir}; };
}

// Runs `body` with cfg, retrying once with a smaller initial step when the
// first probes leave the domain.
template <typename Body>
auto with_domain_retry(const ProbeConfig& cfg, Body body) {
  try {
    return body(cfg);
  } catch (const DomainError&) {
    ProbeConfig smaller = cfg;
    smaller.lambda0 *= 1e-2;
    smaller.eps0 *= 1e-2;
    return body(smaller);
  }
}

DerivativeEstimate combine(std::vector<ScheduleTrace> traces, const ProbeConfig& cfg,
                           double size) {
  DerivativeEstimate est;
  est.diagnostics = traces.front().steps;
  est.value = traces.front().limit;

  const ScheduleTrace* first_converged = nullptr;
  double disagreement = 0.0;
  bool all_exist = true;
  std::string diverged_label;
  for (const ScheduleTrace& t : traces) {
    if (t.diverged && diverged_label.empty()) diverged_label = t.label;
    if (t.verdict != Existence::Exists) {
      if (!t.linked) all_exist = false;
      continue;
    }
    if (!first_converged && !t.linked) first_converged = &t;
  }
  // Linked schedules only count towards the gross disagreement.
  double gross = 0.0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (traces[i].verdict != Existence::Exists) continue;
    for (std::size_t j = i + 1; j < traces.size(); ++j) {
      if (traces[j].verdict != Existence::Exists) continue;
      const double gap = gh_distance(traces[i].limit, traces[j].limit);
      gross = std::max(gross, gap);
      if (!traces[i].linked && !traces[j].linked) disagreement = std::max(disagreement, gap);
    }
  }
  if (first_converged) est.value = first_converged->limit;
  if (traces.front().verdict == Existence::Exists) est.value = traces.front().limit;

  // Tolerances are relative to the derivative value and the direction length.
  const double scale = size + norm(est.value);
  std::ostringstream note;
  if (!diverged_label.empty()) {
    est.exists = Existence::DoesNotExist;
    note << "schedule '" << diverged_label << "' diverged past the norm cap";
  } else if (gross > 10.0 * cfg.tau_conv * scale) {
    est.exists = Existence::DoesNotExist;
    note << "converged schedules disagree by " << gross;
  } else if (all_exist && disagreement <= cfg.tau_conv * scale) {
    est.exists = Existence::Exists;
  } else {
    est.exists = Existence::Inconclusive;
    note << "schedules did not settle within tolerance";
  }
  est.note = note.str();
  est.schedules = std::move(traces);
  return est;
}

DerivativeEstimate hadamard_limit(const Ivf& f, std::span<const double> x,
                                  std::span<const double> v, const ProbeConfig& cfg) {
  const Interval fx = f.eval(x);
  std::vector<ScheduleTrace> traces;
  traces.push_back(run_schedule(f, x, fx, v, "reference", plain_stepper(v, cfg), cfg));
  for (int s = 0; s < cfg.seeds; ++s) {
    std::mt19937_64 rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(s)));
    std::vector<Vec> us;
    for (int k = 0; k < cfg.steps; ++k) us.push_back(random_unit(v.size(), rng));
    Vec dir(v.begin(), v.end());
    const double lambda0 = cfg.lambda0 / direction_size(v);
    // h_k → v at rate ρ² pins the value: the O(|h_k − v|) bias is gone
    // before rounding noise ends the Cauchy window. At rate ρ the
    // perturbation keeps pace with λ, which exposes quotients that blow up
    // along curved approaches.
    for (const bool linked : {false, true}) {
      const double rate = linked ? cfg.rho : cfg.rho * cfg.rho;
      Stepper step = [dir, us, lambda0, rate, &cfg](int k) {
        const double eps = geometric(cfg.eps0, rate, k);
        return std::pair{geometric(lambda0, cfg.rho, k), axpy(eps, us[k], dir)};
      };
      const std::string label = (linked ? "linked#" : "perturbed#") + std::to_string(s);
      traces.push_back(run_schedule(f, x, fx, v, label, step, cfg));
      traces.back().linked = linked;
    }
  }
  for (const PathSchedule& p : cfg.adversarial) {
    if (!p.applies(x, v)) continue;
    Vec dir(v.begin(), v.end());
    Stepper step = [&p, dir](int k) { return p.step(dir, k); };
    traces.push_back(run_schedule(f, x, fx, v, p.label, step, cfg));
  }
  return combine(std::move(traces), cfg, direction_size(v));
}

}  // namespace

DerivativeEstimate directional_derivative(const Ivf& f, std::span<const double> x,
                                          std::span<const double> h, const ProbeConfig& cfg) {
  cfg.validate();
  require_query(f, x, h);
  return with_domain_retry(cfg, [&](const ProbeConfig& c) {
    const Interval fx = f.eval(x);
    std::vector<ScheduleTrace> traces;
    traces.push_back(run_schedule(f, x, fx, h, "reference", plain_stepper(h, c), c));
    return combine(std::move(traces), c, direction_size(h));
  });
}

namespace {

void certify(DerivativeEstimate& est, const std::function<DerivativeEstimate(std::span<const double>)>& map,
             std::size_t dim, std::span<const double> anchor, const ProbeConfig& cfg) {
  if (!cfg.certify_linearity || est.exists != Existence::Exists) return;
  const LinearProbe probe = probe_linear_map(map, dim, cfg, anchor);
  if (!probe.defined) {
    est.linear = probe.worst == Existence::DoesNotExist ? Tri::No : Tri::Unknown;
    if (!est.note.empty()) est.note += "; ";
    est.note += "derivative map undefined at a probe direction";
    return;
  }
  const LinearityResult lin = is_linear_ivf(probe.sample, cfg);
  est.linear = lin.verdict;
  if (lin.verdict == Tri::No) {
    if (!est.note.empty()) est.note += "; ";
    est.note += "derivative map is not linear: " + lin.witness;
  }
}

}  // namespace

DerivativeEstimate gateaux_derivative(const Ivf& f, std::span<const double> x,
                                      std::span<const double> h, const ProbeConfig& cfg) {
  DerivativeEstimate est = directional_derivative(f, x, h, cfg);
  ProbeConfig inner = cfg;
  inner.certify_linearity = false;
  certify(
      est, [&](std::span<const double> d) { return directional_derivative(f, x, d, inner); },
      f.dim(), h, cfg);
  return est;
}

DerivativeEstimate hadamard_derivative(const Ivf& f, std::span<const double> x,
                                       std::span<const double> v, const ProbeConfig& cfg) {
  cfg.validate();
  require_query(f, x, v);
  DerivativeEstimate est =
      with_domain_retry(cfg, [&](const ProbeConfig& c) { return hadamard_limit(f, x, v, c); });
  ProbeConfig inner = cfg;
  inner.certify_linearity = false;
  certify(
      est,
      [&](std::span<const double> d) {
        return with_domain_retry(inner,
                                 [&](const ProbeConfig& c) { return hadamard_limit(f, x, d, c); });
      },
      f.dim(), v, cfg);
  return est;
}

DerivativeEstimate estimate(const Ivf& f, const DerivativeQuery& q, const ProbeConfig& cfg) {
  switch (q.kind) {
    case DerivativeKind::Directional:
      return directional_derivative(f, q.base, q.direction, cfg);
    case DerivativeKind::Gateaux:
      return gateaux_derivative(f, q.base, q.direction, cfg);
    case DerivativeKind::Hadamard:
      return hadamard_derivative(f, q.base, q.direction, cfg);
    case DerivativeKind::Frechet: {
      DerivativeEstimate est = hadamard_derivative(f, q.base, q.direction, cfg);
      const FrechetResult fr = frechet_differentiable(f, q.base, cfg);
      est.residual_trace = fr.residual_trace;
      if (fr.differentiable) {
        est.exists = Existence::Exists;
        est.linear = Tri::Yes;
      } else if (est.exists == Existence::DoesNotExist || est.linear == Tri::No) {
        est.exists = Existence::DoesNotExist;
      } else {
        est.exists = Existence::Inconclusive;
      }
      if (!fr.note.empty()) est.note += (est.note.empty() ? "" : "; ") + fr.note;
      return est;
    }
  }
  throw PreconditionFailed("unknown derivative kind");
}

// ---------------------------------------------------------------------------
// Linearity probing.

namespace {

std::vector<Vec> probe_set(std::size_t dim, const ProbeConfig& cfg,
                           std::span<const double> anchor) {
  std::vector<Vec> bases;
  if (!anchor.empty() && euclidean_norm(anchor) > 0.0) bases.emplace_back(anchor.begin(), anchor.end());
  std::mt19937_64 rng(stream_seed(cfg.seed, 1000));
  std::normal_distribution<double> normal;
  for (int i = 0; i < cfg.linear_probes; ++i) {
    Vec b(dim);
    for (double& c : b) c = normal(rng);
    bases.push_back(std::move(b));
  }
  std::vector<Vec> probes = bases;
  for (const Vec& b : bases) {
    for (double c : {-1.0, 2.0, -0.5}) probes.push_back(scaled(c, b));
  }
  for (std::size_t i = 0; i < bases.size(); ++i) {
    for (std::size_t j = i + 1; j < bases.size(); ++j) probes.push_back(axpy(1.0, bases[i], bases[j]));
  }
  probes.emplace_back(dim, 0.0);
  return probes;
}

}  // namespace

LinearProbe probe_linear_map(const std::function<DerivativeEstimate(std::span<const double>)>& map,
                             std::size_t dim, const ProbeConfig& cfg,
                             std::span<const double> anchor) {
  LinearProbe out;
  for (Vec& d : probe_set(dim, cfg, anchor)) {
    Existence e = Existence::Inconclusive;
    Interval value;
    try {
      const DerivativeEstimate est = map(d);
      e = est.exists;
      value = est.value;
    } catch (const DomainError&) {
      e = Existence::Inconclusive;
    }
    if (e != Existence::Exists) {
      out.defined = false;
      if (e == Existence::DoesNotExist || out.worst == Existence::Exists) out.worst = e;
      continue;
    }
    out.sample.probe_directions.push_back(std::move(d));
    out.sample.values.push_back(value);
  }
  return out;
}

LinearMapSample sample_map(const IntervalMap& map, std::size_t dim, const ProbeConfig& cfg,
                           std::span<const double> anchor) {
  LinearMapSample s;
  for (Vec& d : probe_set(dim, cfg, anchor)) {
    const std::optional<Interval> v = map(d);
    if (!v) continue;
    s.probe_directions.push_back(std::move(d));
    s.values.push_back(*v);
  }
  return s;
}

LinearityResult is_linear_ivf(const LinearMapSample& sample, const ProbeConfig& cfg) {
  const auto& p = sample.probe_directions;
  const auto& val = sample.values;
  if (p.size() != val.size()) throw DimensionError("probe and value counts differ");
  if (p.size() < 2) throw PreconditionFailed("linearity needs at least two probes");

  auto tol_for = [&](double scale) { return cfg.linear_tol * (1.0 + scale); };
  int relations = 0;
  LinearityResult out;

  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pii = dot(p[i], p[i]);
    if (pii == 0.0) continue;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i == j) continue;
      const double c = dot(p[j], p[i]) / pii;
      const Vec resid = axpy(-c, p[i], p[j]);
      if (euclidean_norm(resid) > 1e-12 * (euclidean_norm(p[i]) + euclidean_norm(p[j]))) continue;
      ++relations;
      const Interval expected = scalar_mul(c, val[i]);
      const double tol = tol_for(norm(expected) + norm(val[j]));
      if (gh_distance(val[j], expected) > tol) {
        std::ostringstream w;
        w.precision(17);
        w << "F(" << c << "·x) = " << val[j] << " but " << c << "⊙F(x) = " << expected;
        out.verdict = Tri::No;
        out.witness = w.str();
        return out;
      }
    }
  }

  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      const Vec s = axpy(1.0, p[i], p[j]);
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (k == i || k == j) continue;
        const Vec resid = axpy(-1.0, s, p[k]);
        if (euclidean_norm(resid) > 1e-12 * (1.0 + euclidean_norm(s))) continue;
        ++relations;
        const Interval sum = add(val[i], val[j]);
        const double tol = tol_for(norm(sum) + norm(val[k]));
        if (nearly_equal(sum, val[k], tol)) continue;
        if (comparable(sum, val[k], tol)) {
          std::ostringstream w;
          w.precision(17);
          w << "F(x)⊕F(y) = " << sum << " and F(x+y) = " << val[k]
            << " are distinct but comparable";
          out.verdict = Tri::No;
          out.witness = w.str();
          return out;
        }
      }
    }
  }
  out.verdict = relations > 0 ? Tri::Yes : Tri::Unknown;
  return out;
}

}  // namespace ivc
