#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "ivcalc/calculus.hpp"
#include "ivcalc/errors.hpp"

namespace ivc {

std::string_view to_string(Continuity c) {
  switch (c) {
    case Continuity::Continuous:
      return "Continuous";
    case Continuity::Discontinuous:
      return "Discontinuous";
    case Continuity::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(Convexity c) {
  switch (c) {
    case Convexity::Convex:
      return "Convex";
    case Convexity::NotConvex:
      return "NotConvex";
    case Convexity::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(ChainStatus s) {
  switch (s) {
    case ChainStatus::Agree:
      return "Agree";
    case ChainStatus::Inconclusive:
      return "Inconclusive";
    case ChainStatus::PreconditionFailed:
      return "PreconditionFailed";
  }
  return "?";
}

namespace {

double radius_at(const ProbeConfig& cfg, int k) { return cfg.lambda0 * std::pow(cfg.rho, k); }

// Directions at which adversarial schedules without a fixed direction are
// replayed: 0 and ± basis vectors.
std::vector<Vec> replay_directions(std::size_t n) {
  std::vector<Vec> out{Vec(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (double s : {1.0, -1.0}) {
      Vec e(n, 0.0);
      e[i] = s;
      out.push_back(std::move(e));
    }
  }
  return out;
}

// Displacements λ_k h_k of every applicable adversarial schedule, per step.
std::vector<std::vector<Vec>> adversarial_displacements(std::span<const double> x,
                                                        const ProbeConfig& cfg) {
  std::vector<std::vector<Vec>> out;
  for (const PathSchedule& p : cfg.adversarial) {
    std::vector<Vec> dirs;
    if (p.direction) {
      dirs.push_back(*p.direction);
    } else {
      dirs = replay_directions(x.size());
    }
    for (const Vec& v : dirs) {
      if (!p.applies(x, v)) continue;
      std::vector<Vec> steps;
      for (int k = 0; k < cfg.steps; ++k) {
        auto [lambda, h] = p.step(v, k);
        steps.push_back(scaled(lambda, h));
      }
      out.push_back(std::move(steps));
    }
  }
  return out;
}

double tail_max(const std::vector<double>& trace, int window) {
  double m = 0.0;
  const std::size_t start = trace.size() > static_cast<std::size_t>(window)
                                ? trace.size() - static_cast<std::size_t>(window)
                                : 0;
  for (std::size_t i = start; i < trace.size(); ++i) m = std::max(m, trace[i]);
  return m;
}

double tail_min(const std::vector<double>& trace, std::size_t from) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = from; i < trace.size(); ++i) m = std::min(m, trace[i]);
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------

FrechetResult frechet_check(const Ivf& f, std::span<const double> x, const IntervalMap& candidate,
                            const ProbeConfig& cfg) {
  cfg.validate();
  if (x.size() != f.dim()) throw DimensionError("point dimension does not match IVF");
  const LinearityResult lin = is_linear_ivf(sample_map(candidate, f.dim(), cfg), cfg);
  if (lin.verdict != Tri::Yes) {
    throw NotLinearCandidate(lin.witness.empty() ? "candidate map is not certified linear"
                                                 : lin.witness);
  }
  const Interval fx = f.eval(x);
  const double threshold = 10.0 * cfg.tau_conv * (1.0 + norm(fx));
  const auto dirs = unit_directions(f.dim(), static_cast<std::size_t>(cfg.directions),
                                    cfg.seed ^ 0x5bd1e995ULL);
  std::vector<Interval> g_unit;
  for (const Vec& u : dirs) {
    const auto g = candidate(u);
    if (!g) throw NotLinearCandidate("candidate undefined at a unit direction");
    g_unit.push_back(*g);
  }

  auto residual = [&](std::span<const double> h, const Interval& gh) {
    const double r = euclidean_norm(h);
    const Interval fh = f.eval(axpy(1.0, h, x));
    return norm(gh_difference(gh_difference(fh, fx), gh)) / r;
  };

  FrechetResult out;
  bool blew_up = false;
  for (int k = 0; k < cfg.steps; ++k) {
    const double r = radius_at(cfg, k);
    double worst = 0.0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const Vec h = scaled(r, dirs[i]);
      if (!f.in_domain(axpy(1.0, h, x))) continue;
      try {
        worst = std::max(worst, residual(h, scalar_mul(r, g_unit[i])));
      } catch (const InvalidIvf&) {
        worst = std::numeric_limits<double>::infinity();
      }
    }
    out.residual_trace.push_back(worst);
  }

  for (const auto& steps : adversarial_displacements(x, cfg)) {
    for (std::size_t k = 0; k < steps.size(); ++k) {
      const Vec& h = steps[k];
      const double r = euclidean_norm(h);
      if (r == 0.0 || !f.in_domain(axpy(1.0, h, x))) continue;
      const auto g = candidate(scaled(1.0 / r, h));
      if (!g) continue;
      double value = std::numeric_limits<double>::infinity();
      try {
        value = residual(h, scalar_mul(r, *g));
      } catch (const InvalidIvf&) {
      }
      if (k < out.adversarial_trace.size()) {
        out.adversarial_trace[k] = std::max(out.adversarial_trace[k], value);
      } else {
        out.adversarial_trace.push_back(value);
      }
      if (!(value <= cfg.norm_cap)) blew_up = true;
    }
  }

  out.min_residual = tail_min(out.residual_trace, 0);
  bool small = out.min_residual <= threshold;
  if (!out.adversarial_trace.empty()) {
    small = small && tail_min(out.adversarial_trace, 0) <= threshold;
  }
  if (blew_up) out.note = "residual exceeded the norm cap along an adversarial schedule";
  out.differentiable = small && !blew_up;
  return out;
}

FrechetResult frechet_differentiable(const Ivf& f, std::span<const double> x,
                                     const ProbeConfig& cfg) {
  ProbeConfig inner = cfg;
  inner.certify_linearity = false;
  auto candidate = [&f, x, inner](std::span<const double> h) -> std::optional<Interval> {
    const DerivativeEstimate e = directional_derivative(f, x, h, inner);
    if (e.exists != Existence::Exists) return std::nullopt;
    return e.value;
  };
  try {
    return frechet_check(f, x, candidate, cfg);
  } catch (const NotLinearCandidate& e) {
    FrechetResult out;
    out.differentiable = false;
    out.note = std::string("no linear candidate: ") + e.what();
    return out;
  }
}

// ---------------------------------------------------------------------------

ContinuityResult is_gh_continuous_at(const Ivf& f, std::span<const double> x,
                                     const ProbeConfig& cfg) {
  cfg.validate();
  if (x.size() != f.dim()) throw DimensionError("point dimension does not match IVF");
  const Interval fx = f.eval(x);
  const auto dirs = unit_directions(f.dim(), static_cast<std::size_t>(cfg.directions),
                                    cfg.seed ^ 0x27d4eb2fULL);
  const auto adversarial = adversarial_displacements(x, cfg);

  ContinuityResult out;
  auto probe = [&](std::span<const double> h, double& worst) {
    const Vec p = axpy(1.0, h, x);
    if (!f.in_domain(p)) return;
    try {
      worst = std::max(worst, gh_distance(f.eval(p), fx));
    } catch (const InvalidIvf&) {
      worst = std::numeric_limits<double>::infinity();
    }
  };
  for (int k = 0; k < cfg.steps; ++k) {
    const double r = radius_at(cfg, k);
    double worst = 0.0;
    for (const Vec& d : dirs) probe(scaled(r, d), worst);
    for (const auto& steps : adversarial) probe(steps[static_cast<std::size_t>(k)], worst);
    out.trace.push_back(worst);
  }
  const double small = 10.0 * cfg.tau_conv * (1.0 + norm(fx));
  if (tail_max(out.trace, cfg.cauchy_window) <= small) {
    out.verdict = Continuity::Continuous;
  } else if (tail_min(out.trace, out.trace.size() / 2) >= cfg.jump_tol) {
    out.verdict = Continuity::Discontinuous;
  } else {
    out.verdict = Continuity::Inconclusive;
  }
  return out;
}

// ---------------------------------------------------------------------------

ConvexityResult is_convex_on(const Ivf& f, const Box& region, const SampleConfig& cfg) {
  if (region.dim() != f.dim()) throw DimensionError("region dimension does not match IVF");
  if (cfg.samples < 1) throw PreconditionFailed("sample count must be >= 1");
  const Vec origin(f.dim(), 0.0);
  const Box box = region.bounded() ? region : region.clipped(origin, cfg.radius);
  for (std::size_t i = 0; i < box.dim(); ++i) {
    if (!(box.lo[i] <= box.hi[i])) throw DomainError("empty sampling region");
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&] {
    Vec p(box.dim());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = box.lo[i] + unit(rng) * (box.hi[i] - box.lo[i]);
    return p;
  };

  ConvexityResult out;
  auto check = [&](const Vec& x1, const Vec& x2, double lambda) {
    Vec mix(x1.size());
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = lambda * x1[i] + (1.0 - lambda) * x2[i];
    const Interval a = f.eval(x1);
    const Interval b = f.eval(x2);
    const Interval m = f.eval(mix);
    ++out.checked;
    const std::pair<const char*, std::array<double, 3>> sides[] = {
        {"lower", {m.lo(), a.lo(), b.lo()}}, {"upper", {m.hi(), a.hi(), b.hi()}}};
    for (const auto& [name, v] : sides) {
      const double rhs = lambda * v[1] + (1.0 - lambda) * v[2];
      const double gap = v[0] - rhs;
      const double tol = cfg.tol * (1.0 + std::abs(lambda * v[1]) + std::abs((1.0 - lambda) * v[2]));
      if (gap > tol && (!out.witness || gap > out.witness->gap)) {
        out.witness = ConvexityWitness{x1, x2, lambda, name, gap};
      }
    }
  };

  check(box.lo, box.hi, 0.5);
  for (int s = 0; s < cfg.samples && !out.witness; ++s) {
    const Vec x1 = draw();
    const Vec x2 = draw();
    check(x1, x2, unit(rng));
  }
  out.verdict = out.witness ? Convexity::NotConvex : Convexity::Convex;
  return out;
}

// ---------------------------------------------------------------------------

ChainRuleResult chain_rule(const Ivf& f, const VecFn& h, std::size_t inner_dim,
                           std::span<const double> x, std::span<const double> v,
                           const ProbeConfig& cfg) {
  if (x.size() != inner_dim || v.size() != inner_dim) {
    throw DimensionError("chain rule query dimension mismatch");
  }
  ChainRuleResult out;
  out.y = h(x);
  if (out.y.size() != f.dim()) throw DimensionError("inner map does not land in the IVF domain");

  bool inner_ok = true;
  for (std::size_t j = 0; j < out.y.size(); ++j) {
    const Ivf component = Ivf::degenerate(inner_dim, [h, j](std::span<const double> p) {
      return h(p)[j];
    });
    const DerivativeEstimate e = hadamard_derivative(component, x, v, cfg);
    out.z.push_back(e.value.lo());
    if (!is_hadamard_differentiable(e)) inner_ok = false;
  }

  const Ivf composite = compose(f, h, inner_dim);
  out.direct = hadamard_derivative(composite, x, v, cfg);
  if (!inner_ok) {
    out.status = ChainStatus::PreconditionFailed;
    out.note = "inner map is not Hadamard differentiable at the point";
    return out;
  }
  out.outer = hadamard_derivative(f, out.y, out.z, cfg);
  if (!is_hadamard_differentiable(out.outer)) {
    out.status = ChainStatus::PreconditionFailed;
    out.note = "outer IVF is not Hadamard differentiable at H(x): " + out.outer.note;
    return out;
  }
  out.chain_value = out.outer.value;
  if (out.direct.exists == Existence::Exists &&
      gh_distance(*out.chain_value, out.direct.value) <= cfg.tau_conv) {
    out.status = ChainStatus::Agree;
  } else {
    out.status = ChainStatus::Inconclusive;
    out.note = "chain value and direct estimate differ";
  }
  return out;
}

PathCheckResult path_derivative_check(const Ivf& f, const std::function<Vec(double)>& path,
                                      const ProbeConfig& cfg) {
  const Vec x = path(0.0);
  if (x.size() != f.dim()) throw DimensionError("path does not land in the IVF domain");
  const Vec zero{0.0};
  const Vec one{1.0};
  PathCheckResult out;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const Ivf component =
        Ivf::degenerate(1, [&path, j](std::span<const double> t) { return path(t[0])[j]; });
    const DerivativeEstimate e = directional_derivative(component, zero, one, cfg);
    if (e.exists != Existence::Exists) {
      throw PreconditionFailed("path derivative at 0 could not be estimated");
    }
    out.velocity.push_back(e.value.lo());
  }
  const Ivf along(1, [&f, &path](std::span<const double> t) { return f.eval(path(t[0])); });
  out.along_path = directional_derivative(along, zero, one, cfg);
  out.hadamard = hadamard_derivative(f, x, out.velocity, cfg);
  if (out.along_path.exists != Existence::Exists || !is_hadamard_differentiable(out.hadamard)) {
    out.pass = false;
    out.note = "a required derivative was not certified";
    return out;
  }
  const double gap = gh_distance(out.along_path.value, out.hadamard.value);
  out.pass = gap <= cfg.tau_conv * (1.0 + norm(out.hadamard.value));
  if (!out.pass) out.note = "path derivative differs from the Hadamard value";
  return out;
}

MaxFamilyResult max_family_derivative(const std::vector<Ivf>& fs, std::span<const double> x,
                                      std::span<const double> h, const ProbeConfig& cfg) {
  if (fs.empty()) throw DimensionError("empty IVF family");
  const Ivf fmax = pointwise_max(fs, cfg.tau_cmp);
  const Interval fx = fmax.eval(x);

  MaxFamilyResult out;
  const double active_tol = cfg.tau_cmp * (1.0 + norm(fx));
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (gh_distance(fs[i].eval(x), fx) <= active_tol) out.active_set.push_back(i);
  }
  std::optional<Interval> best;
  const double cmp_tol = cfg.linear_tol;
  for (std::size_t i : out.active_set) {
    const DerivativeEstimate e = hadamard_derivative(fs[i], x, h, cfg);
    if (!is_hadamard_differentiable(e)) {
      throw PreconditionFailed("family member " + std::to_string(i) +
                               " is not Hadamard differentiable at the point");
    }
    out.member_derivatives.push_back(e.value);
    if (!best) {
      best = e.value;
    } else if (!comparable(*best, e.value, cmp_tol)) {
      throw NotComparableFamily("derivatives of active members are not comparable");
    } else {
      best = max_comparable(*best, e.value, cmp_tol);
    }
  }
  out.value = *best;

  ProbeConfig direct_cfg = cfg;
  direct_cfg.certify_linearity = false;
  out.direct = hadamard_derivative(fmax, x, h, direct_cfg);
  out.agree = out.direct.exists == Existence::Exists &&
              gh_distance(out.direct.value, out.value) <= cfg.tau_conv * (1.0 + norm(out.value));
  return out;
}

}  // namespace ivc
