#pragma once

// Numerical gH-derivatives of interval-valued functions and the continuity,
// convexity, linearity, composition, path and max-family checks built on them.
//
// Every limit is estimated along geometric schedules λ_k = λ₀ρᵏ. A verdict of
// DoesNotExist is evidence (divergence or disagreeing schedules), never proof.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ivcalc/interval.hpp"
#include "ivcalc/ivf.hpp"

namespace ivc {

enum class Existence { Exists, DoesNotExist, Inconclusive };
/// Three-valued answer for properties that sampling can refute but not prove.
enum class Tri { Yes, No, Unknown };

std::string_view to_string(Existence e);
std::string_view to_string(Tri t);

/// A user-supplied sequence (λ_k, h_k) aimed at a known singular set.
/// Applies at `base`; if `direction` is set, only when v equals it.
struct PathSchedule {
  std::string label;
  Vec base;
  std::optional<Vec> direction;
  std::function<std::pair<double, Vec>(std::span<const double> v, int k)> step;

  bool applies(std::span<const double> x, std::span<const double> v) const;
};

struct ProbeConfig {
  double lambda0 = 0.1;
  double rho = 0.5;
  int steps = 30;
  int seeds = 4;
  double eps0 = 0.1;
  double tau_conv = 1e-6;
  double tau_cmp = kCompareTol;
  double norm_cap = 1e6;
  int cauchy_window = 3;
  /// Sphere samples for continuity and Fréchet residuals.
  int directions = 64;
  /// Random base directions used to probe linearity of a derivative map.
  int linear_probes = 4;
  /// Relative tolerance for linearity relations between estimated values.
  double linear_tol = 1e-5;
  /// A continuity trace whose tail stays above this is a jump.
  double jump_tol = 1e-3;
  bool certify_linearity = true;
  std::uint64_t seed = 20240607;
  std::vector<PathSchedule> adversarial;

  /// Throws PreconditionFailed on out-of-range settings.
  void validate() const;
};

struct ScheduleStep {
  double lambda = 0.0;
  double radius = 0.0;  // ‖h_k − v‖
  Interval iterate;
  double noise = 0.0;   // rounding bound on the iterate
};

struct ScheduleTrace {
  std::string label;
  std::vector<ScheduleStep> steps;
  Existence verdict = Existence::Inconclusive;
  Interval limit;
  /// Pairwise spread of the chosen Cauchy window (smallest spread plus
  /// rounding noise), and where it ended.
  double spread = 0.0;
  std::size_t limit_index = 0;
  bool diverged = false;
  /// Perturbation shrinking with the step: its limit carries an O(|h_k − v|)
  /// bias, so it may refute a derivative but not pin its value.
  bool linked = false;
};

enum class DerivativeKind { Directional, Gateaux, Frechet, Hadamard };
std::string_view to_string(DerivativeKind k);

struct DerivativeQuery {
  Vec base;
  Vec direction;
  DerivativeKind kind = DerivativeKind::Hadamard;
};

struct DerivativeEstimate {
  Interval value;
  Existence exists = Existence::Inconclusive;
  /// Linearity of the derivative map (Gâteaux/Hadamard/Fréchet only).
  Tri linear = Tri::Unknown;
  /// Steps of the reference (unperturbed) schedule.
  std::vector<ScheduleStep> diagnostics;
  /// Every schedule that was run, reference first.
  std::vector<ScheduleTrace> schedules;
  /// Fréchet only: per-radius residual maxima.
  std::vector<double> residual_trace;
  std::string note;
};

/// Existence and linearity together.
bool is_hadamard_differentiable(const DerivativeEstimate& e);

DerivativeEstimate directional_derivative(const Ivf& f, std::span<const double> x,
                                          std::span<const double> h, const ProbeConfig& cfg);
DerivativeEstimate gateaux_derivative(const Ivf& f, std::span<const double> x,
                                      std::span<const double> h, const ProbeConfig& cfg);
DerivativeEstimate hadamard_derivative(const Ivf& f, std::span<const double> x,
                                       std::span<const double> v, const ProbeConfig& cfg);
DerivativeEstimate estimate(const Ivf& f, const DerivativeQuery& q, const ProbeConfig& cfg);

/// Samples of a candidate linear IVF map.
struct LinearMapSample {
  std::vector<Vec> probe_directions;
  std::vector<Interval> values;
};

/// A direction ↦ interval map; nullopt where the map is undefined.
using IntervalMap = std::function<std::optional<Interval>(std::span<const double>)>;

/// Evaluates `map` on a structured probe set: base directions (the optional
/// `anchor` first), their multiples by −1, 2 and −0.5, pairwise sums and 0.
/// `defined` is false if the map was undefined at any probe.
struct LinearProbe {
  LinearMapSample sample;
  bool defined = true;
  Existence worst = Existence::Exists;
};
LinearProbe probe_linear_map(const std::function<DerivativeEstimate(std::span<const double>)>& map,
                             std::size_t dim, const ProbeConfig& cfg,
                             std::span<const double> anchor = {});
LinearMapSample sample_map(const IntervalMap& map, std::size_t dim, const ProbeConfig& cfg,
                           std::span<const double> anchor = {});

struct LinearityResult {
  Tri verdict = Tri::Unknown;
  std::string witness;
};

/// Homogeneity on every scalar-multiple pair in the sample and, on every
/// sum triple, additivity or non-comparability. Throws PreconditionFailed
/// with fewer than two probes.
LinearityResult is_linear_ivf(const LinearMapSample& sample, const ProbeConfig& cfg);

struct FrechetResult {
  bool differentiable = false;
  std::vector<double> residual_trace;
  /// Residuals along the applicable adversarial schedules.
  std::vector<double> adversarial_trace;
  double min_residual = 0.0;
  std::string note;
};

/// Residual ‖F(x̄+h) ⊖ F(x̄) ⊖ G(h)‖ / ‖h‖ on shrinking spheres. The
/// candidate must pass is_linear_ivf (else NotLinearCandidate).
FrechetResult frechet_check(const Ivf& f, std::span<const double> x, const IntervalMap& candidate,
                            const ProbeConfig& cfg);

/// Fréchet test with the directional-derivative map as candidate. A
/// nonlinear candidate map means no Fréchet derivative exists.
FrechetResult frechet_differentiable(const Ivf& f, std::span<const double> x,
                                     const ProbeConfig& cfg);

enum class Continuity { Continuous, Discontinuous, Inconclusive };
std::string_view to_string(Continuity c);

struct ContinuityResult {
  Continuity verdict = Continuity::Inconclusive;
  /// max over sampled directions of ‖F(x̄ + r_k d) ⊖ F(x̄)‖ per radius.
  std::vector<double> trace;
};

ContinuityResult is_gh_continuous_at(const Ivf& f, std::span<const double> x,
                                     const ProbeConfig& cfg);

struct SampleConfig {
  int samples = 2000;
  double tol = 1e-9;
  /// Half-width used to clip unbounded regions around the origin.
  double radius = 10.0;
  std::uint64_t seed = 20240607;
};

enum class Convexity { Convex, NotConvex, Inconclusive };
std::string_view to_string(Convexity c);

struct ConvexityWitness {
  Vec x1;
  Vec x2;
  double lambda = 0.0;
  std::string endpoint;  // "lower" or "upper"
  double gap = 0.0;      // f(λx₁+(1−λ)x₂) − (λf(x₁)+(1−λ)f(x₂))
};

struct ConvexityResult {
  Convexity verdict = Convexity::Inconclusive;
  std::optional<ConvexityWitness> witness;
  int checked = 0;
};

/// Samples triples and tests the convexity inequality on both endpoint
/// functions.
ConvexityResult is_convex_on(const Ivf& f, const Box& region, const SampleConfig& cfg);

enum class ChainStatus { Agree, Inconclusive, PreconditionFailed };
std::string_view to_string(ChainStatus s);

struct ChainRuleResult {
  ChainStatus status = ChainStatus::Inconclusive;
  Vec y;                      // H(x̄)
  Vec z;                      // H_H(x̄)(v), componentwise
  std::optional<Interval> chain_value;  // F_H(ȳ)(z̄) when it exists
  DerivativeEstimate outer;   // estimate of F_H(ȳ)(z̄)
  DerivativeEstimate direct;  // estimate of (F∘H)_H(x̄)(v)
  std::string note;
};

/// Compares F_H(H(x̄))(H_H(x̄)(v)) with a direct estimate of the composite.
/// A missing inner derivative yields PreconditionFailed; the direct estimate
/// is still reported.
ChainRuleResult chain_rule(const Ivf& f, const VecFn& h, std::size_t inner_dim,
                           std::span<const double> x, std::span<const double> v,
                           const ProbeConfig& cfg);

struct PathCheckResult {
  bool pass = false;
  Vec velocity;  // path′(0)
  DerivativeEstimate along_path;
  DerivativeEstimate hadamard;
  std::string note;
};

/// (F∘path)_D(0)(1) against F_H(path(0))(path′(0)). Throws
/// PreconditionFailed when path′(0) cannot be estimated.
PathCheckResult path_derivative_check(const Ivf& f, const std::function<Vec(double)>& path,
                                      const ProbeConfig& cfg);

struct MaxFamilyResult {
  Interval value;
  std::vector<std::size_t> active_set;
  std::vector<Interval> member_derivatives;
  DerivativeEstimate direct;
  bool agree = false;
};

/// Max rule over the active members, cross-checked against the pointwise
/// max. Throws NotComparableFamily or PreconditionFailed.
MaxFamilyResult max_family_derivative(const std::vector<Ivf>& fs, std::span<const double> x,
                                      std::span<const double> h, const ProbeConfig& cfg);

}  // namespace ivc
