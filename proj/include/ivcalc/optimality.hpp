#pragma once

// Efficiency certification for interval optimization problems
//   min F(x)  s.t.  G_i(x) ⪯ 0,  x ∈ S
// via grid search, first-order conditions on the gH-Hadamard derivative,
// descent/feasible cones, and Fritz John / KKT multiplier search.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ivcalc/calculus.hpp"
#include "ivcalc/interval.hpp"
#include "ivcalc/ivf.hpp"

namespace ivc {

/// S: a box (possibly all of Rⁿ) or a linear subspace span(basis).
class FeasibleRegion {
 public:
  enum class Kind { Box, Subspace };

  FeasibleRegion() = default;
  static FeasibleRegion whole(std::size_t n);
  static FeasibleRegion box(Box b);
  static FeasibleRegion subspace(std::size_t n, std::vector<Vec> basis);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const Box& bounds() const { return box_; }
  const std::vector<Vec>& basis() const { return basis_; }

  bool contains(std::span<const double> x, double tol = 1e-9) const;
  /// Whole space or a subspace.
  bool is_linear_subspace() const;
  bool bounded() const;

 private:
  Kind kind_ = Kind::Box;
  std::size_t dim_ = 0;
  Box box_;
  std::vector<Vec> basis_;
};

struct IOPInstance {
  std::string name;
  Ivf objective;
  std::vector<Ivf> constraints;
  FeasibleRegion region;
  /// A known feasible point, if any.
  std::optional<Vec> witness;

  std::size_t dim() const { return objective.dim(); }
  /// Throws DimensionError when members disagree in dimension.
  void validate() const;
  /// x ∈ S and every G_i(x) ⪯ 0 (upper endpoint ≤ tol).
  bool feasible(std::span<const double> x, double tol = 1e-9) const;
};

struct OptimalityConfig {
  ProbeConfig probe;
  SampleConfig convexity;
  /// Grid points per axis for the efficiency search.
  int grid_points = 401;
  /// Upper bound on total grid points; higher dimensions use coarser axes.
  long max_grid_total = 2'000'000;
  int random_samples = 2000;
  /// Half-width of the search window on unbounded regions.
  double window = 10.0;
  /// Sampled directions / feasible points for the "for all" conditions.
  int directions = 64;
  /// Tolerance for sign tests on estimated derivatives.
  double tau_num = 1e-5;
  double tau_feas = 1e-9;
  double tau_active = 1e-9;
  double tau_slack = 1e-9;
  /// Stationarity residual accepted as zero.
  double tau_stat = 1e-8;
  /// Step for feasible-cone probes.
  double cone_delta = 1e-2;
  /// Read the Fritz John containment as "for some sampled d" instead of
  /// "for every sampled d".
  bool fritz_john_exists_d = false;
  /// Skip the sampled convexity precondition of sufficient_condition and
  /// take convexity as given by the caller.
  bool assume_convex = false;
  std::uint64_t seed = 20240607;
};

enum class Efficiency { Efficient, NotEfficient, Inconclusive };
enum class CheckStatus { Pass, Fail, PreconditionFailed, Inconclusive };
std::string_view to_string(Efficiency e);
std::string_view to_string(CheckStatus s);

struct DirectionRecord {
  Vec direction;
  Interval value;
};

/// Outcome of one "for all sampled v" condition.
struct ConditionResult {
  std::string name;
  CheckStatus status = CheckStatus::Inconclusive;
  int samples = 0;
  std::optional<DirectionRecord> counterexample;
  /// When the hypothesis fails, the condition is still evaluated
  /// and its outcome kept here.
  std::optional<CheckStatus> unconditional;
  std::string note;
};

struct NecessaryConditions {
  ConditionResult not_strict_descent;         // F_H(x̄)(v−x̄) ⊀ 0, S a subspace
  ConditionResult no_better_strict_descent;   // no v with F_H(x̄)(v−x̄) < 0
  ConditionResult zero_containment;           // 0 ∈ F_H(x̄)(v), S a subspace
};

struct EfficiencyCertificate {
  Vec point;
  Efficiency verdict = Efficiency::Inconclusive;
  Interval value;
  std::optional<Vec> witness;
  std::optional<Interval> witness_value;
  long grid_checked = 0;
  long random_checked = 0;
  int grid_per_axis = 0;
  std::string note;
};

/// Throws InfeasiblePoint.
EfficiencyCertificate is_efficient(const IOPInstance& iop, std::span<const double> x,
                                   const OptimalityConfig& cfg);

/// F_H(x̄)(v−x̄) ⊀ 0 for all v (every direction is sampled). Throws
/// PreconditionFailed if F is not convex on S or not Hadamard
/// differentiable at x̄.
ConditionResult sufficient_condition(const IOPInstance& iop, std::span<const double> x,
                                     const OptimalityConfig& cfg);

NecessaryConditions necessary_conditions(const IOPInstance& iop, std::span<const double> x,
                                         const OptimalityConfig& cfg);

/// F_H(x̄)(d) ≺ 0. Throws PreconditionFailed without a Hadamard derivative.
bool descent_cone_member(const Ivf& f, std::span<const double> x, std::span<const double> d,
                         const OptimalityConfig& cfg);
/// x̄ + λd ∈ S for every probed λ ∈ (0, δ]. Throws ZeroDirection.
bool feasible_cone_member(const FeasibleRegion& region, std::span<const double> x,
                          std::span<const double> d, const OptimalityConfig& cfg);
bool feasible_cone_member(const IOPInstance& iop, std::span<const double> x,
                          std::span<const double> d, const OptimalityConfig& cfg);

struct ConeFlags {
  bool descent = false;
  bool feasible = false;
  bool constraint = false;  // G_iH(x̄)(d) ≺ 0 for every active i
};

struct ConeProbe {
  Vec point;
  std::vector<Vec> directions;
  std::vector<ConeFlags> memberships;
};

enum class Intersection { Empty, NonEmpty, Inconclusive };
std::string_view to_string(Intersection i);

struct IntersectionResult {
  Intersection verdict = Intersection::Inconclusive;
  std::optional<Vec> witness;
  ConeProbe probe;
  /// True when the active set is empty and the feasible cone stands in for
  /// the constraint cone.
  bool used_feasible_cone = false;
};

IntersectionResult descent_feasible_intersection(const IOPInstance& iop, std::span<const double> x,
                                                 const OptimalityConfig& cfg);

struct ActiveSet {
  std::vector<std::size_t> strict;   // ‖G_i(x̄)‖ ≤ tol
  std::vector<std::size_t> relaxed;  // |upper G_i(x̄)| ≤ tol
};

/// Throws InfeasiblePoint.
ActiveSet active_set(const IOPInstance& iop, std::span<const double> x, double tol);

struct StationarityRecord {
  Vec direction;
  Interval combined;
  bool contains_zero = false;
  double residual = 0.0;  // distance from 0 to the combined interval
};

struct KKTCertificate {
  bool found = false;
  double u0 = 0.0;
  /// One multiplier per constraint; zero off the active set.
  Vec u;
  std::vector<std::size_t> active;
  std::vector<StationarityRecord> stationarity;
  /// ‖u_i ⊙ G_i(x̄)‖ per constraint.
  std::vector<double> slackness;
  double max_residual = 0.0;
  /// Per sampled direction, whether the active derivative intervals are
  /// linearly independent (KKT only).
  std::vector<bool> independent;
  std::string note;
};

/// Throws PreconditionFailed when F or an active G_i lacks a Hadamard
/// derivative, or an inactive G_i is not gH-continuous.
KKTCertificate fritz_john_check(const IOPInstance& iop, std::span<const double> x,
                                const OptimalityConfig& cfg);
/// Throws LinearIndependenceViolated when the active derivative intervals
/// are dependent at every sampled direction.
KKTCertificate kkt_necessary_check(const IOPInstance& iop, std::span<const double> x,
                                   const OptimalityConfig& cfg);

struct KKTSufficientResult {
  ConditionResult condition;
  std::optional<EfficiencyCertificate> cross_check;
  /// Pass must never coexist with a NotEfficient grid verdict.
  bool consistent = true;
};

/// Throws PreconditionFailed (nonconvex, nondifferentiable, negative u) or
/// SlacknessViolated.
KKTSufficientResult kkt_sufficient_check(const IOPInstance& iop, std::span<const double> x,
                                         std::span<const double> u, const OptimalityConfig& cfg);

}  // namespace ivc
