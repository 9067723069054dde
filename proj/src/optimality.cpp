#include "ivcalc/optimality.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "ivcalc/errors.hpp"
#include "ivcalc/kernels.hpp"
#include "ivcalc/lp.hpp"

namespace ivc {

std::string_view to_string(Efficiency e) {
  switch (e) {
    case Efficiency::Efficient:
      return "Efficient";
    case Efficiency::NotEfficient:
      return "NotEfficient";
    case Efficiency::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "Pass";
    case CheckStatus::Fail:
      return "Fail";
    case CheckStatus::PreconditionFailed:
      return "PreconditionFailed";
    case CheckStatus::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(Intersection i) {
  switch (i) {
    case Intersection::Empty:
      return "Empty";
    case Intersection::NonEmpty:
      return "NonEmpty";
    case Intersection::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Regions.

FeasibleRegion FeasibleRegion::whole(std::size_t n) { return box(Box::whole(n)); }

FeasibleRegion FeasibleRegion::box(Box b) {
  FeasibleRegion r;
  r.kind_ = Kind::Box;
  r.dim_ = b.dim();
  r.box_ = std::move(b);
  return r;
}

FeasibleRegion FeasibleRegion::subspace(std::size_t n, std::vector<Vec> basis) {
  if (basis.empty()) throw DimensionError("subspace basis must be nonempty");
  for (const Vec& b : basis) {
    if (b.size() != n) throw DimensionError("basis vector dimension mismatch");
  }
  FeasibleRegion r;
  r.kind_ = Kind::Subspace;
  r.dim_ = n;
  r.box_ = Box::whole(n);
  r.basis_ = std::move(basis);
  return r;
}

namespace {

Eigen::MatrixXd basis_matrix(const std::vector<Vec>& basis, std::size_t n) {
  Eigen::MatrixXd b(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = basis[j][i];
  }
  return b;
}

// Least-squares coordinates of x in the basis, and the residual norm.
std::pair<Vec, double> coordinates(const std::vector<Vec>& basis, std::span<const double> x) {
  const Eigen::MatrixXd b = basis_matrix(basis, x.size());
  Eigen::VectorXd xv(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) xv(static_cast<Eigen::Index>(i)) = x[i];
  const Eigen::VectorXd c = b.colPivHouseholderQr().solve(xv);
  const double resid = (b * c - xv).norm();
  return {Vec(c.data(), c.data() + c.size()), resid};
}

Vec combine_basis(const std::vector<Vec>& basis, std::span<const double> c) {
  Vec x(basis.front().size(), 0.0);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += c[j] * basis[j][i];
  }
  return x;
}

}  // namespace

bool FeasibleRegion::contains(std::span<const double> x, double tol) const {
  if (x.size() != dim_) throw DimensionError("point dimension does not match region");
  if (kind_ == Kind::Box) return box_.contains(x, tol);
  return coordinates(basis_, x).second <= tol * (1.0 + euclidean_norm(x));
}

bool FeasibleRegion::is_linear_subspace() const {
  return kind_ == Kind::Subspace || box_.is_whole_space();
}

bool FeasibleRegion::bounded() const { return kind_ == Kind::Box && box_.bounded(); }

void IOPInstance::validate() const {
  const std::size_t n = objective.dim();
  if (n == 0) throw DimensionError("objective is not set");
  if (region.dim() != n) throw DimensionError("region dimension does not match objective");
  for (const Ivf& g : constraints) {
    if (g.dim() != n) throw DimensionError("constraint dimension does not match objective");
  }
  if (witness && witness->size() != n) throw DimensionError("witness dimension mismatch");
}

bool IOPInstance::feasible(std::span<const double> x, double tol) const {
  if (!region.contains(x, tol)) return false;
  if (!objective.in_domain(x)) return false;
  for (const Ivf& g : constraints) {
    if (!g.in_domain(x) || g.eval(x).hi() > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

void require_feasible(const IOPInstance& iop, std::span<const double> x,
                      const OptimalityConfig& cfg) {
  iop.validate();
  if (x.size() != iop.dim()) throw DimensionError("point dimension does not match problem");
  if (!iop.feasible(x, cfg.tau_feas)) throw InfeasiblePoint("point is not feasible");
}

// Search box: region bounds with infinite sides replaced by x̄ ± R, or the
// coordinate box of a subspace.
struct SearchSpace {
  Box box;
  bool windowed = false;
  bool subspace = false;
};

SearchSpace search_space(const IOPInstance& iop, std::span<const double> x,
                         const OptimalityConfig& cfg) {
  SearchSpace s;
  if (iop.region.kind() == FeasibleRegion::Kind::Subspace) {
    const Vec c = coordinates(iop.region.basis(), x).first;
    s.subspace = true;
    s.windowed = true;
    s.box = Box{Vec(c.size()), Vec(c.size())};
    for (std::size_t j = 0; j < c.size(); ++j) {
      s.box.lo[j] = c[j] - cfg.window;
      s.box.hi[j] = c[j] + cfg.window;
    }
    return s;
  }
  s.box = iop.region.bounds();
  for (std::size_t i = 0; i < s.box.dim(); ++i) {
    if (!std::isfinite(s.box.lo[i])) {
      s.box.lo[i] = x[i] - cfg.window;
      s.windowed = true;
    }
    if (!std::isfinite(s.box.hi[i])) {
      s.box.hi[i] = x[i] + cfg.window;
      s.windowed = true;
    }
  }
  return s;
}

Vec to_point(const IOPInstance& iop, const SearchSpace& s, Vec coords) {
  return s.subspace ? combine_basis(iop.region.basis(), coords) : coords;
}

int axis_points(const OptimalityConfig& cfg, std::size_t axes) {
  const double cap = std::pow(static_cast<double>(cfg.max_grid_total), 1.0 / static_cast<double>(axes));
  return std::max(2, std::min(cfg.grid_points, static_cast<int>(std::floor(cap))));
}

// Batches candidate points and screens F(y) ≺ F(x̄) with the SIMD kernel.
class DominanceScreen {
 public:
  DominanceScreen(const IOPInstance& iop, Interval fx, double tol)
      : iop_(iop), fx_(fx), tol_(tol) {}

  void offer(Vec y) {
    if (!iop_.feasible(y)) return;
    values_.push_back(iop_.objective.eval(y));
    points_.push_back(std::move(y));
    ++checked_;
    if (points_.size() >= 4096) flush();
  }

  void flush() {
    const auto flags = simd::dominance_flags(values_, fx_, tol_);
    for (std::size_t i = 0; i < flags.size(); ++i) {
      if (!(flags[i] & simd::kAStrictlyDominatesB)) continue;
      const Interval v = values_[i];
      const double score = v.lo() + v.hi();
      if (!best_ || score < best_score_) {
        best_ = points_[i];
        best_value_ = v;
        best_score_ = score;
      }
    }
    values_ = simd::IntervalArray();
    points_.clear();
  }

  long checked() const { return checked_; }
  const std::optional<Vec>& best() const { return best_; }
  Interval best_value() const { return best_value_; }

 private:
  const IOPInstance& iop_;
  Interval fx_;
  double tol_;
  simd::IntervalArray values_;
  std::vector<Vec> points_;
  long checked_ = 0;
  std::optional<Vec> best_;
  Interval best_value_;
  double best_score_ = 0.0;
};

}  // namespace

EfficiencyCertificate is_efficient(const IOPInstance& iop, std::span<const double> x,
                                   const OptimalityConfig& cfg) {
  require_feasible(iop, x, cfg);
  EfficiencyCertificate cert;
  cert.point.assign(x.begin(), x.end());
  cert.value = iop.objective.eval(x);

  const SearchSpace space = search_space(iop, x, cfg);
  const std::size_t axes = space.box.dim();
  const int g = axis_points(cfg, axes);
  cert.grid_per_axis = g;
  const double tol = cfg.probe.tau_cmp * (1.0 + norm(cert.value));

  DominanceScreen screen(iop, cert.value, tol);
  std::vector<int> idx(axes, 0);
  for (;;) {
    Vec c(axes);
    for (std::size_t j = 0; j < axes; ++j) {
      const double lo = space.box.lo[j];
      const double hi = space.box.hi[j];
      c[j] = idx[j] == g - 1 ? hi : lo + (hi - lo) * static_cast<double>(idx[j]) / (g - 1);
    }
    screen.offer(to_point(iop, space, std::move(c)));
    std::size_t j = 0;
    while (j < axes && ++idx[j] == g) idx[j++] = 0;
    if (j == axes) break;
  }
  screen.flush();
  cert.grid_checked = screen.checked();

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < cfg.random_samples; ++s) {
    Vec c(axes);
    for (std::size_t j = 0; j < axes; ++j) {
      c[j] = space.box.lo[j] + unit(rng) * (space.box.hi[j] - space.box.lo[j]);
    }
    screen.offer(to_point(iop, space, std::move(c)));
  }
  screen.flush();
  cert.random_checked = screen.checked() - cert.grid_checked;

  std::ostringstream note;
  note << "grid " << g << " per axis";
  if (space.windowed) note << ", unbounded region searched within ±" << cfg.window;
  if (screen.best()) {
    cert.verdict = Efficiency::NotEfficient;
    cert.witness = screen.best();
    cert.witness_value = screen.best_value();
  } else {
    cert.verdict = Efficiency::Efficient;
  }
  cert.note = note.str();
  return cert;
}

// ---------------------------------------------------------------------------
// Derivative access with a one-time differentiability certificate.

namespace {

class DerivativeField {
 public:
  DerivativeField(const Ivf& f, std::span<const double> x, const OptimalityConfig& cfg,
                  std::string name)
      : f_(f), x_(x.begin(), x.end()), cfg_(cfg.probe), name_(std::move(name)) {
    Vec anchor(x.size(), 0.0);
    anchor[0] = 1.0;
    const DerivativeEstimate e = hadamard_derivative(f_, x_, anchor, cfg_);
    if (!is_hadamard_differentiable(e)) {
      throw PreconditionFailed(name_ + " is not Hadamard differentiable at the point" +
                               (e.note.empty() ? "" : ": " + e.note));
    }
    cfg_.certify_linearity = false;
  }

  Interval at(std::span<const double> d) const {
    if (euclidean_norm(d) == 0.0) return Interval();
    const DerivativeEstimate e = hadamard_derivative(f_, x_, d, cfg_);
    if (e.exists != Existence::Exists) {
      throw PreconditionFailed(name_ + " has no Hadamard derivative in a sampled direction");
    }
    return e.value;
  }

 private:
  const Ivf& f_;
  Vec x_;
  ProbeConfig cfg_;
  std::string name_;
};

Vec normalized(std::span<const double> d) { return scaled(1.0 / euclidean_norm(d), d); }

// Unit directions v − x̄ for sampled feasible v.
std::vector<Vec> feasible_directions(const IOPInstance& iop, std::span<const double> x,
                                     const OptimalityConfig& cfg) {
  const SearchSpace space = search_space(iop, x, cfg);
  const std::size_t axes = space.box.dim();
  std::vector<Vec> candidates;
  if (axes <= 4) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << axes); ++mask) {
      Vec c(axes);
      for (std::size_t j = 0; j < axes; ++j) c[j] = (mask >> j & 1) ? space.box.hi[j] : space.box.lo[j];
      candidates.push_back(std::move(c));
    }
  }
  std::mt19937_64 rng(cfg.seed ^ 0xfeedULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < cfg.directions; ++s) {
    Vec c(axes);
    for (std::size_t j = 0; j < axes; ++j) {
      c[j] = space.box.lo[j] + unit(rng) * (space.box.hi[j] - space.box.lo[j]);
    }
    candidates.push_back(std::move(c));
  }
  std::vector<Vec> out;
  for (Vec& c : candidates) {
    const Vec v = to_point(iop, space, std::move(c));
    if (!iop.feasible(v)) continue;
    const Vec d = axpy(-1.0, x, v);
    if (euclidean_norm(d) < 1e-12) continue;
    out.push_back(normalized(d));
  }
  return out;
}

std::vector<Vec> all_directions(std::size_t n, const OptimalityConfig& cfg) {
  return unit_directions(n, static_cast<std::size_t>(std::max(cfg.directions, 0)), cfg.seed);
}

Box convexity_box(const IOPInstance& iop, std::span<const double> x, const OptimalityConfig& cfg) {
  if (iop.region.kind() == FeasibleRegion::Kind::Box) return search_space(iop, x, cfg).box;
  Box b = Box::whole(x.size());
  return b.clipped(x, cfg.window);
}

bool strictly_negative(const Interval& a, double tol) {
  return strictly_dominates(a, Interval(), tol);
}

ConditionResult evaluate_all(std::string name, const std::vector<Vec>& dirs,
                             const DerivativeField& field,
                             const std::function<bool(const Interval&)>& holds) {
  ConditionResult r;
  r.name = std::move(name);
  for (const Vec& d : dirs) {
    const Interval v = field.at(d);
    ++r.samples;
    if (!holds(v)) {
      r.status = CheckStatus::Fail;
      r.counterexample = DirectionRecord{d, v};
      return r;
    }
  }
  r.status = r.samples > 0 ? CheckStatus::Pass : CheckStatus::Inconclusive;
  if (r.samples > 0) r.note = "sampled-Pass over " + std::to_string(r.samples) + " directions";
  return r;
}

}  // namespace

ConditionResult sufficient_condition(const IOPInstance& iop, std::span<const double> x,
                                     const OptimalityConfig& cfg) {
  require_feasible(iop, x, cfg);
  if (!cfg.assume_convex &&
      is_convex_on(iop.objective, convexity_box(iop, x, cfg), cfg.convexity).verdict !=
          Convexity::Convex) {
    throw PreconditionFailed("objective is not convex on the region");
  }
  const DerivativeField field(iop.objective, x, cfg, "objective");
  return evaluate_all("sufficient", all_directions(iop.dim(), cfg), field,
                      [&](const Interval& v) { return !strictly_negative(v, cfg.tau_num); });
}

NecessaryConditions necessary_conditions(const IOPInstance& iop, std::span<const double> x,
                                         const OptimalityConfig& cfg) {
  require_feasible(iop, x, cfg);
  NecessaryConditions out;
  out.not_strict_descent.name = "not_strict_descent";
  out.no_better_strict_descent.name = "no_better_strict_descent";
  out.zero_containment.name = "zero_containment";
  std::optional<DerivativeField> field;
  try {
    field.emplace(iop.objective, x, cfg, "objective");
  } catch (const PreconditionFailed& e) {
    for (ConditionResult* r :
         {&out.not_strict_descent, &out.no_better_strict_descent, &out.zero_containment}) {
      r->status = CheckStatus::PreconditionFailed;
      r->note = e.what();
    }
    return out;
  }
  const auto dirs = feasible_directions(iop, x, cfg);
  const double tol = cfg.tau_num;

  auto gated = [&](ConditionResult r) {
    if (iop.region.is_linear_subspace()) return r;
    ConditionResult g = r;
    g.unconditional = r.status;
    g.status = CheckStatus::PreconditionFailed;
    g.note = "region is not a linear subspace; unconditional outcome " +
             std::string(to_string(r.status));
    return g;
  };

  out.not_strict_descent = gated(evaluate_all("not_strict_descent", dirs, *field, [&](const Interval& v) {
    return !strictly_negative(v, tol);
  }));
  out.no_better_strict_descent =
      evaluate_all("no_better_strict_descent", dirs, *field, [&](const Interval& v) {
        return !better_strictly_dominates(v, Interval(), tol);
      });
  // Thm 4.4 quantifies over v itself; on a subspace the unit directions of
  // sampled v − x̄ span the same set of rays.
  out.zero_containment = gated(evaluate_all("zero_containment", dirs, *field, [&](const Interval& v) {
    return contains_zero(v, tol);
  }));
  return out;
}

// ---------------------------------------------------------------------------
// Cones.

bool descent_cone_member(const Ivf& f, std::span<const double> x, std::span<const double> d,
                         const OptimalityConfig& cfg) {
  if (euclidean_norm(d) == 0.0) return false;
  const DerivativeEstimate e = hadamard_derivative(f, x, d, cfg.probe);
  if (!is_hadamard_differentiable(e)) {
    throw PreconditionFailed("no Hadamard derivative at the point");
  }
  return strictly_negative(e.value, cfg.tau_num * (1.0 + euclidean_norm(d)));
}

namespace {

template <typename Inside>
bool ray_feasible(std::span<const double> x, std::span<const double> d,
                  const OptimalityConfig& cfg, Inside inside) {
  if (euclidean_norm(d) == 0.0) throw ZeroDirection();
  for (int k = 0; k < cfg.probe.steps; ++k) {
    const double lambda = cfg.cone_delta * std::pow(cfg.probe.rho, k);
    if (!inside(axpy(lambda, d, x))) return false;
  }
  return true;
}

}  // namespace

bool feasible_cone_member(const FeasibleRegion& region, std::span<const double> x,
                          std::span<const double> d, const OptimalityConfig& cfg) {
  return ray_feasible(x, d, cfg, [&](const Vec& p) { return region.contains(p, 0.0); });
}

bool feasible_cone_member(const IOPInstance& iop, std::span<const double> x,
                          std::span<const double> d, const OptimalityConfig& cfg) {
  return ray_feasible(x, d, cfg, [&](const Vec& p) { return iop.feasible(p, 0.0); });
}

ActiveSet active_set(const IOPInstance& iop, std::span<const double> x, double tol) {
  iop.validate();
  if (!iop.feasible(x, tol)) throw InfeasiblePoint("point is not feasible");
  ActiveSet a;
  for (std::size_t i = 0; i < iop.constraints.size(); ++i) {
    const Interval g = iop.constraints[i].eval(x);
    if (norm(g) <= tol) a.strict.push_back(i);
    if (std::abs(g.hi()) <= tol) a.relaxed.push_back(i);
  }
  return a;
}

IntersectionResult descent_feasible_intersection(const IOPInstance& iop, std::span<const double> x,
                                                 const OptimalityConfig& cfg) {
  require_feasible(iop, x, cfg);
  IntersectionResult out;
  out.probe.point.assign(x.begin(), x.end());
  const ActiveSet act = active_set(iop, x, cfg.tau_active);
  const DerivativeField f_field(iop.objective, x, cfg, "objective");
  std::vector<DerivativeField> g_fields;
  for (std::size_t i : act.strict) {
    g_fields.emplace_back(iop.constraints[i], x, cfg, "constraint " + std::to_string(i));
  }
  out.used_feasible_cone = act.strict.empty();
  for (const Vec& d : all_directions(iop.dim(), cfg)) {
    ConeFlags flags;
    flags.descent = strictly_negative(f_field.at(d), cfg.tau_num);
    flags.feasible = feasible_cone_member(iop, x, d, cfg);
    flags.constraint = !act.strict.empty();
    for (const DerivativeField& g : g_fields) {
      if (!strictly_negative(g.at(d), cfg.tau_num)) flags.constraint = false;
    }
    out.probe.directions.push_back(d);
    out.probe.memberships.push_back(flags);
    const bool second = out.used_feasible_cone ? flags.feasible : flags.constraint;
    if (flags.descent && second && !out.witness) out.witness = d;
  }
  if (out.probe.directions.empty()) {
    out.verdict = Intersection::Inconclusive;
  } else {
    out.verdict = out.witness ? Intersection::NonEmpty : Intersection::Empty;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Multipliers.

namespace {

struct DerivativeTable {
  std::vector<Vec> directions;
  // rows[k][j]: derivative of member j (0 = objective, then active
  // constraints) in direction k.
  std::vector<std::vector<Interval>> rows;
};

DerivativeTable derivative_table(const IOPInstance& iop, std::span<const double> x,
                                 const std::vector<std::size_t>& active,
                                 const OptimalityConfig& cfg) {
  std::vector<DerivativeField> fields;
  fields.emplace_back(iop.objective, x, cfg, "objective");
  for (std::size_t i : active) {
    fields.emplace_back(iop.constraints[i], x, cfg, "constraint " + std::to_string(i));
  }
  for (std::size_t i = 0; i < iop.constraints.size(); ++i) {
    if (std::find(active.begin(), active.end(), i) != active.end()) continue;
    const ContinuityResult c = is_gh_continuous_at(iop.constraints[i], x, cfg.probe);
    if (c.verdict != Continuity::Continuous) {
      throw PreconditionFailed("inactive constraint " + std::to_string(i) +
                               " is not gH-continuous at the point");
    }
  }
  DerivativeTable t;
  t.directions = all_directions(iop.dim(), cfg);
  for (const Vec& d : t.directions) {
    std::vector<Interval> row;
    for (const DerivativeField& f : fields) row.push_back(f.at(d));
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct MultiplierSolve {
  bool solved = false;
  Vec u;  // u_0 then active multipliers
};

// min r s.t. Σu = 1, u ≥ 0, Σ u_j lo_j(d) ≤ r and Σ u_j hi_j(d) ≥ −r for the
// given rows; then the largest u_0 within the optimal residual.
MultiplierSolve solve_multipliers(const std::vector<std::vector<Interval>>& rows, std::size_t p) {
  const std::size_t nv = p + 1;
  lp::Problem prob(nv + 1);
  std::vector<double> simplex(nv + 1, 1.0);
  simplex[nv] = 0.0;
  prob.add(simplex, lp::Sense::Equal, 1.0);
  for (const auto& row : rows) {
    std::vector<double> lo(nv + 1), hi(nv + 1);
    for (std::size_t j = 0; j < nv; ++j) {
      lo[j] = row[j].lo();
      hi[j] = row[j].hi();
    }
    lo[nv] = -1.0;
    hi[nv] = 1.0;
    prob.add(lo, lp::Sense::LessEqual, 0.0);
    prob.add(hi, lp::Sense::GreaterEqual, 0.0);
  }
  prob.objective[nv] = 1.0;
  const lp::Solution first = lp::solve(prob);
  MultiplierSolve out;
  if (first.status != lp::Status::Optimal) return out;
  out.solved = true;
  out.u.assign(first.x.begin(), first.x.begin() + static_cast<std::ptrdiff_t>(nv));

  lp::Problem second = prob;
  std::vector<double> cap(nv + 1, 0.0);
  cap[nv] = 1.0;
  second.add(cap, lp::Sense::LessEqual, first.objective + 1e-12 + 1e-9 * first.objective);
  std::fill(second.objective.begin(), second.objective.end(), 0.0);
  second.objective[0] = -1.0;
  const lp::Solution refined = lp::solve(second);
  if (refined.status == lp::Status::Optimal) {
    out.u.assign(refined.x.begin(), refined.x.begin() + static_cast<std::ptrdiff_t>(nv));
  }
  return out;
}

StationarityRecord stationarity(const Vec& d, const std::vector<Interval>& row, const Vec& u) {
  Interval sum;
  for (std::size_t j = 0; j < row.size(); ++j) sum = add(sum, scalar_mul(u[j], row[j]));
  StationarityRecord r;
  r.direction = d;
  r.combined = sum;
  r.residual = std::max({0.0, sum.lo(), -sum.hi()});
  r.contains_zero = contains_zero(sum);
  return r;
}

void fill_certificate(KKTCertificate& cert, const IOPInstance& iop, std::span<const double> x,
                      const DerivativeTable& t, const std::vector<std::size_t>& rows_used,
                      const Vec& u_active, const OptimalityConfig& cfg) {
  cert.u0 = u_active[0];
  cert.u.assign(iop.constraints.size(), 0.0);
  for (std::size_t k = 0; k < cert.active.size(); ++k) cert.u[cert.active[k]] = u_active[k + 1];
  cert.stationarity.clear();
  cert.max_residual = 0.0;
  for (std::size_t k : rows_used) {
    cert.stationarity.push_back(stationarity(t.directions[k], t.rows[k], u_active));
    cert.max_residual = std::max(cert.max_residual, cert.stationarity.back().residual);
  }
  cert.slackness.clear();
  for (std::size_t i = 0; i < iop.constraints.size(); ++i) {
    cert.slackness.push_back(std::abs(cert.u[i]) * norm(iop.constraints[i].eval(x)));
  }
  cert.found = cert.max_residual <= cfg.tau_stat;
}

KKTCertificate fritz_john_impl(const IOPInstance& iop, std::span<const double> x,
                               const OptimalityConfig& cfg, DerivativeTable* table_out) {
  require_feasible(iop, x, cfg);
  KKTCertificate cert;
  cert.active = active_set(iop, x, cfg.tau_active).strict;
  DerivativeTable t = derivative_table(iop, x, cert.active, cfg);
  const std::size_t p = cert.active.size();

  if (t.directions.empty()) {
    cert.note = "no sampled directions";
  } else if (!cfg.fritz_john_exists_d) {
    const MultiplierSolve s = solve_multipliers(t.rows, p);
    std::vector<std::size_t> all(t.rows.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    if (s.solved) fill_certificate(cert, iop, x, t, all, s.u, cfg);
    if (!cert.found) cert.note = "no multipliers give zero containment in every sampled direction";
  } else {
    for (std::size_t k = 0; k < t.rows.size() && !cert.found; ++k) {
      const MultiplierSolve s = solve_multipliers({t.rows[k]}, p);
      if (s.solved) fill_certificate(cert, iop, x, t, {k}, s.u, cfg);
    }
    if (!cert.found) cert.note = "no sampled direction admits multipliers";
  }
  if (table_out) *table_out = std::move(t);
  return cert;
}

}  // namespace

KKTCertificate fritz_john_check(const IOPInstance& iop, std::span<const double> x,
                                const OptimalityConfig& cfg) {
  return fritz_john_impl(iop, x, cfg, nullptr);
}

KKTCertificate kkt_necessary_check(const IOPInstance& iop, std::span<const double> x,
                                   const OptimalityConfig& cfg) {
  DerivativeTable t;
  KKTCertificate cert = fritz_john_impl(iop, x, cfg, &t);

  bool any_independent = cert.active.empty();
  for (const auto& row : t.rows) {
    bool ind = true;
    if (!cert.active.empty()) {
      const std::vector<Interval> g(row.begin() + 1, row.end());
      ind = linearly_independent(g, cfg.tau_active).independent;
    }
    cert.independent.push_back(ind);
    any_independent = any_independent || ind;
  }
  if (!any_independent) {
    throw LinearIndependenceViolated(
        "active constraint derivatives are linearly dependent in every sampled direction");
  }
  if (!cert.found) return cert;
  if (!(cert.u0 > 1e-12)) {
    cert.found = false;
    cert.note = "Fritz John multiplier u0 vanished";
    return cert;
  }
  Vec u_active{1.0};
  for (std::size_t i : cert.active) u_active.push_back(cert.u[i] / cert.u0);
  std::vector<std::size_t> rows_used;
  if (cfg.fritz_john_exists_d) {
    for (std::size_t k = 0; k < t.directions.size(); ++k) {
      if (t.directions[k] == cert.stationarity.front().direction) rows_used.push_back(k);
    }
  } else {
    for (std::size_t k = 0; k < t.rows.size(); ++k) rows_used.push_back(k);
  }
  OptimalityConfig scaled_cfg = cfg;
  // Renormalising by 1/u0 scales the residual by the same factor.
  scaled_cfg.tau_stat = cfg.tau_stat / cert.u0;
  fill_certificate(cert, iop, x, t, rows_used, u_active, scaled_cfg);
  return cert;
}

KKTSufficientResult kkt_sufficient_check(const IOPInstance& iop, std::span<const double> x,
                                         std::span<const double> u, const OptimalityConfig& cfg) {
  require_feasible(iop, x, cfg);
  if (u.size() != iop.constraints.size()) throw DimensionError("one multiplier per constraint");
  for (double ui : u) {
    if (!(ui >= 0.0)) throw PreconditionFailed("multipliers must be nonnegative");
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double slack = u[i] * norm(iop.constraints[i].eval(x));
    if (slack > cfg.tau_slack) {
      throw SlacknessViolated("u_" + std::to_string(i) + " ⊙ G_" + std::to_string(i) +
                              "(x) is not the zero interval");
    }
  }
  const Box cbox = convexity_box(iop, x, cfg);
  if (is_convex_on(iop.objective, cbox, cfg.convexity).verdict != Convexity::Convex) {
    throw PreconditionFailed("objective is not convex");
  }
  for (std::size_t i = 0; i < iop.constraints.size(); ++i) {
    if (is_convex_on(iop.constraints[i], cbox, cfg.convexity).verdict != Convexity::Convex) {
      throw PreconditionFailed("constraint " + std::to_string(i) + " is not convex");
    }
  }
  const DerivativeField f_field(iop.objective, x, cfg, "objective");
  std::vector<DerivativeField> g_fields;
  for (std::size_t i = 0; i < iop.constraints.size(); ++i) {
    g_fields.emplace_back(iop.constraints[i], x, cfg, "constraint " + std::to_string(i));
  }

  KKTSufficientResult out;
  ConditionResult& r = out.condition;
  r.name = "kkt_sufficient";
  for (const Vec& d : feasible_directions(iop, x, cfg)) {
    Interval combined = f_field.at(d);
    for (std::size_t i = 0; i < g_fields.size(); ++i) {
      if (u[i] != 0.0) combined = add(combined, scalar_mul(u[i], g_fields[i].at(d)));
    }
    ++r.samples;
    if (strictly_negative(combined, cfg.tau_num)) {
      r.status = CheckStatus::Fail;
      r.counterexample = DirectionRecord{d, combined};
      break;
    }
  }
  if (r.status != CheckStatus::Fail) {
    r.status = r.samples > 0 ? CheckStatus::Pass : CheckStatus::Inconclusive;
    r.note = "sampled-Pass over " + std::to_string(r.samples) + " feasible directions";
  }
  out.cross_check = is_efficient(iop, x, cfg);
  out.consistent =
      !(r.status == CheckStatus::Pass && out.cross_check->verdict == Efficiency::NotEfficient);
  return out;
}

}  // namespace ivc
