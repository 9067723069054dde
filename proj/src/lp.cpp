#include "ivcalc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ivc::lp {
namespace {

constexpr double kPivotEps = 1e-9;
// Below this a column entry counts as zero when testing for unboundedness.
constexpr double kTinyEps = 1e-14;
constexpr double kCostEps = 1e-11;

// Tableau with the reduced-cost row kept separately. Column `rhs_col` holds
// the right-hand side.
struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // excluding rhs
  std::vector<double> a;  // rows x (cols + 1)
  std::vector<double> cost;  // cols + 1; last entry is -objective
  std::vector<std::size_t> basis;

  double& at(std::size_t r, std::size_t c) { return a[r * (cols + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * (cols + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols); }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols; ++c) at(pr, c) /= p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    const double f = cost[pc];
    if (f != 0.0) {
      for (std::size_t c = 0; c <= cols; ++c) cost[c] -= f * at(pr, c);
      cost[pc] = 0.0;
    }
    basis[pr] = pc;
  }

  // Dantzig pricing with a Harris two-pass ratio test (largest pivot among
  // near-ties); falls back to Bland's rule after a run of degenerate pivots
  // so the method cannot cycle. Columns whose best pivot is tiny are passed
  // over: pivoting on them would amplify rounding across the tableau.
  // Returns false if unbounded.
  template <typename Allowed>
  bool optimize(Allowed allowed) {
    constexpr int kDegenerateRun = 50;
    constexpr double kFeasTol = 1e-12;
    int degenerate = 0;
    std::vector<std::size_t> candidates;
    for (;;) {
      const bool bland = degenerate >= kDegenerateRun;
      candidates.clear();
      for (std::size_t c = 0; c < cols; ++c) {
        if (allowed(c) && cost[c] < -kCostEps) candidates.push_back(c);
      }
      if (bland) {
        std::sort(candidates.begin(), candidates.end());
      } else {
        std::stable_sort(candidates.begin(), candidates.end(),
                         [&](std::size_t x, std::size_t y) { return cost[x] < cost[y]; });
      }
      std::size_t enter = cols, leave = rows;
      for (std::size_t c : candidates) {
        double bound = std::numeric_limits<double>::infinity();
        bool any_positive = false;
        for (std::size_t r = 0; r < rows; ++r) {
          const double v = at(r, c);
          if (v > kTinyEps) any_positive = true;
          if (v > kPivotEps) bound = std::min(bound, (std::max(0.0, at(r, cols)) + kFeasTol) / v);
        }
        if (!any_positive) return false;
        if (bound == std::numeric_limits<double>::infinity()) continue;
        std::size_t best = rows;
        double best_pivot = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
          const double v = at(r, c);
          if (v <= kPivotEps || std::max(0.0, at(r, cols)) / v > bound) continue;
          const bool better = bland ? (best == rows || basis[r] < basis[best]) : v > best_pivot;
          if (better) {
            best = r;
            best_pivot = v;
          }
        }
        enter = c;
        leave = best;
        break;
      }
      if (enter == cols) return true;
      degenerate = at(leave, cols) / at(leave, enter) <= kFeasTol ? degenerate + 1 : 0;
      pivot(leave, enter);
      for (std::size_t r = 0; r < rows; ++r) {
        if (at(r, cols) < 0.0 && at(r, cols) > -kFeasTol) at(r, cols) = 0.0;
      }
    }
  }
};

}  // namespace

Solution solve(const Problem& problem) {
  const std::size_t n = problem.num_vars;
  const std::size_t m = problem.constraints.size();

  // Normalize rows to nonnegative rhs.
  struct Row {
    std::vector<double> coeffs;
    Sense sense;
    double rhs;
  };
  std::vector<Row> rows;
  rows.reserve(m);
  double scale = 1.0;
  for (const auto& c : problem.constraints) {
    Row r{c.coeffs, c.sense, c.rhs};
    r.coeffs.resize(n, 0.0);
    if (r.rhs < 0.0) {
      for (double& v : r.coeffs) v = -v;
      r.rhs = -r.rhs;
      if (r.sense == Sense::LessEqual) {
        r.sense = Sense::GreaterEqual;
      } else if (r.sense == Sense::GreaterEqual) {
        r.sense = Sense::LessEqual;
      }
    }
    scale = std::max(scale, r.rhs);
    rows.push_back(std::move(r));
  }

  std::size_t num_slack = 0;
  std::size_t num_art = 0;
  for (const auto& r : rows) {
    if (r.sense != Sense::Equal) ++num_slack;
    if (r.sense != Sense::LessEqual) ++num_art;
  }
  const std::size_t art_begin = n + num_slack;

  Tableau t;
  t.rows = m;
  t.cols = n + num_slack + num_art;
  t.a.assign(m * (t.cols + 1), 0.0);
  t.cost.assign(t.cols + 1, 0.0);
  t.basis.assign(m, 0);

  std::size_t slack = n;
  std::size_t art = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    const Row& r = rows[i];
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = r.coeffs[j];
    t.rhs(i) = r.rhs;
    if (r.sense == Sense::LessEqual) {
      t.at(i, slack) = 1.0;
      t.basis[i] = slack++;
    } else {
      if (r.sense == Sense::GreaterEqual) t.at(i, slack++) = -1.0;
      t.at(i, art) = 1.0;
      t.basis[i] = art++;
    }
  }

  Solution sol;
  // Phase I: minimize the sum of artificials.
  if (num_art > 0) {
    for (std::size_t c = art_begin; c < t.cols; ++c) t.cost[c] = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis[i] >= art_begin) {
        for (std::size_t c = 0; c <= t.cols; ++c) t.cost[c] -= t.at(i, c);
      }
    }
    t.optimize([](std::size_t) { return true; });
    const double infeas = -t.cost[t.cols];
    if (infeas > 1e-9 * scale) {
      sol.status = Status::Infeasible;
      return sol;
    }
    // Drive remaining artificials out of the basis.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis[i] < art_begin) continue;
      for (std::size_t c = 0; c < art_begin; ++c) {
        if (std::abs(t.at(i, c)) > 1e-9) {
          t.pivot(i, c);
          break;
        }
      }
    }
  }

  // Phase II.
  std::fill(t.cost.begin(), t.cost.end(), 0.0);
  for (std::size_t j = 0; j < n; ++j) t.cost[j] = problem.objective[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = t.basis[i];
    const double cb = b < n ? problem.objective[b] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= t.cols; ++c) t.cost[c] -= cb * t.at(i, c);
  }
  const bool bounded = t.optimize([art_begin](std::size_t c) { return c < art_begin; });
  if (!bounded) {
    sol.status = Status::Unbounded;
    return sol;
  }

  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < n) sol.x[t.basis[i]] = std::max(0.0, t.at(i, t.cols));
  }
  // The tableau is only trusted if its point satisfies the original rows.
  for (const auto& c : problem.constraints) {
    double lhs = 0.0, mag = std::abs(c.rhs);
    for (std::size_t j = 0; j < n && j < c.coeffs.size(); ++j) {
      lhs += c.coeffs[j] * sol.x[j];
      mag += std::abs(c.coeffs[j] * sol.x[j]);
    }
    const double excess = c.sense == Sense::LessEqual      ? lhs - c.rhs
                          : c.sense == Sense::GreaterEqual ? c.rhs - lhs
                                                           : std::abs(lhs - c.rhs);
    if (excess > 1e-9 * (1.0 + mag)) {
      sol.status = Status::NumericalFailure;
      return sol;
    }
  }
  sol.status = Status::Optimal;
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += problem.objective[j] * sol.x[j];
  return sol;
}

}  // namespace ivc::lp
