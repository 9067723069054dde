#pragma once

#include <cstddef>
#include <vector>

// Dense two-phase simplex for the small linear programs that appear in the
// orthant decompositions (interval linear independence, multiplier search,
// separability). Sizes here are tens of variables and a few hundred rows.
namespace ivc::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Constraint {
  std::vector<double> coeffs;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

/// minimize cᵀx subject to the constraints and x >= 0.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<Constraint> constraints;

  explicit Problem(std::size_t n) : num_vars(n), objective(n, 0.0) {}

  void add(std::vector<double> coeffs, Sense sense, double rhs) {
    constraints.push_back({std::move(coeffs), sense, rhs});
  }
};

/// NumericalFailure: the final basis violates the original constraints
/// beyond rounding, so no answer is reported.
enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
};

Solution solve(const Problem& problem);

}  // namespace ivc::lp
