#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <random>

#include "ivcalc/lp.hpp"

using namespace ivc;

namespace {

double max_violation(const lp::Problem& p, const std::vector<double>& x) {
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, -v);
  for (const lp::Constraint& c : p.constraints) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coeffs[j] * x[j];
    const double e = c.sense == lp::Sense::LessEqual      ? lhs - c.rhs
                     : c.sense == lp::Sense::GreaterEqual ? c.rhs - lhs
                                                          : std::abs(lhs - c.rhs);
    worst = std::max(worst, e);
  }
  return worst;
}

// Oracle: best objective over all vertices of {Ax ≤ b, x ≥ 0} in 3 variables.
double vertex_enumeration(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                          const std::vector<double>& c) {
  std::vector<std::vector<double>> rows = a;
  std::vector<double> rhs = b;
  for (int j = 0; j < 3; ++j) {
    std::vector<double> e(3, 0.0);
    e[j] = -1.0;
    rows.push_back(e);
    rhs.push_back(0.0);
  }
  double best = INFINITY;
  const std::size_t m = rows.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        Eigen::Matrix3d mat;
        Eigen::Vector3d r;
        for (int col = 0; col < 3; ++col) {
          mat(0, col) = rows[i][col];
          mat(1, col) = rows[j][col];
          mat(2, col) = rows[k][col];
        }
        r << rhs[i], rhs[j], rhs[k];
        const Eigen::FullPivLU<Eigen::Matrix3d> lu(mat);
        if (lu.rank() < 3) continue;
        const Eigen::Vector3d x = lu.solve(r);
        bool feasible = true;
        for (std::size_t q = 0; q < m && feasible; ++q) {
          double lhs = 0.0;
          for (int col = 0; col < 3; ++col) lhs += rows[q][col] * x(col);
          feasible = lhs <= rhs[q] + 1e-9;
        }
        if (feasible) best = std::min(best, c[0] * x(0) + c[1] * x(1) + c[2] * x(2));
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("small programs") {
  lp::Problem p(2);
  p.objective = {-1.0, -1.0};
  p.add({1.0, 2.0}, lp::Sense::LessEqual, 4.0);
  p.add({3.0, 1.0}, lp::Sense::LessEqual, 6.0);
  const lp::Solution s = lp::solve(p);
  REQUIRE(s.status == lp::Status::Optimal);
  CHECK(s.x[0] == doctest::Approx(1.6));
  CHECK(s.x[1] == doctest::Approx(1.2));
  CHECK(s.objective == doctest::Approx(-2.8));

  lp::Problem eq(2);
  eq.objective = {1.0, 2.0};
  eq.add({1.0, 1.0}, lp::Sense::Equal, 1.0);
  eq.add({1.0, -1.0}, lp::Sense::GreaterEqual, -0.5);
  const lp::Solution e = lp::solve(eq);
  REQUIRE(e.status == lp::Status::Optimal);
  CHECK(e.x[0] == doctest::Approx(1.0));
  CHECK(e.x[1] == doctest::Approx(0.0));
}

TEST_CASE("infeasible and unbounded programs") {
  lp::Problem inf(1);
  inf.add({1.0}, lp::Sense::GreaterEqual, 2.0);
  inf.add({1.0}, lp::Sense::LessEqual, 1.0);
  CHECK(lp::solve(inf).status == lp::Status::Infeasible);

  lp::Problem unb(2);
  unb.objective = {-1.0, 0.0};
  unb.add({1.0, -1.0}, lp::Sense::LessEqual, 1.0);
  CHECK(lp::solve(unb).status == lp::Status::Unbounded);
}

TEST_CASE("oracle: random bounded programs match vertex enumeration") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (int i = 0; i < 5; ++i) {
      a.push_back({u(rng), u(rng), u(rng)});
      b.push_back(1.0 + std::abs(u(rng)));
    }
    // A box keeps every program bounded.
    for (int j = 0; j < 3; ++j) {
      std::vector<double> e(3, 0.0);
      e[j] = 1.0;
      a.push_back(e);
      b.push_back(3.0);
    }
    const std::vector<double> c{u(rng), u(rng), u(rng)};
    lp::Problem p(3);
    p.objective = c;
    for (std::size_t i = 0; i < a.size(); ++i) p.add(a[i], lp::Sense::LessEqual, b[i]);
    const lp::Solution s = lp::solve(p);
    REQUIRE(s.status == lp::Status::Optimal);
    CHECK(max_violation(p, s.x) <= 1e-9);
    CHECK(s.objective == doctest::Approx(vertex_enumeration(a, b, c)).epsilon(1e-9));
  }
}

TEST_CASE("regression: degenerate multiplier program stays feasible") {
  // A multiplier search from a constrained 2D instance: many nearly parallel
  // rows whose degenerate pivots once drove the tableau off the feasible set.
  std::ifstream in(IVCALC_TEST_DATA "/multiplier_lp.txt");
  REQUIRE(in);
  std::size_t n = 0, m = 0;
  in >> n;
  lp::Problem p(n);
  for (double& c : p.objective) in >> c;
  in >> m;
  for (std::size_t i = 0; i < m; ++i) {
    int sense = 0;
    double rhs = 0.0;
    in >> sense >> rhs;
    std::vector<double> coeffs(n);
    for (double& v : coeffs) in >> v;
    p.add(coeffs, static_cast<lp::Sense>(sense), rhs);
  }
  const lp::Solution first = lp::solve(p);
  REQUIRE(first.status == lp::Status::Optimal);
  CHECK(first.objective <= 1e-12);
  // Largest u0 with the residual pinned at its optimum.
  std::vector<double> cap(n, 0.0);
  cap[n - 1] = 1.0;
  p.add(cap, lp::Sense::LessEqual, 1e-12);
  std::fill(p.objective.begin(), p.objective.end(), 0.0);
  p.objective[0] = -1.0;
  const lp::Solution second = lp::solve(p);
  REQUIRE(second.status == lp::Status::Optimal);
  CHECK(max_violation(p, second.x) <= 1e-9);
  CHECK(second.x[0] == doctest::Approx(0.5).epsilon(1e-9));
}
