#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "ivcalc/errors.hpp"
#include "ivcalc/interval.hpp"

using namespace ivc;

namespace {

Interval random_interval(std::mt19937_64& rng, double span = 10.0) {
  std::uniform_real_distribution<double> u(-span, span);
  const double a = u(rng), b = u(rng);
  return Interval(std::min(a, b), std::max(a, b));
}

bool valid(const Interval& a) { return a.lo() <= a.hi(); }

// Grid search over the unit l1-sphere: is there a c with Σ|c_i| = 1 and
// 0 ∈ Σ c_i ⊙ X_i (up to slack)? Independent of the LP decomposition.
bool grid_dependent(const std::vector<Interval>& xs, int steps, double slack) {
  const std::size_t m = xs.size();
  std::vector<double> c(m);
  const auto check = [&]() {
    return contains_zero(linear_combination(c, xs), slack);
  };
  if (m == 1) {
    for (double s : {1.0, -1.0}) {
      c[0] = s;
      if (check()) return true;
    }
    return false;
  }
  if (m == 2) {
    for (int i = -steps; i <= steps; ++i) {
      c[0] = static_cast<double>(i) / steps;
      for (double s : {1.0, -1.0}) {
        c[1] = s * (1.0 - std::abs(c[0]));
        if (check()) return true;
      }
    }
    return false;
  }
  for (int i = -steps; i <= steps; ++i) {
    for (int j = -(steps - std::abs(i)); j <= steps - std::abs(i); ++j) {
      const double rest = static_cast<double>(steps - std::abs(i) - std::abs(j)) / steps;
      c[0] = static_cast<double>(i) / steps;
      c[1] = static_cast<double>(j) / steps;
      for (double s : {1.0, -1.0}) {
        c[2] = s * rest;
        if (check()) return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("construction rejects inverted or non-finite endpoints") {
  CHECK_THROWS_AS(Interval(2, 1), InvalidInterval);
  CHECK_THROWS_AS(Interval(0, INFINITY), InvalidInterval);
  CHECK_THROWS_AS(Interval(NAN, 1), InvalidInterval);
  CHECK(Interval::point(3).is_degenerate());
  CHECK(Interval::zero() == Interval(0, 0));
}

TEST_CASE("Moore addition") {
  CHECK(add(Interval(1, 2), Interval(3, 5)) == Interval(4, 7));
  CHECK(add(Interval(0, 0), Interval(-2, 9)) == Interval(-2, 9));
  CHECK(add(Interval(-1, 1), Interval(-2, 3)) == Interval(-3, 4));
}

TEST_CASE("Moore subtraction") {
  CHECK(moore_sub(Interval(2, 6), Interval(4, 12)) == Interval(-10, 2));
  CHECK(moore_sub(Interval(1, 2), Interval(1, 2)) == Interval(-1, 1));
  CHECK(moore_sub(Interval(3, 3), Interval(3, 3)) == Interval(0, 0));
}

TEST_CASE("multiplication, scaling and division") {
  CHECK(scalar_mul(-1, Interval(2, 5)) == Interval(-5, -2));
  CHECK(scalar_mul(0, Interval(-3, 7)) == Interval(0, 0));
  CHECK(mul(Interval(1, 2), Interval(-1, 3)) == Interval(-2, 6));
  CHECK(div(Interval(1, 2), Interval(2, 4)) == Interval(0.25, 1));
  CHECK_THROWS_AS(div(Interval(1, 2), Interval(-1, 1)), DivisionByIntervalContainingZero);
}

TEST_CASE("gH-difference") {
  CHECK(gh_difference(Interval(-3, 8), Interval(-3, 8)) == Interval(0, 0));
  CHECK(gh_difference(Interval(2, 5), Interval(1, 3)) == Interval(1, 2));
  CHECK(gh_difference(Interval(1, 3), Interval(0, 5)) == Interval(-2, 1));
}

TEST_CASE("dominance verdicts") {
  const auto bs = dominance(Interval(1, 2), Interval(2, 3));
  CHECK(bs.kind == DominanceVerdict::Kind::BetterStrictlyDominates);
  CHECK(bs.a_dominates_b);
  CHECK_FALSE(bs.b_dominates_a);
  CHECK(dominance(Interval(1, 4), Interval(2, 3)).kind == DominanceVerdict::Kind::NotComparable);
  CHECK(dominance(Interval(1, 2), Interval(1, 2)).kind == DominanceVerdict::Kind::Equal);
  const auto s = dominance(Interval(1, 2), Interval(1, 3));
  CHECK(s.kind == DominanceVerdict::Kind::StrictlyDominates);
  // Ties within the tolerance count as equal.
  CHECK(nearly_equal(Interval(1, 2), Interval(1 + 1e-13, 2)));
}

TEST_CASE("norm") {
  CHECK(norm(Interval(-3, 2)) == 3);
  CHECK(norm(Interval(0, 0)) == 0);
  CHECK(norm(Interval(1, 5)) == 5);
}

TEST_CASE("max of comparable intervals") {
  CHECK(max_comparable(Interval(1, 2), Interval(2, 3)) == Interval(2, 3));
  CHECK(max_comparable(Interval(1, 2), Interval(1, 2)) == Interval(1, 2));
  CHECK_THROWS_AS(max_comparable(Interval(1, 4), Interval(2, 3)), NotComparableError);
}

TEST_CASE("contains_zero") {
  CHECK(contains_zero(Interval(-1, 2)));
  CHECK(contains_zero(Interval(0, 0)));
  CHECK_FALSE(contains_zero(Interval(1, 2)));
}

TEST_CASE("linear independence examples") {
  const std::vector<Interval> one{Interval(1, 2)};
  CHECK(linearly_independent(one).independent);

  const std::vector<Interval> sym{Interval(-1, 1)};
  const auto d1 = linearly_independent(sym);
  CHECK_FALSE(d1.independent);
  REQUIRE(d1.witness.size() == 1);
  CHECK(std::abs(d1.witness[0]) == doctest::Approx(1.0));

  const std::vector<Interval> pair{Interval(1, 1), Interval(-1, -1)};
  const auto d2 = linearly_independent(pair);
  CHECK_FALSE(d2.independent);
  REQUIRE(d2.witness.size() == 2);
  CHECK(d2.witness[0] == doctest::Approx(d2.witness[1]));
  CHECK(contains_zero(linear_combination(d2.witness, pair), 1e-9));

  CHECK_THROWS_AS(linearly_independent(std::vector<Interval>{}), DimensionError);
}

TEST_CASE("text and stream form") {
  std::ostringstream os;
  os << Interval(1, 2.5);
  CHECK(os.str() == to_string(Interval(1, 2.5)));
}

TEST_CASE("property: gH-difference identities on random pairs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5000; ++i) {
    const Interval a = random_interval(rng), b = random_interval(rng);
    CHECK(gh_difference(a, a) == Interval(0, 0));
    const Interval c = gh_difference(a, b);
    REQUIRE(valid(c));
    // a = b ⊕ c or b = a ⊖ c (endpoint-wise, up to rounding).
    const Interval sum = add(b, c);
    const bool case1 = std::abs(sum.lo() - a.lo()) <= 1e-12 && std::abs(sum.hi() - a.hi()) <= 1e-12;
    const bool case2 = std::abs(a.lo() - c.hi() - b.lo()) <= 1e-12 &&
                       std::abs(a.hi() - c.lo() - b.hi()) <= 1e-12;
    CHECK((case1 || case2));
    CHECK(gh_distance(a, b) == norm(c));
  }
}

TEST_CASE("property: closure of every operation") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> s(-5, 5);
  for (int i = 0; i < 5000; ++i) {
    const Interval a = random_interval(rng), b = random_interval(rng);
    CHECK(valid(add(a, b)));
    CHECK(valid(moore_sub(a, b)));
    CHECK(valid(mul(a, b)));
    CHECK(valid(scalar_mul(s(rng), a)));
    if (!contains_zero(b)) CHECK(valid(div(a, b)));
  }
}

TEST_CASE("property: dominance chain and endpoint implications") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 5000; ++i) {
    const Interval a = random_interval(rng, 3), b = random_interval(rng, 3);
    if (better_strictly_dominates(a, b)) CHECK(strictly_dominates(a, b));
    if (strictly_dominates(a, b)) CHECK(dominates(a, b));
    // b ⊀ 0 with b ⪯ a forces a ⊀ 0.
    if (b.hi() >= 0 && dominates(b, a, 0.0)) CHECK(a.hi() >= 0);
    // (a ⊕ b).hi ≥ 0 with b ⪯ 0 forces a.hi ≥ 0.
    if (add(a, b).hi() >= 0 && dominates(b, Interval(0, 0), 0.0)) CHECK(a.hi() >= 0);
  }
}

TEST_CASE("property: norm is a norm") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> s(-5, 5);
  for (int i = 0; i < 5000; ++i) {
    const Interval a = random_interval(rng), b = random_interval(rng);
    const double l = s(rng);
    CHECK(norm(add(a, b)) <= norm(a) + norm(b) + 1e-12);
    CHECK(norm(scalar_mul(l, a)) == doctest::Approx(std::abs(l) * norm(a)));
  }
}

TEST_CASE("oracle: linear independence agrees with an l1-sphere grid search") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(-3, 3);
  int dependent = 0, independent = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + trial % 3;
    std::vector<Interval> xs;
    for (std::size_t i = 0; i < m; ++i) {
      // Small integer endpoints keep the grid oracle exact at its nodes.
      const int a = pick(rng), b = pick(rng);
      xs.emplace_back(std::min(a, b), std::max(a, b));
    }
    const LinearIndependence r = linearly_independent(xs);
    const bool grid = grid_dependent(xs, 60, 1e-9);
    if (grid) CHECK_FALSE(r.independent);
    if (!r.independent) {
      // Verify the witness directly and that the grid sees dependence near it.
      double l1 = 0.0;
      for (double c : r.witness) l1 += std::abs(c);
      CHECK(l1 == doctest::Approx(1.0));
      CHECK(contains_zero(linear_combination(r.witness, xs), 1e-9));
      CHECK(grid_dependent(xs, 60, 0.2));
    }
    (r.independent ? independent : dependent)++;
  }
  CHECK(dependent > 20);
  CHECK(independent > 20);
}
