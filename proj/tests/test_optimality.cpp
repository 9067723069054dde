#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ivcalc/errors.hpp"
#include "ivcalc/gallery.hpp"
#include "ivcalc/optimality.hpp"

using namespace ivc;

namespace {

IOPInstance unconstrained(Ivf f, FeasibleRegion region) {
  IOPInstance p;
  p.objective = std::move(f);
  p.region = std::move(region);
  return p;
}

Ivf deg1(double a, double b) {
  return Ivf::degenerate(1, [a, b](std::span<const double> x) { return a * x[0] + b; });
}

Ivf square() {
  return Ivf::degenerate(1, [](std::span<const double> x) { return x[0] * x[0]; });
}

}  // namespace

TEST_CASE("efficiency by grid search") {
  OptimalityConfig cfg;
  const EfficiencyCertificate a = is_efficient(gallery::ne1(), Vec{0}, cfg);
  CHECK(a.verdict == Efficiency::Efficient);
  CHECK(a.grid_per_axis == 401);
  CHECK(is_efficient(gallery::remark_in(), Vec{0}, cfg).verdict == Efficiency::Efficient);
  const EfficiencyCertificate b = is_efficient(gallery::remark_in(), Vec{5}, cfg);
  CHECK(b.verdict == Efficiency::NotEfficient);
  REQUIRE(b.witness);
  REQUIRE(b.witness_value);
  CHECK(strictly_dominates(*b.witness_value, Interval(9, 30)));
  CHECK_THROWS_AS(is_efficient(gallery::ne1(), Vec{3}, cfg), InfeasiblePoint);
}

TEST_CASE("sufficient condition") {
  OptimalityConfig cfg;
  const IOPInstance conv = unconstrained(gallery::x2_3x2(), FeasibleRegion::box(Box{{-2.0}, {2.0}}));
  CHECK(sufficient_condition(conv, Vec{0}, cfg).status == CheckStatus::Pass);
  const ConditionResult ne = sufficient_condition(gallery::ne1(), Vec{0}, cfg);
  CHECK(ne.status == CheckStatus::Fail);
  REQUIRE(ne.counterexample);
  CHECK(ne.counterexample->direction[0] > 0);
  const IOPInstance sq = unconstrained(square(), FeasibleRegion::whole(1));
  CHECK(sufficient_condition(sq, Vec{0}, cfg).status == CheckStatus::Pass);
  // The hull objective of the remark "in" instance is not convex on [−1, 7].
  CHECK_THROWS_AS(sufficient_condition(gallery::remark_in(), Vec{0}, cfg), PreconditionFailed);
  OptimalityConfig assumed = cfg;
  assumed.assume_convex = true;
  CHECK(sufficient_condition(gallery::remark_in(), Vec{0}, assumed).status == CheckStatus::Fail);
}

TEST_CASE("necessary conditions") {
  OptimalityConfig cfg;
  const NecessaryConditions in = necessary_conditions(gallery::remark_in(), Vec{0}, cfg);
  CHECK(in.not_strict_descent.status == CheckStatus::PreconditionFailed);
  REQUIRE(in.not_strict_descent.unconditional);
  CHECK(*in.not_strict_descent.unconditional == CheckStatus::Fail);
  CHECK(in.no_better_strict_descent.status == CheckStatus::Pass);

  const NecessaryConditions z = necessary_conditions(gallery::x2_3x2_problem(), Vec{0}, cfg);
  CHECK(z.not_strict_descent.status == CheckStatus::Pass);
  CHECK(z.no_better_strict_descent.status == CheckStatus::Pass);
  CHECK(z.zero_containment.status == CheckStatus::Pass);

  const NecessaryConditions ne = necessary_conditions(gallery::ne1(), Vec{0}, cfg);
  CHECK(ne.no_better_strict_descent.status == CheckStatus::Pass);
}

TEST_CASE("descent and feasible cones") {
  OptimalityConfig cfg;
  const Ivf f = gallery::ne1().objective;
  CHECK(descent_cone_member(f, Vec{0}, Vec{1}, cfg));
  CHECK_FALSE(descent_cone_member(f, Vec{0}, Vec{-1}, cfg));
  CHECK_FALSE(descent_cone_member(f, Vec{0}, Vec{0}, cfg));

  const FeasibleRegion box = FeasibleRegion::box(Box{{-1.0}, {2.0}});
  CHECK(feasible_cone_member(box, Vec{0}, Vec{1}, cfg));
  CHECK_FALSE(feasible_cone_member(box, Vec{2}, Vec{1}, cfg));
  CHECK(feasible_cone_member(FeasibleRegion::whole(3), Vec{1, 2, 3}, Vec{-1, 0, 4}, cfg));
  CHECK_THROWS_AS(feasible_cone_member(box, Vec{0}, Vec{0}, cfg), ZeroDirection);

  const IntersectionResult lin =
      descent_feasible_intersection(gallery::linear_unconstrained(), Vec{0}, cfg);
  CHECK(lin.verdict == Intersection::NonEmpty);
  REQUIRE(lin.witness);
  CHECK((*lin.witness)[0] < 0);
  OptimalityConfig none = cfg;
  none.directions = 0;
  CHECK(descent_feasible_intersection(gallery::linear_unconstrained(), Vec{0}, none).verdict ==
        Intersection::Inconclusive);
}

TEST_CASE("active sets") {
  IOPInstance p = unconstrained(gallery::x2_3x2(), FeasibleRegion::whole(1));
  p.constraints = {deg1(1, -1)};
  CHECK(active_set(p, Vec{1}, 1e-9).strict == std::vector<std::size_t>{0});
  p.constraints = {Ivf::from_endpoints(1, [](std::span<const double> x) { return x[0] - 2; },
                                       [](std::span<const double> x) { return x[0] - 1; })};
  const ActiveSet a = active_set(p, Vec{1}, 1e-9);
  CHECK(a.strict.empty());
  CHECK(a.relaxed == std::vector<std::size_t>{0});
  p.constraints.clear();
  CHECK(active_set(p, Vec{1}, 1e-9).strict.empty());
}

TEST_CASE("Fritz John and KKT on the one-dimensional examples") {
  OptimalityConfig cfg;
  IOPInstance p = unconstrained(gallery::x2_3x2(), FeasibleRegion::whole(1));
  p.constraints = {deg1(-1, 0)};
  const KKTCertificate fj = fritz_john_check(p, Vec{0}, cfg);
  CHECK(fj.found);
  CHECK(fj.u0 == doctest::Approx(1.0));
  CHECK(fj.u[0] == doctest::Approx(0.0));
  const KKTCertificate kkt = kkt_necessary_check(p, Vec{0}, cfg);
  CHECK(kkt.found);
  CHECK(kkt.u[0] == doctest::Approx(0.0));
  CHECK(kkt.slackness[0] == 0.0);

  const IOPInstance free = unconstrained(gallery::x2_3x2(), FeasibleRegion::whole(1));
  const KKTCertificate f0 = fritz_john_check(free, Vec{0}, cfg);
  CHECK(f0.found);
  CHECK(f0.max_residual == 0.0);
  CHECK_FALSE(fritz_john_check(gallery::linear_unconstrained(), Vec{0}, cfg).found);
}

TEST_CASE("dependent active derivatives violate the constraint qualification") {
  OptimalityConfig cfg;
  IOPInstance p = unconstrained(gallery::x2_3x2(), FeasibleRegion::whole(1));
  // G(x) = x ⊙ [−1, 1] is active at 0 with derivative d ⊙ [−1, 1] ∋ 0.
  p.constraints = {Ivf::scaled(1, [](std::span<const double> x) { return x[0]; }, Interval(-1, 1))};
  CHECK_THROWS_AS(kkt_necessary_check(p, Vec{0}, cfg), LinearIndependenceViolated);
}

TEST_CASE("KKT sufficient check") {
  OptimalityConfig cfg;
  IOPInstance a = unconstrained(gallery::x2_3x2(), FeasibleRegion::whole(1));
  a.constraints = {deg1(1, -1)};
  const KKTSufficientResult ra = kkt_sufficient_check(a, Vec{0}, Vec{0}, cfg);
  CHECK(ra.condition.status == CheckStatus::Pass);
  REQUIRE(ra.cross_check);
  CHECK(ra.cross_check->verdict == Efficiency::Efficient);
  CHECK(ra.consistent);

  IOPInstance b = unconstrained(deg1(1, 0), FeasibleRegion::whole(1));
  b.constraints = {deg1(-1, 0)};
  CHECK(kkt_sufficient_check(b, Vec{0}, Vec{1}, cfg).condition.status == CheckStatus::Pass);

  IOPInstance c = unconstrained(gallery::x2_3x2(), FeasibleRegion::whole(1));
  c.constraints = {Ivf::constant(1, Interval(-1, -1))};
  CHECK_THROWS_AS(kkt_sufficient_check(c, Vec{0}, Vec{1}, cfg), SlacknessViolated);
  CHECK_THROWS_AS(kkt_sufficient_check(c, Vec{0}, Vec{-1}, cfg), PreconditionFailed);
  CHECK_THROWS_AS(kkt_sufficient_check(c, Vec{0}, Vec{0, 0}, cfg), DimensionError);
}

TEST_CASE("KKT gallery instances reproduce the hand-computed multipliers") {
  OptimalityConfig cfg;
  for (const gallery::KKTCase& k : gallery::kkt_cases()) {
    CAPTURE(k.iop.name);
    const KKTCertificate fj = fritz_john_check(k.iop, k.point, cfg);
    REQUIRE(fj.found);
    CHECK(fj.max_residual <= 1e-8);
    CHECK(fj.u0 == doctest::Approx(k.fj_u0).epsilon(1e-4));
    const KKTCertificate kkt = kkt_necessary_check(k.iop, k.point, cfg);
    REQUIRE(kkt.found);
    CHECK(kkt.max_residual <= 1e-8);
    for (std::size_t i = 0; i < k.kkt_u.size(); ++i) {
      CHECK(std::abs(kkt.u[i] - k.kkt_u[i]) <= 1e-4);
    }
  }
}

TEST_CASE("property: soundness against the grid search") {
  OptimalityConfig cfg;
  // Certified-efficient points admit no better-strict descent and a Fritz
  // John certificate; the descent/constraint cones do not meet there.
  for (const gallery::KKTCase& k : gallery::kkt_cases()) {
    CAPTURE(k.iop.name);
    const EfficiencyCertificate e = is_efficient(k.iop, k.point, cfg);
    REQUIRE(e.verdict == Efficiency::Efficient);
    CHECK(necessary_conditions(k.iop, k.point, cfg).no_better_strict_descent.status !=
          CheckStatus::Fail);
    CHECK(fritz_john_check(k.iop, k.point, cfg).found);
    CHECK(descent_feasible_intersection(k.iop, k.point, cfg).verdict != Intersection::NonEmpty);
    const KKTSufficientResult s =
        kkt_sufficient_check(k.iop, k.point, kkt_necessary_check(k.iop, k.point, cfg).u, cfg);
    CHECK(s.consistent);
  }
  const IOPInstance conv = gallery::x2_3x2_problem();
  if (sufficient_condition(conv, Vec{0}, cfg).status == CheckStatus::Pass) {
    CHECK(is_efficient(conv, Vec{0}, cfg).verdict != Efficiency::NotEfficient);
  }
}

TEST_CASE("property: cone flags are invariant under positive scaling") {
  OptimalityConfig cfg;
  const gallery::KKTCase k = gallery::kkt_cases()[3];
  const IntersectionResult r = descent_feasible_intersection(k.iop, k.point, cfg);
  const Ivf& f = k.iop.objective;
  for (std::size_t i = 0; i < std::min<std::size_t>(16, r.probe.directions.size()); ++i) {
    const Vec& d = r.probe.directions[i];
    for (double s : {0.5, 2.0, 10.0}) {
      const Vec sd = scaled(s, d);
      CHECK(descent_cone_member(f, k.point, sd, cfg) == r.probe.memberships[i].descent);
      CHECK(feasible_cone_member(k.iop, k.point, sd, cfg) == r.probe.memberships[i].feasible);
    }
  }
}
