#include <doctest.h>

#include <random>
#include <sstream>

#include "ivcalc/errors.hpp"
#include "ivcalc/gallery.hpp"
#include "ivcalc/svm.hpp"
#include "svm_oracle.hpp"

using namespace ivc;

namespace {

IntervalVector iv(std::initializer_list<std::pair<double, double>> xs) {
  std::vector<Interval> v;
  for (const auto& [lo, hi] : xs) v.emplace_back(lo, hi);
  return IntervalVector(std::move(v));
}

SVMDataset from_points(const std::vector<Vec>& x, const std::vector<int>& y) {
  SVMDataset d(x[0].size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<Interval> c;
    for (double v : x[i]) c.push_back(Interval::point(v));
    d.push_back(IntervalVector(std::move(c)), y[i]);
  }
  return d;
}

}  // namespace

TEST_CASE("interval dot product and constraint") {
  CHECK(dot_interval(Vec{1, -1}, iv({{0, 1}, {0, 1}})) == Interval(-1, 1));
  CHECK(dot_interval(Vec{0, 0}, iv({{-3, 1}, {2, 5}})) == Interval(0, 0));
  CHECK(dot_interval(Vec{2, 3}, iv({{1, 1}, {-1, -1}})) == Interval(-1, -1));
  CHECK(constraint_eval(Vec{1}, 0, iv({{1, 1}}), 1) == Interval(0, 0));
  CHECK(constraint_eval(Vec{1}, 0, iv({{1, 2}}), 1) == Interval(-1, 0));
  CHECK(constraint_eval(Vec{0}, 0, iv({{-4, 7}}), -1) == Interval(1, 1));
  CHECK_THROWS_AS(dot_interval(Vec{1}, iv({{0, 1}, {0, 1}})), DimensionError);
}

TEST_CASE("dataset guards") {
  SVMDataset d(1);
  CHECK_THROWS_AS(d.push_back(iv({{0, 1}}), 0), DomainError);
  CHECK_THROWS_AS(d.push_back(iv({{0, 1}, {0, 1}}), 1), DimensionError);
  d.push_back(iv({{0, 1}}), 1);
  CHECK_THROWS_AS(d.require_trainable(), PreconditionFailed);
}

TEST_CASE("degenerate two-point training") {
  const SVMDataset d = gallery::svm_degenerate();
  const SVMSolution s = train(d);
  CHECK(s.w[0] == doctest::Approx(1.0));
  CHECK(std::abs(s.b) <= 1e-12);
  CHECK(s.kkt_report.pass);
  CHECK(s.kkt_report.strict_pass);
  CHECK(s.kkt_report.containment_residual <= 1e-12);
  const BiasSet b = bias_set(s, d);
  REQUIRE(b.strict);
  CHECK(norm(*b.strict) <= 1e-12);
}

TEST_CASE("interval two-point training") {
  const SVMDataset d = gallery::svm_interval_1d();
  const SVMSolution s = train(d);
  CHECK(s.w[0] == doctest::Approx(1.0));
  CHECK(std::abs(s.b) <= 1e-12);
  const SVMKKTReport& r = s.kkt_report;
  CHECK(r.pass);
  CHECK(contains_zero(r.containment[0]));
  // u = (½, ½): [1,1] ⊕ (−½)⊙[1,2] ⊕ (½)⊙[−2,−1] = [−1, 0].
  CHECK(r.containment[0] == Interval(-1, 0));
  CHECK_FALSE(r.strict_pass);
  CHECK(r.relaxed_pass);
  const BiasSet b = bias_set(s, d);
  REQUIRE(b.relaxed);
  CHECK(norm(*b.relaxed) <= 1e-12);
}

TEST_CASE("overlapping boxes are not separable") {
  CHECK_THROWS_AS(train(gallery::svm_overlapping()), NotSeparable);
}

TEST_CASE("KKT verification rejects zero multipliers") {
  SVMSolution s = train(gallery::svm_degenerate());
  s.u.assign(s.u.size(), 0.0);
  const SVMKKTReport r = kkt_verify(s, gallery::svm_degenerate());
  CHECK_FALSE(r.pass);
  CHECK(r.containment_residual == doctest::Approx(1.0));
}

TEST_CASE("inconsistent binding biases are rejected") {
  SVMSolution s = train(gallery::svm_degenerate());
  s.support_indices = {0, 1};
  s.w = {2.0};  // 1 − (2 + b) = 0 and 1 + (−2 + b) = 0 disagree
  CHECK_THROWS_AS(bias_set(s, gallery::svm_degenerate()), EmptyBiasSet);
}

TEST_CASE("classification") {
  const SVMSolution s = train(gallery::svm_degenerate());
  const Classification pos = classify(s, iv({{2, 2}}));
  CHECK(pos.label == SVMLabel::Positive);
  CHECK(gh_distance(pos.score, Interval(2, 2)) <= 1e-12);
  CHECK(classify(s, iv({{-3, -3}})).label == SVMLabel::Negative);
  const Classification amb = classify(s, iv({{-1, 1}}));
  CHECK(amb.label == SVMLabel::Ambiguous);
  CHECK(gh_distance(amb.score, Interval(-1, 1)) <= 1e-12);
  CHECK(amb.midpoint_sign == 0);
  CHECK(to_string(SVMLabel::Positive) == "+1");
}

TEST_CASE("oracle: 1D interval data matches the closed form") {
  // Positive boxes [p, ·] and negative boxes [·, q] with q < p: the
  // worst corners are p and q, so w = 2/(p−q) and b = −(p+q)/(p−q).
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int t = 0; t < 20; ++t) {
    SVMDataset d(1);
    double p = INFINITY, q = -INFINITY;
    const double shift = u(rng) - 1.5;
    for (int i = 0; i < 3; ++i) {
      const double lo = shift + u(rng), w = u(rng);
      d.push_back(iv({{lo, lo + w}}), 1);
      p = std::min(p, lo);
      const double hi = shift - u(rng);
      d.push_back(iv({{hi - w, hi}}), -1);
      q = std::max(q, hi);
    }
    const SVMSolution s = train(d);
    CHECK(s.w[0] == doctest::Approx(2 / (p - q)).epsilon(1e-9));
    CHECK(s.b == doctest::Approx(-(p + q) / (p - q)).epsilon(1e-9));
    CHECK(s.kkt_report.pass);
  }
}

TEST_CASE("oracle: 2D boxes match the angle scan") {
  for (double pad : {0.0, 0.1, 0.25, 0.4}) {
    CAPTURE(pad);
    const SVMDataset d = gallery::svm_points_2d(pad);
    const SVMSolution s = train(d);
    const oracle::Separator o = oracle::angle_scan_2d(d);
    CHECK(std::abs(s.w[0] - o.w[0]) <= 1e-6);
    CHECK(std::abs(s.w[1] - o.w[1]) <= 1e-6);
    CHECK(std::abs(s.b - o.b) <= 1e-6);
    CHECK(s.kkt_report.pass);
  }
}

TEST_CASE("oracle: degenerate data matches a brute-force classical QP") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g(0.0, 1.0);
  int checked = 0;
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 2;
    std::vector<Vec> x;
    std::vector<int> y;
    for (int i = 0; i < 8; ++i) {
      const int label = i % 2 ? 1 : -1;
      Vec p(n);
      for (double& c : p) c = g(rng) + 2.0 * label;
      x.push_back(p);
      y.push_back(label);
    }
    const SVMDataset d = from_points(x, y);
    SVMSolution s;
    try {
      s = train(d);
    } catch (const NotSeparable&) {
      continue;
    }
    const oracle::Separator o = oracle::brute_force_points(x, y);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(s.w[j] - o.w[j]) <= 1e-6);
    CHECK(std::abs(s.b - o.b) <= 1e-6);
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("property: widening features never increases the margin") {
  double prev = INFINITY;
  for (double pad : {0.0, 0.1, 0.2, 0.3, 0.4}) {
    const double m = train(gallery::svm_points_2d(pad)).margin();
    CHECK(m <= prev + 1e-12);
    prev = m;
  }
}

TEST_CASE("property: trained models verify and classify their worst corners") {
  for (double pad : {0.0, 0.2, 0.4}) {
    const SVMDataset d = gallery::svm_points_2d(pad);
    const SVMSolution s = train(d);
    CHECK(kkt_verify(s, d).pass);
    double sum_uy = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) sum_uy += s.u[i] * d.label(i);
    CHECK(std::abs(sum_uy) <= 1e-9);
    for (std::size_t i = 0; i < d.size(); ++i) {
      // The corner with the smallest label-signed score.
      std::vector<Interval> corner;
      for (std::size_t j = 0; j < d.dim(); ++j) {
        const Interval& c = d.features(i)[j];
        const bool low = (s.w[j] * d.label(i)) >= 0;
        corner.push_back(Interval::point(low ? c.lo() : c.hi()));
      }
      const Classification c = classify(s, IntervalVector(corner));
      CHECK(c.label == (d.label(i) > 0 ? SVMLabel::Positive : SVMLabel::Negative));
    }
  }
}

TEST_CASE("dataset CSV round trip") {
  const SVMDataset d = gallery::svm_points_2d(0.1);
  std::ostringstream out;
  write_dataset_csv(out, d);
  CHECK(out.str().rfind("f1_lo,f1_hi,f2_lo,f2_hi,label\n", 0) == 0);
  std::istringstream in(out.str());
  const SVMDataset back = read_dataset_csv(in);
  REQUIRE(back.size() == d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(back.features(i) == d.features(i));
    CHECK(back.label(i) == d.label(i));
  }
  std::istringstream unlabeled("1,2\n-3,-1\n");
  const IntervalTable t = read_interval_csv(unlabeled);
  CHECK(t.dim == 1);
  CHECK(t.labels.empty());
  std::istringstream broken("1,2,x\n");
  CHECK_THROWS_AS(read_dataset_csv(broken), ParseError);
  std::istringstream inverted("2,1,1\n");
  CHECK_THROWS_AS(read_dataset_csv(inverted), ParseError);
}
