#include "ivcalc/gallery.hpp"

#include <algorithm>
#include <cmath>

namespace ivc::gallery {

namespace {

double sq(double t) { return t * t; }

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double xi : x) s += xi * xi;
  return s;
}

IntervalVector boxes(std::initializer_list<std::pair<double, double>> xs) {
  std::vector<Interval> v;
  for (const auto& [lo, hi] : xs) v.emplace_back(lo, hi);
  return IntervalVector(std::move(v));
}

}  // namespace

Ivf squared_norm(std::size_t n, Interval c) { return Ivf::scaled(n, norm2, c); }

Ivf norm_times(std::size_t n, Interval c) {
  return Ivf::scaled(n, [](std::span<const double> x) { return std::sqrt(norm2(x)); }, c);
}

Ivf rational_r2(Interval c) {
  return Ivf::scaled(2, [](std::span<const double> p) {
    const double x = p[0], y = p[1];
    if (x == 0.0 && y == 0.0) return 0.0;
    const double x2 = x * x;
    const double den = sq(y - x2) + sq(x2 * x2);
    return den == 0.0 ? 0.0 : x2 * x2 * x2 / den;
  }, c);
}

std::vector<PathSchedule> r2_schedules() {
  PathSchedule literal;
  literal.label = "h_n=(1/n,1/n^3)";
  literal.base = {0.0, 0.0};
  literal.direction = Vec{0.0, 0.0};
  literal.step = [](std::span<const double>, int k) {
    const double n = k + 1;
    return std::pair{1.0 / n, Vec{1.0 / n, 1.0 / (n * n * n)}};
  };
  PathSchedule parabola;
  parabola.label = "parabola";
  parabola.base = {0.0, 0.0};
  parabola.step = [](std::span<const double> v, int k) {
    const double lambda = 0.1 * std::pow(0.5, k);
    if (v[1] != 0.0) return std::pair{lambda, Vec(v.begin(), v.end())};
    const double h1 = v[0] != 0.0 ? v[0] : lambda;
    return std::pair{lambda, Vec{h1, lambda * h1 * h1}};
  };
  return {literal, parabola};
}

Ivf nee1() {
  return Ivf::from_endpoints(1, [](std::span<const double> x) { return -4.0 * x[0] * x[0]; },
                             [](std::span<const double> x) { return 6.0 * x[0] * x[0]; });
}

Ivf x2_3x2() {
  return Ivf::scaled(1, [](std::span<const double> x) { return x[0] * x[0]; }, Interval(1, 3));
}

Ivf affine(Vec a, double b, Interval c) {
  const std::size_t n = a.size();
  return Ivf::scaled(n, [a = std::move(a), b](std::span<const double> x) {
    double s = b;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
  }, c);
}

Ivf step() {
  return Ivf(1, [](std::span<const double> x) {
    return x[0] > 0.0 ? Interval(1, 2) : Interval(0, 1);
  });
}

Ivf ex31_outer() { return rational_r2(Interval(2, 6)); }

VecFn ex31_inner() {
  return [](std::span<const double> x) { return Vec{x[0], x[0] * x[0]}; };
}

std::vector<Ivf> max_family() {
  const Interval c(1, 2);
  return {
      Ivf::scaled(1, [](std::span<const double> x) { return x[0] * x[0]; }, c),
      Ivf::scaled(1, [](std::span<const double> x) { return 2.0 * x[0] * x[0] - 1.0; }, c),
      Ivf::scaled(1, [](std::span<const double> x) { return 0.5 * (x[0] * x[0] + 1.0); }, c),
  };
}

IOPInstance ne1() {
  IOPInstance p;
  p.name = "ne1";
  p.objective = Ivf::from_endpoints(
      1, [](std::span<const double> x) { return 4 * x[0] * x[0] - 4 * x[0] + 1; },
      [](std::span<const double> x) { return 2 * x[0] * x[0] + 75; });
  p.region = FeasibleRegion::box(Box{{-1.0}, {2.0}});
  p.witness = Vec{0.0};
  return p;
}

IOPInstance remark_in() {
  IOPInstance p;
  p.name = "remark_in";
  // The endpoint functions cross at x = -1/4; their pointwise hull keeps F
  // interval-valued on all of [-1, 7] and equals them for x >= -1/4.
  p.objective = Ivf(1, [](std::span<const double> x) {
    const double a = x[0] * x[0] - 4 * x[0] + 4;
    const double b = x[0] * x[0] + 5;
    return Interval(std::min(a, b), std::max(a, b));
  });
  p.region = FeasibleRegion::box(Box{{-1.0}, {7.0}});
  p.witness = Vec{0.0};
  return p;
}

IOPInstance x2_3x2_problem() {
  IOPInstance p;
  p.name = "x2_3x2";
  p.objective = x2_3x2();
  p.region = FeasibleRegion::whole(1);
  p.witness = Vec{0.0};
  return p;
}

std::vector<KKTCase> kkt_cases() {
  std::vector<KKTCase> out;
  {
    KKTCase k;
    k.iop.name = "kkt_inactive_1d";
    k.iop.objective = x2_3x2();
    k.iop.constraints = {Ivf::degenerate(1, [](std::span<const double> x) { return x[0] - 1; })};
    k.iop.region = FeasibleRegion::whole(1);
    k.point = {0.0};
    k.fj_u0 = 1.0;
    k.kkt_u = {0.0};
    out.push_back(std::move(k));
  }
  {
    KKTCase k;
    k.iop.name = "kkt_linear_1d";
    k.iop.objective = Ivf::degenerate(1, [](std::span<const double> x) { return x[0]; });
    k.iop.constraints = {Ivf::degenerate(1, [](std::span<const double> x) { return -x[0]; })};
    k.iop.region = FeasibleRegion::whole(1);
    k.point = {0.0};
    k.fj_u0 = 0.5;
    k.kkt_u = {1.0};
    out.push_back(std::move(k));
  }
  {
    KKTCase k;
    k.iop.name = "kkt_halfplane_2d";
    k.iop.objective = Ivf::scaled(
        2, [](std::span<const double> x) { return sq(x[0] - 1) + sq(x[1] - 1); }, Interval(1, 2));
    k.iop.constraints = {
        Ivf::degenerate(2, [](std::span<const double> x) { return x[0] + x[1] - 1; })};
    k.iop.region = FeasibleRegion::whole(2);
    k.point = {0.5, 0.5};
    k.fj_u0 = 0.5;
    k.kkt_u = {1.0};
    out.push_back(std::move(k));
  }
  {
    KKTCase k;
    k.iop.name = "kkt_offset_2d";
    k.iop.objective = Ivf::from_endpoints(
        2, [](std::span<const double> x) { return norm2(x); },
        [](std::span<const double> x) { return 2 * norm2(x) + 1; });
    k.iop.constraints = {Ivf::degenerate(2, [](std::span<const double> x) { return 1 - x[0]; })};
    k.iop.region = FeasibleRegion::whole(2);
    k.point = {1.0, 0.0};
    k.fj_u0 = 1.0 / 3.0;
    k.kkt_u = {2.0};
    out.push_back(std::move(k));
  }
  {
    KKTCase k;
    k.iop.name = "kkt_two_constraints_2d";
    k.iop.objective = Ivf::from_endpoints(
        2, [](std::span<const double> x) { return sq(x[0] - 1) + sq(x[1]); },
        [](std::span<const double> x) { return 2 * (sq(x[0] - 1) + sq(x[1])) + 1; });
    k.iop.constraints = {
        Ivf::degenerate(2, [](std::span<const double> x) { return x[0] + x[1]; }),
        Ivf::from_endpoints(2, [](std::span<const double> x) { return x[0] - 5; },
                            [](std::span<const double> x) { return x[0] - 3; })};
    k.iop.region = FeasibleRegion::whole(2);
    k.point = {0.5, -0.5};
    k.fj_u0 = 0.5;
    k.kkt_u = {1.0, 0.0};
    out.push_back(std::move(k));
  }
  for (KKTCase& k : out) k.iop.witness = k.point;
  return out;
}

IOPInstance linear_unconstrained() {
  IOPInstance p;
  p.name = "linear_unconstrained";
  p.objective = Ivf::degenerate(1, [](std::span<const double> x) { return x[0]; });
  p.region = FeasibleRegion::whole(1);
  p.witness = Vec{0.0};
  return p;
}

SVMDataset svm_degenerate() {
  SVMDataset d(1);
  d.push_back(boxes({{1, 1}}), 1);
  d.push_back(boxes({{-1, -1}}), -1);
  return d;
}

SVMDataset svm_interval_1d() {
  SVMDataset d(1);
  d.push_back(boxes({{1, 2}}), 1);
  d.push_back(boxes({{-2, -1}}), -1);
  return d;
}

SVMDataset svm_overlapping() {
  SVMDataset d(1);
  d.push_back(boxes({{-1, 1}}), 1);
  d.push_back(boxes({{0, 2}}), -1);
  return d;
}

SVMDataset svm_points_2d(double pad) {
  const double pts[6][3] = {{2.2, 1.2, 1},  {3.1, 3.0, 1},   {2.4, 2.8, 1},
                            {-0.8, 0.1, -1}, {0.2, -1.8, -1}, {-1.9, 1.1, -1}};
  SVMDataset d(2);
  for (const auto& p : pts) {
    d.push_back(boxes({{p[0] - pad, p[0] + pad}, {p[1] - pad, p[1] + pad}}),
                static_cast<int>(p[2]));
  }
  return d;
}

}  // namespace ivc::gallery
