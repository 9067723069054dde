#include "ivcalc/ivf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "ivcalc/errors.hpp"

namespace ivc {

Box Box::whole(std::size_t n) {
  const double inf = std::numeric_limits<double>::infinity();
  return Box{Vec(n, -inf), Vec(n, inf)};
}

Box Box::cube(std::size_t n, double lo, double hi) {
  if (!(lo <= hi)) throw DimensionError("box with lo > hi");
  return Box{Vec(n, lo), Vec(n, hi)};
}

bool Box::contains(std::span<const double> x, double tol) const {
  if (x.size() != lo.size()) throw DimensionError("point dimension does not match box");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lo[i] - tol && x[i] <= hi[i] + tol)) return false;
  }
  return true;
}

bool Box::bounded() const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) return false;
  }
  return true;
}

bool Box::is_whole_space() const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (std::isfinite(lo[i]) || std::isfinite(hi[i])) return false;
  }
  return true;
}

Box Box::clipped(std::span<const double> center, double r) const {
  Box out = *this;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    out.lo[i] = std::max(lo[i], center[i] - r);
    out.hi[i] = std::min(hi[i], center[i] + r);
  }
  return out;
}

Domain Domain::whole(std::size_t n) {
  Domain d;
  d.dim_ = n;
  return d;
}

Domain Domain::box(Box b) {
  Domain d;
  d.dim_ = b.dim();
  d.box_ = std::move(b);
  d.label_ = "box";
  return d;
}

Domain Domain::predicate(std::size_t n, std::function<bool(std::span<const double>)> inside,
                         std::string label) {
  Domain d;
  d.dim_ = n;
  d.inside_ = std::move(inside);
  d.label_ = std::move(label);
  return d;
}

bool Domain::contains(std::span<const double> x) const {
  if (dim_ != 0 && x.size() != dim_) throw DimensionError("point dimension does not match domain");
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  if (box_ && !box_->contains(x)) return false;
  if (inside_ && !inside_(x)) return false;
  return true;
}

Ivf::Ivf(std::size_t dim, IntervalFn fn, Domain domain)
    : dim_(dim), fn_(std::move(fn)), domain_(std::move(domain)) {
  if (dim_ == 0) throw DimensionError("IVF dimension must be positive");
  if (domain_.dim() == 0) domain_ = Domain::whole(dim_);
  if (domain_.dim() != dim_) throw DimensionError("IVF and domain dimensions differ");
}

Ivf Ivf::from_endpoints(std::size_t dim, RealFn lower, RealFn upper, Domain domain) {
  auto fn = [lower = std::move(lower), upper = std::move(upper)](std::span<const double> x) {
    const double lo = lower(x);
    const double hi = upper(x);
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw InvalidIvf("non-finite IVF value");
    if (lo > hi + kCompareTol) throw InvalidIvf("lower endpoint exceeds upper endpoint");
    return lo <= hi ? Interval(lo, hi) : Interval::point(lo);
  };
  return Ivf(dim, std::move(fn), std::move(domain));
}

Ivf Ivf::degenerate(std::size_t dim, RealFn g, Domain domain) {
  auto fn = [g = std::move(g)](std::span<const double> x) {
    const double v = g(x);
    if (!std::isfinite(v)) throw InvalidIvf("non-finite IVF value");
    return Interval::point(v);
  };
  return Ivf(dim, std::move(fn), std::move(domain));
}

Ivf Ivf::scaled(std::size_t dim, RealFn g, Interval c, Domain domain) {
  auto fn = [g = std::move(g), c](std::span<const double> x) {
    const double v = g(x);
    if (!std::isfinite(v)) throw InvalidIvf("non-finite IVF value");
    const double lo = v >= 0.0 ? v * c.lo() : v * c.hi();
    const double hi = v >= 0.0 ? v * c.hi() : v * c.lo();
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw InvalidIvf("non-finite IVF value");
    return v == 0.0 ? Interval() : Interval(lo, hi);
  };
  return Ivf(dim, std::move(fn), std::move(domain));
}

Ivf Ivf::constant(std::size_t dim, Interval c) {
  return Ivf(dim, [c](std::span<const double>) { return c; });
}

Interval Ivf::eval(std::span<const double> x) const {
  if (x.size() != dim_) throw DimensionError("point dimension does not match IVF");
  if (!domain_.contains(x)) throw DomainError("point outside IVF domain");
  try {
    return fn_(x);
  } catch (const InvalidInterval& e) {
    throw InvalidIvf(e.what());
  }
}

Ivf pointwise_max(std::vector<Ivf> family, double tol) {
  if (family.empty()) throw DimensionError("empty IVF family");
  const std::size_t n = family.front().dim();
  for (const Ivf& f : family) {
    if (f.dim() != n) throw DimensionError("IVF family members differ in dimension");
  }
  Domain domain = family.front().domain();
  auto fn = [family = std::move(family), tol](std::span<const double> x) {
    Interval best = family.front().eval(x);
    for (std::size_t i = 1; i < family.size(); ++i) {
      const Interval v = family[i].eval(x);
      if (!comparable(best, v, tol)) {
        throw NotComparableFamily("family values are not comparable at a probed point");
      }
      best = max_comparable(best, v, tol);
    }
    return best;
  };
  return Ivf(n, std::move(fn), std::move(domain));
}

Ivf compose(Ivf outer, VecFn inner, std::size_t inner_dim) {
  auto fn = [outer = std::move(outer), inner = std::move(inner)](std::span<const double> x) {
    const Vec y = inner(x);
    return outer.eval(y);
  };
  return Ivf(inner_dim, std::move(fn));
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("vector lengths differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double euclidean_norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Vec axpy(double a, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("vector lengths differ");
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + y[i];
  return out;
}

Vec scaled(double a, std::span<const double> x) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i];
  return out;
}

std::vector<Vec> unit_directions(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n && out.size() < count; ++i) {
    for (double s : {1.0, -1.0}) {
      if (out.size() == count) break;
      Vec e(n, 0.0);
      e[i] = s;
      out.push_back(std::move(e));
    }
  }
  if (n == 1) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  while (out.size() < count) {
    Vec d(n);
    for (double& v : d) v = normal(rng);
    const double r = euclidean_norm(d);
    if (r < 1e-12) continue;
    for (double& v : d) v /= r;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace ivc
