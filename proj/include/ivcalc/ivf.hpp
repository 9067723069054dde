#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivcalc/interval.hpp"

namespace ivc {

using Vec = std::vector<double>;
using RealFn = std::function<double(std::span<const double>)>;
using IntervalFn = std::function<Interval(std::span<const double>)>;
using VecFn = std::function<Vec(std::span<const double>)>;

/// Axis-aligned box; bounds may be infinite for unbounded sides.
struct Box {
  Vec lo;
  Vec hi;

  static Box whole(std::size_t n);
  static Box cube(std::size_t n, double lo, double hi);

  std::size_t dim() const { return lo.size(); }
  bool contains(std::span<const double> x, double tol = 0.0) const;
  bool bounded() const;
  bool is_whole_space() const;
  /// Intersection with the cube of radius r around center.
  Box clipped(std::span<const double> center, double r) const;
};

/// Region on which an IVF is defined.
class Domain {
 public:
  Domain() = default;
  static Domain whole(std::size_t n);
  static Domain box(Box b);
  static Domain predicate(std::size_t n, std::function<bool(std::span<const double>)> inside,
                          std::string label = "predicate");

  std::size_t dim() const { return dim_; }
  bool contains(std::span<const double> x) const;
  const std::optional<Box>& bounds() const { return box_; }
  const std::string& label() const { return label_; }

 private:
  std::size_t dim_ = 0;
  std::optional<Box> box_;
  std::function<bool(std::span<const double>)> inside_;
  std::string label_ = "whole";
};

/// Interval-valued function x ↦ [f̲(x), f̅(x)] on a subset of R^n.
class Ivf {
 public:
  Ivf() = default;
  Ivf(std::size_t dim, IntervalFn fn, Domain domain = {});

  /// From paired endpoint callables. Evaluation throws InvalidIvf if
  /// lower(x) > upper(x) + kCompareTol; smaller inversions collapse to a point.
  static Ivf from_endpoints(std::size_t dim, RealFn lower, RealFn upper, Domain domain = {});
  /// x ↦ [g(x), g(x)].
  static Ivf degenerate(std::size_t dim, RealFn g, Domain domain = {});
  /// x ↦ g(x) ⊙ c.
  static Ivf scaled(std::size_t dim, RealFn g, Interval c, Domain domain = {});
  static Ivf constant(std::size_t dim, Interval c);

  std::size_t dim() const { return dim_; }
  const Domain& domain() const { return domain_; }
  bool in_domain(std::span<const double> x) const { return domain_.contains(x); }

  /// Throws DomainError outside the domain and InvalidIvf on non-finite or
  /// inverted endpoint values.
  Interval eval(std::span<const double> x) const;
  Interval operator()(std::span<const double> x) const { return eval(x); }
  double lower(std::span<const double> x) const { return eval(x).lo(); }
  double upper(std::span<const double> x) const { return eval(x).hi(); }

 private:
  std::size_t dim_ = 0;
  IntervalFn fn_;
  Domain domain_;
};

/// Pointwise maximum of a family whose values are pairwise comparable.
/// Evaluation throws NotComparableFamily where they are not.
Ivf pointwise_max(std::vector<Ivf> family, double tol = kCompareTol);

/// x ↦ F(H(x)) for H: R^m → R^n.
Ivf compose(Ivf outer, VecFn inner, std::size_t inner_dim);

// Small vector helpers shared by the estimators.
double dot(std::span<const double> a, std::span<const double> b);
double euclidean_norm(std::span<const double> a);
Vec axpy(double a, std::span<const double> x, std::span<const double> y);  // a*x + y
Vec scaled(double a, std::span<const double> x);

/// Deterministic unit directions: ± basis vectors first, then seeded random
/// points on the sphere. In one dimension only {+1, -1} exist.
std::vector<Vec> unit_directions(std::size_t n, std::size_t count, std::uint64_t seed);

}  // namespace ivc
