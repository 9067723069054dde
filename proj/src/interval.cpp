#include "ivcalc/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "ivcalc/errors.hpp"
#include "ivcalc/lp.hpp"

namespace ivc {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidInterval("interval endpoints must be finite");
  }
  if (lo > hi) {
    throw InvalidInterval("interval lower endpoint exceeds upper endpoint: [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

std::string to_string(const Interval& a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", a.lo(), a.hi());
  return buf;
}

std::ostream& operator<<(std::ostream& os, const Interval& a) { return os << to_string(a); }

Interval add(const Interval& a, const Interval& b) {
  return Interval(a.lo() + b.lo(), a.hi() + b.hi());
}

Interval moore_sub(const Interval& a, const Interval& b) {
  return Interval(a.lo() - b.hi(), a.hi() - b.lo());
}

Interval mul(const Interval& a, const Interval& b) {
  const double p[4] = {a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
  return Interval(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

Interval scalar_mul(double s, const Interval& a) {
  // 0 * [a, b] must be exactly [0, 0] (no -0 surprises in comparisons).
  if (s == 0.0) return Interval();
  if (s > 0.0) return Interval(s * a.lo(), s * a.hi());
  return Interval(s * a.hi(), s * a.lo());
}

Interval div(const Interval& a, const Interval& b) {
  if (b.lo() <= 0.0 && b.hi() >= 0.0) throw DivisionByIntervalContainingZero();
  return mul(a, Interval(1.0 / b.hi(), 1.0 / b.lo()));
}

Interval gh_difference(const Interval& a, const Interval& b) {
  const double dl = a.lo() - b.lo();
  const double dh = a.hi() - b.hi();
  return Interval(std::min(dl, dh), std::max(dl, dh));
}

double norm(const Interval& a) { return std::max(std::abs(a.lo()), std::abs(a.hi())); }

double gh_distance(const Interval& a, const Interval& b) { return norm(gh_difference(a, b)); }

bool contains_zero(const Interval& a, double tol) { return a.lo() <= tol && a.hi() >= -tol; }

bool dominates(const Interval& a, const Interval& b, double tol) {
  return a.lo() <= b.lo() + tol && a.hi() <= b.hi() + tol;
}

bool strictly_dominates(const Interval& a, const Interval& b, double tol) {
  return dominates(a, b, tol) && (a.lo() < b.lo() - tol || a.hi() < b.hi() - tol);
}

bool better_strictly_dominates(const Interval& a, const Interval& b, double tol) {
  return a.lo() < b.lo() - tol && a.hi() < b.hi() - tol;
}

bool nearly_equal(const Interval& a, const Interval& b, double tol) {
  return std::abs(a.lo() - b.lo()) <= tol && std::abs(a.hi() - b.hi()) <= tol;
}

bool comparable(const Interval& a, const Interval& b, double tol) {
  return dominates(a, b, tol) || dominates(b, a, tol);
}

std::string_view to_string(DominanceVerdict::Kind k) {
  switch (k) {
    case DominanceVerdict::Kind::Dominates:
      return "Dominates";
    case DominanceVerdict::Kind::StrictlyDominates:
      return "StrictlyDominates";
    case DominanceVerdict::Kind::BetterStrictlyDominates:
      return "BetterStrictlyDominates";
    case DominanceVerdict::Kind::Equal:
      return "Equal";
    case DominanceVerdict::Kind::NotComparable:
      return "NotComparable";
  }
  return "?";
}

DominanceVerdict dominance(const Interval& a, const Interval& b, double tol) {
  using Kind = DominanceVerdict::Kind;
  DominanceVerdict v;
  v.a_dominates_b = dominates(a, b, tol);
  v.b_dominates_a = dominates(b, a, tol);
  v.comparable = v.a_dominates_b || v.b_dominates_a;
  if (v.a_dominates_b && v.b_dominates_a) {
    v.kind = Kind::Equal;
  } else if (!v.comparable) {
    v.kind = Kind::NotComparable;
  } else {
    const Interval& lower = v.a_dominates_b ? a : b;
    const Interval& upper = v.a_dominates_b ? b : a;
    if (better_strictly_dominates(lower, upper, tol)) {
      v.kind = Kind::BetterStrictlyDominates;
    } else if (strictly_dominates(lower, upper, tol)) {
      v.kind = Kind::StrictlyDominates;
    } else {
      v.kind = Kind::Dominates;
    }
  }
  return v;
}

Interval max_comparable(const Interval& a, const Interval& b, double tol) {
  if (dominates(a, b, tol)) return b;
  if (dominates(b, a, tol)) return a;
  throw NotComparableError("max of non-comparable intervals " + to_string(a) + " and " +
                           to_string(b));
}

IntervalVector::IntervalVector(std::vector<Interval> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw DimensionError("interval vector must have n >= 1");
}

Interval linear_combination(std::span<const double> coeffs, std::span<const Interval> xs) {
  if (coeffs.size() != xs.size()) throw DimensionError("coefficient count mismatch");
  Interval acc;
  for (std::size_t i = 0; i < xs.size(); ++i) acc = acc + scalar_mul(coeffs[i], xs[i]);
  return acc;
}

LinearIndependence linearly_independent(std::span<const Interval> xs, double tol) {
  const std::size_t m = xs.size();
  if (m == 0) throw DimensionError("linear independence of an empty collection");
  if (m > 20) throw DimensionError("orthant decomposition limited to 20 intervals");

  // Within an orthant c = s∘t with t >= 0, c_i⊙X_i has endpoints linear in
  // t_i, so containment of zero is two linear inequalities. The collection is
  // dependent iff some orthant admits t on the unit simplex with residual
  // max(lo, -hi, 0) <= tol. Orthants come in ± pairs, so s_0 = +1 suffices.
  const std::size_t patterns = std::size_t{1} << (m - 1);
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    std::vector<double> lo_row(m + 1, 0.0);
    std::vector<double> hi_row(m + 1, 0.0);
    std::vector<double> sign(m, 1.0);
    for (std::size_t i = 1; i < m; ++i) {
      if (mask & (std::size_t{1} << (i - 1))) sign[i] = -1.0;
    }
    for (std::size_t i = 0; i < m; ++i) {
      lo_row[i] = sign[i] > 0 ? xs[i].lo() : -xs[i].hi();
      hi_row[i] = sign[i] > 0 ? xs[i].hi() : -xs[i].lo();
    }
    // Variables t_0..t_{m-1}, r. minimize r.
    lp::Problem p(m + 1);
    p.objective[m] = 1.0;
    lo_row[m] = -1.0;  // Σ t ℓ - r <= 0
    hi_row[m] = 1.0;   // Σ t υ + r >= 0
    p.add(lo_row, lp::Sense::LessEqual, 0.0);
    p.add(hi_row, lp::Sense::GreaterEqual, 0.0);
    std::vector<double> simplex(m + 1, 1.0);
    simplex[m] = 0.0;
    p.add(simplex, lp::Sense::Equal, 1.0);
    const lp::Solution s = lp::solve(p);
    if (s.status != lp::Status::Optimal || s.objective > tol) continue;
    LinearIndependence out;
    out.independent = false;
    out.witness.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.witness[i] = sign[i] * s.x[i];
    return out;
  }
  return {};
}

}  // namespace ivc
