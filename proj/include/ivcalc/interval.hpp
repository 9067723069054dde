#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ivc {

/// Default tie tolerance used when classifying endpoint comparisons.
inline constexpr double kCompareTol = 1e-12;

/// A compact real interval [lo, hi] with finite endpoints.
///
/// Arithmetic is plain floating point (no outward rounding); the type is a
/// calculus vehicle, not a validated-enclosure type.
class Interval {
 public:
  constexpr Interval() = default;
  /// Throws InvalidInterval if lo > hi or either endpoint is not finite.
  Interval(double lo, double hi);

  static Interval point(double v) { return Interval(v, v); }
  static constexpr Interval zero() { return Interval(); }

  constexpr double lo() const { return lo_; }
  constexpr double hi() const { return hi_; }
  constexpr double width() const { return hi_ - lo_; }
  double mid() const { return 0.5 * lo_ + 0.5 * hi_; }
  constexpr bool is_degenerate() const { return lo_ == hi_; }

  friend constexpr bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const Interval& a);
std::string to_string(const Interval& a);

// Moore arithmetic.
Interval add(const Interval& a, const Interval& b);
Interval moore_sub(const Interval& a, const Interval& b);
Interval mul(const Interval& a, const Interval& b);
Interval scalar_mul(double s, const Interval& a);
/// Throws DivisionByIntervalContainingZero when 0 lies in b.
Interval div(const Interval& a, const Interval& b);

inline Interval operator+(const Interval& a, const Interval& b) { return add(a, b); }
inline Interval operator-(const Interval& a, const Interval& b) { return moore_sub(a, b); }
inline Interval operator*(const Interval& a, const Interval& b) { return mul(a, b); }
inline Interval operator*(double s, const Interval& a) { return scalar_mul(s, a); }
inline Interval operator/(const Interval& a, const Interval& b) { return div(a, b); }

/// Generalized Hukuhara difference: the C with a = b + C or b = a - C.
Interval gh_difference(const Interval& a, const Interval& b);

/// max(|lo|, |hi|).
double norm(const Interval& a);

/// ‖a ⊖gH b‖, the metric induced by the gH-difference.
double gh_distance(const Interval& a, const Interval& b);

bool contains_zero(const Interval& a, double tol = 0.0);

// Endpoint predicates. All take a tie tolerance; an endpoint pair within tol
// is treated as equal.

/// a ⪯ b: a.lo <= b.lo and a.hi <= b.hi.
bool dominates(const Interval& a, const Interval& b, double tol = kCompareTol);
/// a ≺ b: a ⪯ b with at least one strict endpoint inequality.
bool strictly_dominates(const Interval& a, const Interval& b, double tol = kCompareTol);
/// a < b: both endpoint inequalities strict.
bool better_strictly_dominates(const Interval& a, const Interval& b,
                               double tol = kCompareTol);
bool nearly_equal(const Interval& a, const Interval& b, double tol = kCompareTol);
bool comparable(const Interval& a, const Interval& b, double tol = kCompareTol);

struct DominanceVerdict {
  enum class Kind { Dominates, StrictlyDominates, BetterStrictlyDominates, Equal, NotComparable };

  /// Strongest relation that holds between the two intervals. Which side
  /// dominates is given by the flags below.
  Kind kind = Kind::NotComparable;
  bool a_dominates_b = false;
  bool b_dominates_a = false;
  bool comparable = false;
};

std::string_view to_string(DominanceVerdict::Kind k);

DominanceVerdict dominance(const Interval& a, const Interval& b, double tol = kCompareTol);

/// Larger of two comparable intervals. Throws NotComparableError otherwise.
Interval max_comparable(const Interval& a, const Interval& b, double tol = kCompareTol);

/// Vector of intervals, an element of I(R)^n with n >= 1.
class IntervalVector {
 public:
  IntervalVector() = default;
  explicit IntervalVector(std::vector<Interval> components);

  std::size_t size() const { return components_.size(); }
  const Interval& operator[](std::size_t i) const { return components_[i]; }
  std::span<const Interval> components() const { return components_; }
  auto begin() const { return components_.begin(); }
  auto end() const { return components_.end(); }

  friend bool operator==(const IntervalVector&, const IntervalVector&) = default;

 private:
  std::vector<Interval> components_;
};

struct LinearIndependence {
  bool independent = true;
  /// Nonzero coefficient vector (unit l1 norm) with 0 in the combination,
  /// present only when the collection is dependent.
  std::vector<double> witness;
};

/// Decides whether 0 ∈ c1⊙X1 ⊕ ... ⊕ cm⊙Xm forces c = 0. Exact up to tol:
/// each sign orthant of c reduces to a small linear program.
/// Throws DimensionError on empty input.
LinearIndependence linearly_independent(std::span<const Interval> xs, double tol = 1e-12);

/// Combination Σ ci⊙Xi.
Interval linear_combination(std::span<const double> coeffs, std::span<const Interval> xs);

}  // namespace ivc
