#pragma once

// Batched interval kernels over structure-of-arrays storage.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected at runtime. The variants use only IEEE add/sub/mul/min/max
// and compares, and the project is built with -ffp-contract=off, so the
// variants agree bit for bit with the scalar path and with the single-interval
// functions in interval.hpp.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ivcalc/interval.hpp"

namespace ivc::simd {

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend b);
bool backend_available(Backend b);
/// Widest available backend. IVCALC_SIMD=scalar in the environment forces the
/// reference path. Resolved once per process.
Backend best_backend();
std::vector<Backend> available_backends();

// Bits reported by dominance_flags for the pair (a, b).
inline constexpr std::uint8_t kADominatesB = 1u << 0;        // a ⪯ b
inline constexpr std::uint8_t kBDominatesA = 1u << 1;        // b ⪯ a
inline constexpr std::uint8_t kAStrictlyDominatesB = 1u << 2;  // a ≺ b
inline constexpr std::uint8_t kBStrictlyDominatesA = 1u << 3;  // b ≺ a
inline constexpr std::uint8_t kABetterStrictlyB = 1u << 4;   // a < b
inline constexpr std::uint8_t kBBetterStrictlyA = 1u << 5;   // b < a

/// Raw kernel table. Pointers may alias only where noted (outputs never alias
/// inputs).
struct KernelTable {
  void (*add)(const double* alo, const double* ahi, const double* blo, const double* bhi,
              double* olo, double* ohi, std::size_t n);
  void (*moore_sub)(const double* alo, const double* ahi, const double* blo, const double* bhi,
                    double* olo, double* ohi, std::size_t n);
  void (*gh_difference)(const double* alo, const double* ahi, const double* blo,
                        const double* bhi, double* olo, double* ohi, std::size_t n);
  void (*scalar_mul)(double s, const double* lo, const double* hi, double* olo, double* ohi,
                     std::size_t n);
  void (*norm)(const double* lo, const double* hi, double* out, std::size_t n);
  void (*dominance_flags)(const double* alo, const double* ahi, const double* blo,
                          const double* bhi, double tol, std::uint8_t* out, std::size_t n);
  /// Flags for every a[i] against one fixed interval b.
  void (*dominance_flags_vs)(const double* alo, const double* ahi, double blo, double bhi,
                             double tol, std::uint8_t* out, std::size_t n);
  /// out[k] = y[k] * (Σ_j w[j] * cols[j][k] + b) for k < n, summed in j order.
  void (*affine_margins)(const double* const* cols, std::size_t dim, const double* y,
                         const double* w, double b, double* out, std::size_t n);
};

const KernelTable& kernels(Backend b);

/// Owning SoA array of intervals.
class IntervalArray {
 public:
  IntervalArray() = default;
  explicit IntervalArray(std::size_t n) : lo_(n, 0.0), hi_(n, 0.0) {}
  explicit IntervalArray(std::span<const Interval> xs);

  std::size_t size() const { return lo_.size(); }
  void reserve(std::size_t n) {
    lo_.reserve(n);
    hi_.reserve(n);
  }
  void push_back(const Interval& a) {
    lo_.push_back(a.lo());
    hi_.push_back(a.hi());
  }
  Interval operator[](std::size_t i) const { return Interval(lo_[i], hi_[i]); }

  std::span<const double> lo() const { return lo_; }
  std::span<const double> hi() const { return hi_; }
  std::span<double> lo() { return lo_; }
  std::span<double> hi() { return hi_; }

 private:
  std::vector<double> lo_;
  std::vector<double> hi_;
};

IntervalArray add(const IntervalArray& a, const IntervalArray& b, Backend be = best_backend());
IntervalArray moore_sub(const IntervalArray& a, const IntervalArray& b,
                        Backend be = best_backend());
IntervalArray gh_difference(const IntervalArray& a, const IntervalArray& b,
                            Backend be = best_backend());
IntervalArray scalar_mul(double s, const IntervalArray& a, Backend be = best_backend());
std::vector<double> norm(const IntervalArray& a, Backend be = best_backend());
std::vector<std::uint8_t> dominance_flags(const IntervalArray& a, const IntervalArray& b,
                                          double tol = kCompareTol,
                                          Backend be = best_backend());
std::vector<std::uint8_t> dominance_flags(const IntervalArray& a, const Interval& b,
                                          double tol = kCompareTol,
                                          Backend be = best_backend());

/// Column-major point set (one column per coordinate) with ±1 labels, used
/// for batched margin evaluation.
class LabeledPoints {
 public:
  explicit LabeledPoints(std::size_t dim) : cols_(dim) {}

  std::size_t dim() const { return cols_.size(); }
  std::size_t size() const { return labels_.size(); }
  void push_back(std::span<const double> x, double label);
  double coord(std::size_t k, std::size_t j) const { return cols_[j][k]; }
  double label(std::size_t k) const { return labels_[k]; }
  std::vector<double> point(std::size_t k) const;

  /// y_k (wᵀx_k + b) for every point.
  std::vector<double> margins(std::span<const double> w, double b,
                              Backend be = best_backend()) const;

 private:
  std::vector<std::vector<double>> cols_;
  std::vector<double> labels_;
};

}  // namespace ivc::simd
