#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <random>

#include "ivcalc/ivf.hpp"
#include "ivcalc/kernels.hpp"

using namespace ivc;
using namespace ivc::simd;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_bits(const IntervalArray& a, const IntervalArray& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_bits(a.lo()[i], b.lo()[i]) || !same_bits(a.hi()[i], b.hi()[i])) return false;
  }
  return true;
}

// Odd length exercises the vector tail; ties and degenerate intervals
// exercise the tolerance branches.
IntervalArray random_array(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-4, 4);
  std::uniform_int_distribution<int> kind(0, 5);
  IntervalArray a;
  for (std::size_t i = 0; i < n; ++i) {
    double x = u(rng), y = u(rng);
    switch (kind(rng)) {
      case 0: y = x; break;                  // degenerate
      case 1: x = std::round(x); y = std::round(y); break;  // ties across arrays
      default: break;
    }
    a.push_back(Interval(std::min(x, y), std::max(x, y)));
  }
  return a;
}

std::uint8_t reference_flags(const Interval& a, const Interval& b, double tol) {
  std::uint8_t f = 0;
  if (dominates(a, b, tol)) f |= kADominatesB;
  if (dominates(b, a, tol)) f |= kBDominatesA;
  if (strictly_dominates(a, b, tol)) f |= kAStrictlyDominatesB;
  if (strictly_dominates(b, a, tol)) f |= kBStrictlyDominatesA;
  if (better_strictly_dominates(a, b, tol)) f |= kABetterStrictlyB;
  if (better_strictly_dominates(b, a, tol)) f |= kBBetterStrictlyA;
  return f;
}

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(backend_available(Backend::Scalar));
  CHECK(backend_name(Backend::Scalar) == "scalar");
  CHECK(backend_available(best_backend()));
}

TEST_CASE("IVCALC_SIMD=scalar forces the reference path") {
  const char* env = std::getenv("IVCALC_SIMD");
  if (env && std::string_view(env) == "scalar") CHECK(best_backend() == Backend::Scalar);
}

TEST_CASE("scalar kernels match the single-interval operations") {
  std::mt19937_64 rng(21);
  const IntervalArray a = random_array(rng, 1001), b = random_array(rng, 1001);
  const IntervalArray s = add(a, b, Backend::Scalar);
  const IntervalArray d = moore_sub(a, b, Backend::Scalar);
  const IntervalArray g = gh_difference(a, b, Backend::Scalar);
  const IntervalArray m = scalar_mul(-1.7, a, Backend::Scalar);
  const std::vector<double> n = norm(a, Backend::Scalar);
  const auto f = dominance_flags(a, b, kCompareTol, Backend::Scalar);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(s[i] == ivc::add(a[i], b[i]));
    CHECK(d[i] == ivc::moore_sub(a[i], b[i]));
    CHECK(g[i] == ivc::gh_difference(a[i], b[i]));
    CHECK(m[i] == ivc::scalar_mul(-1.7, a[i]));
    CHECK(same_bits(n[i], ivc::norm(a[i])));
    CHECK(f[i] == reference_flags(a[i], b[i], kCompareTol));
  }
}

TEST_CASE("every backend agrees bit for bit with the scalar path") {
  std::mt19937_64 rng(22);
  for (Backend be : available_backends()) {
    CAPTURE(backend_name(be));
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1023u}) {
      const IntervalArray a = random_array(rng, n), b = random_array(rng, n);
      CHECK(same_bits(add(a, b, be), add(a, b, Backend::Scalar)));
      CHECK(same_bits(moore_sub(a, b, be), moore_sub(a, b, Backend::Scalar)));
      CHECK(same_bits(gh_difference(a, b, be), gh_difference(a, b, Backend::Scalar)));
      CHECK(same_bits(scalar_mul(0.3, a, be), scalar_mul(0.3, a, Backend::Scalar)));
      CHECK(same_bits(scalar_mul(-2.0, a, be), scalar_mul(-2.0, a, Backend::Scalar)));
      const auto nv = norm(a, be), ns = norm(a, Backend::Scalar);
      for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(nv[i], ns[i]));
      for (double tol : {0.0, kCompareTol, 0.5}) {
        CHECK(dominance_flags(a, b, tol, be) == dominance_flags(a, b, tol, Backend::Scalar));
        CHECK(dominance_flags(a, Interval(-1, 1), tol, be) ==
              dominance_flags(a, Interval(-1, 1), tol, Backend::Scalar));
      }
    }
  }
}

TEST_CASE("batched margins agree across backends and with a direct sum") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-3, 3);
  for (std::size_t dim : {1u, 2u, 5u}) {
    LabeledPoints pts(dim);
    for (int k = 0; k < 37; ++k) {
      Vec x(dim);
      for (double& c : x) c = u(rng);
      pts.push_back(x, k % 2 ? 1.0 : -1.0);
    }
    Vec w(dim);
    for (double& c : w) c = u(rng);
    const double b = u(rng);
    const auto ref = pts.margins(w, b, Backend::Scalar);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < dim; ++j) s += w[j] * pts.coord(k, j);
      CHECK(same_bits(ref[k], pts.label(k) * (s + b)));
    }
    for (Backend be : available_backends()) {
      const auto got = pts.margins(w, b, be);
      for (std::size_t k = 0; k < got.size(); ++k) CHECK(same_bits(got[k], ref[k]));
    }
  }
}
