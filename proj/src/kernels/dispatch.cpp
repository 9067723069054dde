#include <cstdlib>
#include <string>

#include "ivcalc/errors.hpp"
#include "kernels_impl.hpp"

namespace ivc::simd {

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
  }
  return "?";
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if IVCALC_HAVE_AVX2_KERNELS
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Backend best_backend() {
  static const Backend chosen = [] {
    if (const char* env = std::getenv("IVCALC_SIMD")) {
      if (std::string(env) == "scalar") return Backend::Scalar;
    }
    return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
  }();
  return chosen;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::Scalar};
  if (backend_available(Backend::Avx2)) out.push_back(Backend::Avx2);
  return out;
}

const KernelTable& kernels(Backend b) {
#if IVCALC_HAVE_AVX2_KERNELS
  if (b == Backend::Avx2) {
    if (!backend_available(b)) throw Error("AVX2 kernels requested on a CPU without AVX2");
    return detail::avx2_table();
  }
#endif
  (void)b;
  return detail::scalar_table();
}

IntervalArray::IntervalArray(std::span<const Interval> xs) {
  reserve(xs.size());
  for (const Interval& a : xs) push_back(a);
}

namespace {

void require_same_size(const IntervalArray& a, const IntervalArray& b) {
  if (a.size() != b.size()) throw DimensionError("interval arrays differ in length");
}

template <typename Fn>
IntervalArray binary(const IntervalArray& a, const IntervalArray& b, Fn fn) {
  require_same_size(a, b);
  IntervalArray out(a.size());
  fn(a.lo().data(), a.hi().data(), b.lo().data(), b.hi().data(), out.lo().data(),
     out.hi().data(), a.size());
  return out;
}

}  // namespace

IntervalArray add(const IntervalArray& a, const IntervalArray& b, Backend be) {
  return binary(a, b, kernels(be).add);
}

IntervalArray moore_sub(const IntervalArray& a, const IntervalArray& b, Backend be) {
  return binary(a, b, kernels(be).moore_sub);
}

IntervalArray gh_difference(const IntervalArray& a, const IntervalArray& b, Backend be) {
  return binary(a, b, kernels(be).gh_difference);
}

IntervalArray scalar_mul(double s, const IntervalArray& a, Backend be) {
  IntervalArray out(a.size());
  kernels(be).scalar_mul(s, a.lo().data(), a.hi().data(), out.lo().data(), out.hi().data(),
                         a.size());
  return out;
}

std::vector<double> norm(const IntervalArray& a, Backend be) {
  std::vector<double> out(a.size());
  kernels(be).norm(a.lo().data(), a.hi().data(), out.data(), a.size());
  return out;
}

std::vector<std::uint8_t> dominance_flags(const IntervalArray& a, const IntervalArray& b,
                                          double tol, Backend be) {
  require_same_size(a, b);
  std::vector<std::uint8_t> out(a.size());
  kernels(be).dominance_flags(a.lo().data(), a.hi().data(), b.lo().data(), b.hi().data(), tol,
                              out.data(), a.size());
  return out;
}

std::vector<std::uint8_t> dominance_flags(const IntervalArray& a, const Interval& b, double tol,
                                          Backend be) {
  std::vector<std::uint8_t> out(a.size());
  kernels(be).dominance_flags_vs(a.lo().data(), a.hi().data(), b.lo(), b.hi(), tol, out.data(),
                                 a.size());
  return out;
}

void LabeledPoints::push_back(std::span<const double> x, double label) {
  if (x.size() != cols_.size()) throw DimensionError("point dimension mismatch");
  for (std::size_t j = 0; j < x.size(); ++j) cols_[j].push_back(x[j]);
  labels_.push_back(label);
}

std::vector<double> LabeledPoints::point(std::size_t k) const {
  std::vector<double> x(cols_.size());
  for (std::size_t j = 0; j < cols_.size(); ++j) x[j] = cols_[j][k];
  return x;
}

std::vector<double> LabeledPoints::margins(std::span<const double> w, double b,
                                           Backend be) const {
  if (w.size() != cols_.size()) throw DimensionError("weight dimension mismatch");
  std::vector<const double*> cols(cols_.size());
  for (std::size_t j = 0; j < cols_.size(); ++j) cols[j] = cols_[j].data();
  std::vector<double> out(size());
  kernels(be).affine_margins(cols.data(), cols.size(), labels_.data(), w.data(), b, out.data(),
                             size());
  return out;
}

}  // namespace ivc::simd
