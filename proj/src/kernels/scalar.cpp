#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

namespace ivc::simd::detail {
namespace {

void add(const double* alo, const double* ahi, const double* blo, const double* bhi, double* olo,
         double* ohi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    olo[i] = alo[i] + blo[i];
    ohi[i] = ahi[i] + bhi[i];
  }
}

void moore_sub(const double* alo, const double* ahi, const double* blo, const double* bhi,
               double* olo, double* ohi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    olo[i] = alo[i] - bhi[i];
    ohi[i] = ahi[i] - blo[i];
  }
}

void gh_difference(const double* alo, const double* ahi, const double* blo, const double* bhi,
                   double* olo, double* ohi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dl = alo[i] - blo[i];
    const double dh = ahi[i] - bhi[i];
    olo[i] = std::min(dl, dh);
    ohi[i] = std::max(dl, dh);
  }
}

void scalar_mul(double s, const double* lo, const double* hi, double* olo, double* ohi,
                std::size_t n) {
  if (s == 0.0) {
    std::fill(olo, olo + n, 0.0);
    std::fill(ohi, ohi + n, 0.0);
    return;
  }
  const bool pos = s > 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = s * lo[i];
    const double b = s * hi[i];
    olo[i] = pos ? a : b;
    ohi[i] = pos ? b : a;
  }
}

void norm(const double* lo, const double* hi, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::max(std::abs(lo[i]), std::abs(hi[i]));
}

inline std::uint8_t flags_one(double alo, double ahi, double blo, double bhi, double tol) {
  const bool ab = alo <= blo + tol && ahi <= bhi + tol;
  const bool ba = blo <= alo + tol && bhi <= ahi + tol;
  const bool a_lt_lo = alo < blo - tol;
  const bool a_lt_hi = ahi < bhi - tol;
  const bool b_lt_lo = blo < alo - tol;
  const bool b_lt_hi = bhi < ahi - tol;
  std::uint8_t f = 0;
  if (ab) f |= kADominatesB;
  if (ba) f |= kBDominatesA;
  if (ab && (a_lt_lo || a_lt_hi)) f |= kAStrictlyDominatesB;
  if (ba && (b_lt_lo || b_lt_hi)) f |= kBStrictlyDominatesA;
  if (a_lt_lo && a_lt_hi) f |= kABetterStrictlyB;
  if (b_lt_lo && b_lt_hi) f |= kBBetterStrictlyA;
  return f;
}

void dominance_flags(const double* alo, const double* ahi, const double* blo, const double* bhi,
                     double tol, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = flags_one(alo[i], ahi[i], blo[i], bhi[i], tol);
}

void dominance_flags_vs(const double* alo, const double* ahi, double blo, double bhi, double tol,
                        std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = flags_one(alo[i], ahi[i], blo, bhi, tol);
}

void affine_margins(const double* const* cols, std::size_t dim, const double* y, const double* w,
                    double b, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < dim; ++j) s += w[j] * cols[j][k];
    out[k] = y[k] * (s + b);
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{add,  moore_sub,       gh_difference,      scalar_mul,
                                 norm, dominance_flags, dominance_flags_vs, affine_margins};
  return table;
}

}  // namespace ivc::simd::detail
