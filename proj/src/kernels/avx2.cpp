#include "kernels_impl.hpp"

#if IVCALC_HAVE_AVX2_KERNELS

#include <immintrin.h>

#include <algorithm>
#include <cmath>

// Lane semantics mirror std::min/std::max exactly: std::min(a, b) is
// (b < a ? b : a), which is _mm256_min_pd(b, a). Same for max. This keeps
// signed zeros identical to the scalar path.
#define IVCALC_AVX2 __attribute__((target("avx2")))

namespace ivc::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;

IVCALC_AVX2 inline __m256d vmin(__m256d a, __m256d b) { return _mm256_min_pd(b, a); }
IVCALC_AVX2 inline __m256d vmax(__m256d a, __m256d b) { return _mm256_max_pd(b, a); }
IVCALC_AVX2 inline __m256d vabs(__m256d a) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), a);
}

IVCALC_AVX2 void add(const double* alo, const double* ahi, const double* blo, const double* bhi,
                     double* olo, double* ohi, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_pd(olo + i, _mm256_add_pd(_mm256_loadu_pd(alo + i), _mm256_loadu_pd(blo + i)));
    _mm256_storeu_pd(ohi + i, _mm256_add_pd(_mm256_loadu_pd(ahi + i), _mm256_loadu_pd(bhi + i)));
  }
  for (; i < n; ++i) {
    olo[i] = alo[i] + blo[i];
    ohi[i] = ahi[i] + bhi[i];
  }
}

IVCALC_AVX2 void moore_sub(const double* alo, const double* ahi, const double* blo,
                           const double* bhi, double* olo, double* ohi, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_pd(olo + i, _mm256_sub_pd(_mm256_loadu_pd(alo + i), _mm256_loadu_pd(bhi + i)));
    _mm256_storeu_pd(ohi + i, _mm256_sub_pd(_mm256_loadu_pd(ahi + i), _mm256_loadu_pd(blo + i)));
  }
  for (; i < n; ++i) {
    olo[i] = alo[i] - bhi[i];
    ohi[i] = ahi[i] - blo[i];
  }
}

IVCALC_AVX2 void gh_difference(const double* alo, const double* ahi, const double* blo,
                               const double* bhi, double* olo, double* ohi, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d dl = _mm256_sub_pd(_mm256_loadu_pd(alo + i), _mm256_loadu_pd(blo + i));
    const __m256d dh = _mm256_sub_pd(_mm256_loadu_pd(ahi + i), _mm256_loadu_pd(bhi + i));
    _mm256_storeu_pd(olo + i, vmin(dl, dh));
    _mm256_storeu_pd(ohi + i, vmax(dl, dh));
  }
  for (; i < n; ++i) {
    const double dl = alo[i] - blo[i];
    const double dh = ahi[i] - bhi[i];
    olo[i] = std::min(dl, dh);
    ohi[i] = std::max(dl, dh);
  }
}

IVCALC_AVX2 void scalar_mul(double s, const double* lo, const double* hi, double* olo,
                            double* ohi, std::size_t n) {
  if (s == 0.0) {
    std::fill(olo, olo + n, 0.0);
    std::fill(ohi, ohi + n, 0.0);
    return;
  }
  const bool pos = s > 0.0;
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d a = _mm256_mul_pd(vs, _mm256_loadu_pd(lo + i));
    const __m256d b = _mm256_mul_pd(vs, _mm256_loadu_pd(hi + i));
    _mm256_storeu_pd(olo + i, pos ? a : b);
    _mm256_storeu_pd(ohi + i, pos ? b : a);
  }
  for (; i < n; ++i) {
    const double a = s * lo[i];
    const double b = s * hi[i];
    olo[i] = pos ? a : b;
    ohi[i] = pos ? b : a;
  }
}

IVCALC_AVX2 void norm(const double* lo, const double* hi, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_pd(out + i,
                     vmax(vabs(_mm256_loadu_pd(lo + i)), vabs(_mm256_loadu_pd(hi + i))));
  }
  for (; i < n; ++i) out[i] = std::max(std::abs(lo[i]), std::abs(hi[i]));
}

IVCALC_AVX2 inline std::uint8_t flags_tail(double alo, double ahi, double blo, double bhi,
                                           double tol) {
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

IVCALC_AVX2 inline void flags_block(__m256d alo, __m256d ahi, __m256d blo, __m256d bhi,
                                    __m256d vtol, std::uint8_t* out) {
  const __m256d blo_p = _mm256_add_pd(blo, vtol);
  const __m256d bhi_p = _mm256_add_pd(bhi, vtol);
  const __m256d alo_p = _mm256_add_pd(alo, vtol);
  const __m256d ahi_p = _mm256_add_pd(ahi, vtol);
  const __m256d blo_m = _mm256_sub_pd(blo, vtol);
  const __m256d bhi_m = _mm256_sub_pd(bhi, vtol);
  const __m256d alo_m = _mm256_sub_pd(alo, vtol);
  const __m256d ahi_m = _mm256_sub_pd(ahi, vtol);

  const __m256d ab = _mm256_and_pd(_mm256_cmp_pd(alo, blo_p, _CMP_LE_OQ),
                                   _mm256_cmp_pd(ahi, bhi_p, _CMP_LE_OQ));
  const __m256d ba = _mm256_and_pd(_mm256_cmp_pd(blo, alo_p, _CMP_LE_OQ),
                                   _mm256_cmp_pd(bhi, ahi_p, _CMP_LE_OQ));
  const __m256d a_lt_lo = _mm256_cmp_pd(alo, blo_m, _CMP_LT_OQ);
  const __m256d a_lt_hi = _mm256_cmp_pd(ahi, bhi_m, _CMP_LT_OQ);
  const __m256d b_lt_lo = _mm256_cmp_pd(blo, alo_m, _CMP_LT_OQ);
  const __m256d b_lt_hi = _mm256_cmp_pd(bhi, ahi_m, _CMP_LT_OQ);

  const int m_ab = _mm256_movemask_pd(ab);
  const int m_ba = _mm256_movemask_pd(ba);
  const int m_sab = _mm256_movemask_pd(_mm256_and_pd(ab, _mm256_or_pd(a_lt_lo, a_lt_hi)));
  const int m_sba = _mm256_movemask_pd(_mm256_and_pd(ba, _mm256_or_pd(b_lt_lo, b_lt_hi)));
  const int m_bab = _mm256_movemask_pd(_mm256_and_pd(a_lt_lo, a_lt_hi));
  const int m_bba = _mm256_movemask_pd(_mm256_and_pd(b_lt_lo, b_lt_hi));
  for (int l = 0; l < 4; ++l) {
    std::uint8_t f = 0;
    if (m_ab >> l & 1) f |= kADominatesB;
    if (m_ba >> l & 1) f |= kBDominatesA;
    if (m_sab >> l & 1) f |= kAStrictlyDominatesB;
    if (m_sba >> l & 1) f |= kBStrictlyDominatesA;
    if (m_bab >> l & 1) f |= kABetterStrictlyB;
    if (m_bba >> l & 1) f |= kBBetterStrictlyA;
    out[l] = f;
  }
}

IVCALC_AVX2 void dominance_flags(const double* alo, const double* ahi, const double* blo,
                                 const double* bhi, double tol, std::uint8_t* out,
                                 std::size_t n) {
  const __m256d vtol = _mm256_set1_pd(tol);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    flags_block(_mm256_loadu_pd(alo + i), _mm256_loadu_pd(ahi + i), _mm256_loadu_pd(blo + i),
                _mm256_loadu_pd(bhi + i), vtol, out + i);
  }
  for (; i < n; ++i) out[i] = flags_tail(alo[i], ahi[i], blo[i], bhi[i], tol);
}

IVCALC_AVX2 void dominance_flags_vs(const double* alo, const double* ahi, double blo, double bhi,
                                    double tol, std::uint8_t* out, std::size_t n) {
  const __m256d vtol = _mm256_set1_pd(tol);
  const __m256d vblo = _mm256_set1_pd(blo);
  const __m256d vbhi = _mm256_set1_pd(bhi);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    flags_block(_mm256_loadu_pd(alo + i), _mm256_loadu_pd(ahi + i), vblo, vbhi, vtol, out + i);
  }
  for (; i < n; ++i) out[i] = flags_tail(alo[i], ahi[i], blo, bhi, tol);
}

IVCALC_AVX2 void affine_margins(const double* const* cols, std::size_t dim, const double* y,
                                const double* w, double b, double* out, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    __m256d s = _mm256_setzero_pd();
    for (std::size_t j = 0; j < dim; ++j) {
      s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_set1_pd(w[j]), _mm256_loadu_pd(cols[j] + k)));
    }
    _mm256_storeu_pd(out + k, _mm256_mul_pd(_mm256_loadu_pd(y + k), _mm256_add_pd(s, vb)));
  }
  for (; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < dim; ++j) s += w[j] * cols[j][k];
    out[k] = y[k] * (s + b);
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{add,  moore_sub,       gh_difference,      scalar_mul,
                                 norm, dominance_flags, dominance_flags_vs, affine_margins};
  return table;
}

}  // namespace ivc::simd::detail

#endif
