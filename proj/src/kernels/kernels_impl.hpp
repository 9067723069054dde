#pragma once

#include "ivcalc/kernels.hpp"

namespace ivc::simd::detail {

const KernelTable& scalar_table();

#if defined(__x86_64__) || defined(_M_X64)
#define IVCALC_HAVE_AVX2_KERNELS 1
const KernelTable& avx2_table();
#else
#define IVCALC_HAVE_AVX2_KERNELS 0
#endif

}  // namespace ivc::simd::detail
