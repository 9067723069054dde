#pragma once

// Worked instances shared by the CLI gallery, the acceptance run and tests.

#include <string>
#include <vector>

#include "ivcalc/calculus.hpp"
#include "ivcalc/interval.hpp"
#include "ivcalc/ivf.hpp"
#include "ivcalc/optimality.hpp"
#include "ivcalc/svm.hpp"

namespace ivc::gallery {

/// ‖x‖² ⊙ C on Rⁿ.
Ivf squared_norm(std::size_t n, Interval c);
/// ‖x‖ ⊙ C on Rⁿ.
Ivf norm_times(std::size_t n, Interval c);
/// x⁶/((y−x²)² + x⁸) ⊙ C on R², zero at the origin.
Ivf rational_r2(Interval c);
/// Schedules aimed at the origin of rational_r2: (1/n, (1/n, 1/n³)) and the
/// parabola y = λx².
std::vector<PathSchedule> r2_schedules();
/// [−4x², 6x²].
Ivf nee1();
/// [x², 3x²].
Ivf x2_3x2();
/// Σ a_i x_i + b as a degenerate IVF, scaled by C.
Ivf affine(Vec a, double b, Interval c);
/// [0,1] for x ≤ 0, [1,2] for x > 0.
Ivf step();
/// Outer map of the composition counterexample: rational_r2 with C=[2,6].
Ivf ex31_outer();
/// x ↦ (x, x²).
VecFn ex31_inner();
/// x²⊙[1,2], (2x²−1)⊙[1,2], ((x²+1)/2)⊙[1,2]: comparable everywhere, all
/// equal at x = 1.
std::vector<Ivf> max_family();

/// [4x²−4x+1, 2x²+75] on [−1, 2].
IOPInstance ne1();
/// [x²−4x+4, x²+5] on [−1, 7], as the hull of the two endpoint functions
/// (they cross at x = −1/4).
IOPInstance remark_in();
/// [x², 3x²] on R (a linear subspace).
IOPInstance x2_3x2_problem();

/// A constrained convex instance with a known efficient point and the
/// multipliers a hand computation gives.
struct KKTCase {
  IOPInstance iop;
  Vec point;
  double fj_u0 = 0.0;  // Fritz John u₀ at the largest-u₀ solution
  Vec kkt_u;           // multipliers after normalising u₀ = 1
};
std::vector<KKTCase> kkt_cases();
/// [x, x] on R at 0: not efficient.
IOPInstance linear_unconstrained();

/// {([1,1], +1), ([−1,−1], −1)}.
SVMDataset svm_degenerate();
/// {([1,2], +1), ([−2,−1], −1)}.
SVMDataset svm_interval_1d();
/// {([−1,1], +1), ([0,2], −1)}.
SVMDataset svm_overlapping();
/// Six separable 2D points; widening by `pad` turns each into a box.
SVMDataset svm_points_2d(double pad = 0.0);

}  // namespace ivc::gallery
