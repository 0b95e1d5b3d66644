#ifndef ESR3D_CURVE_DP_HPP
#define ESR3D_CURVE_DP_HPP

#include <vector>

#include "esr3d/grid.hpp"
#include "esr3d/partition.hpp"
#include "esr3d/spline.hpp"

namespace esr3d {

// The row matcher runs up to three stages, each keeping the better path:
//   1. lattice DP: moves (di, dm) with 1 <= dm <= max_slope_num,
//      1 <= di <= max_slope_den, gcd(di, dm) = 1, on the grid-value lattice;
//   2. fine-value DP: single-column steps onto a value grid refined by
//      fine_res, slopes within [1/fine_slope_limit, fine_slope_limit]; this
//      admits the steep matches (locally crushing or stretching a segment)
//      that the small rational move set cannot express;
//   3. refine_passes banded re-solves that shrink the value quantization
//      around the incumbent (band halfwidth refine_band steps, step halving
//      per pass); never increases the objective.
// fine_slope_limit = 0 disables stage 2, refine_passes = 0 stage 3; with
// both disabled the result is the pure lattice optimum.
struct DpConfig {
  int max_slope_num = 4;
  int max_slope_den = 4;
  int fine_slope_limit = 32;
  int fine_res = 2;
  int refine_passes = 10;
  int refine_band = 16;
};

struct RowEnergy {
  double value = 0.0;              // sum_i wr_i * per_node[i]
  std::vector<double> per_node;    // |q1(r_i) - q2(h(r_i)) sqrt(h'(r_i))|^2
};

// Discretized row matching energy E(h) for two sampled curves, with q2
// evaluated between nodes by a natural cubic spline. The weighted node sum
// equals the trapezoid form (1/2) sum_i Dr_i (E_i + E_{i+1}).
RowEnergy row_energy(RowView3 q1, RowView3 q2, const Diffeo1D& h, const Partition& r);

struct DpRowMatch {
  Diffeo1D diffeo;
  // Energy of the winning path under the DP cost convention: node i < M-1
  // carries the slope of the move leaving it (its forward difference), the
  // last node the slope of the move entering it.
  double objective = 0.0;
};

// Minimizes the row energy over monotone lattice paths from (0,0) to
// (M-1,M-1) whose moves satisfy the slope window, then optionally refines the
// sample values off-lattice. Interior columns skipped by a multi-column move
// take linearly interpolated h values and the move's constant slope. The
// returned derivative follows the forward-difference rule with the backward
// difference at the last node. Ties break to the first-found predecessor in
// (di, dm) ascending scan order. Requires M >= 3.
DpRowMatch dp_match(RowView3 q1, RowView3 q2, const Partition& r, const DpConfig& cfg = {});

// Variant reusing a precomputed spline of q2 (must interpolate q2 over r).
DpRowMatch dp_match(RowView3 q1, RowView3 q2, const CubicSpline3& q2_spline,
                    const Partition& r, const DpConfig& cfg = {});

}  // namespace esr3d

#endif
