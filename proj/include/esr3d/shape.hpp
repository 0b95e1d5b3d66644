#ifndef ESR3D_SHAPE_HPP
#define ESR3D_SHAPE_HPP

#include <vector>

#include "esr3d/grid.hpp"
#include "esr3d/linalg.hpp"

namespace esr3d {

// Cutoff below which a cross-product norm counts as degenerate and the shape
// function is set to the zero vector.
inline constexpr double kZeroNormalEps = 1e-12;

struct PartialDerivatives {
  std::size_t m = 0;
  std::size_t n = 0;
  // d/dr and d/dt planes, same i + m*j layout as the grid.
  std::vector<double> rx, ry, rz;
  std::vector<double> tx, ty, tz;
};

struct AreaEstimate {
  double value = 0.0;
};

// Centered differences at interior nodes, one-sided first-order differences at
// the boundary. Requires M >= 3 and N >= 3 (GridTooSmall otherwise).
PartialDerivatives partial_derivatives(const SurfaceGrid& g);

// q = (c_r x c_t) / sqrt(|c_r x c_t|), zero vector where the cross product is
// degenerate.
ShapeField shape_function(const SurfaceGrid& g);

// Sum of the areas of the two triangles per lattice cell. Requires M,N >= 2.
AreaEstimate surface_area(const SurfaceGrid& g);

// Scales all points by 1/sqrt(area) so the triangulated area becomes 1.
// DegenerateSurface when the area is not positive.
SurfaceGrid normalize_unit_area(const SurfaceGrid& g);

// (q,h): row j of the result is q_j(h_j(r_i)) * sqrt(h_j'(r_i)), with q_j
// evaluated between nodes by a per-row natural cubic spline.
ShapeField warp_action(const ShapeField& q, const Warp2D& h);

// Trapezoidal discretization of the L2 distance:
// sqrt( sum_j wt_j sum_i wr_i |q1(r_i,t_j) - q2(r_i,t_j)|^2 ).
double field_distance(const ShapeField& q1, const ShapeField& q2);

ShapeField rotate(const ShapeField& q, const Mat3& r);
SurfaceGrid rotate(const SurfaceGrid& g, const Mat3& r);

}  // namespace esr3d

#endif
