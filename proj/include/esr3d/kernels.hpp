#ifndef ESR3D_KERNELS_HPP
#define ESR3D_KERNELS_HPP

#include <cstddef>

namespace esr3d::kernels {

// Data-parallel inner loops over structure-of-arrays lattices (index i + m*j,
// i fastest). Scalar reference implementations always exist; an AVX2+FMA
// variant is selected at runtime when the CPU supports it. The variants are
// equivalence-tested against each other; results may differ by rounding only.
struct Table {
  // sum_j wt[j] sum_i wr[i] |a(i,j) - b(i,j)|^2
  double (*weighted_ssd)(const double* ax, const double* ay, const double* az,
                         const double* bx, const double* by, const double* bz,
                         const double* wr, std::size_t m, const double* wt, std::size_t n);

  // out[3k+l] = sum_j wt[j] sum_i wr[i] a_k(i,j) b_l(i,j)
  void (*cross_covariance)(const double* ax, const double* ay, const double* az,
                           const double* bx, const double* by, const double* bz,
                           const double* wr, std::size_t m, const double* wt, std::size_t n,
                           double out[9]);

  // out = R * v elementwise; R row-major. In-place allowed (out == in).
  void (*rotate_vectors)(const double r[9], const double* x, const double* y, const double* z,
                         double* ox, double* oy, double* oz, std::size_t count);

  // q = (a x b) / sqrt(|a x b|), or 0 where |a x b| <= eps.
  void (*cross_normalize)(const double* ax, const double* ay, const double* az,
                          const double* bx, const double* by, const double* bz,
                          double* qx, double* qy, double* qz, std::size_t count, double eps);

  // Sum of the areas of the two triangles per lattice cell:
  // (c(i,j), c(i+1,j+1), c(i,j+1)) and (c(i,j), c(i+1,j), c(i+1,j+1)).
  double (*triangle_area_sum)(const double* x, const double* y, const double* z,
                              std::size_t m, std::size_t n);
};

// Active table: AVX2 when available unless ESR3D_KERNELS=scalar is set.
const Table& active();

const Table& scalar();

// nullptr when the CPU (or build target) lacks AVX2/FMA.
const Table* avx2();

// Name of the active variant ("scalar" or "avx2"), for diagnostics.
const char* active_name();

}  // namespace esr3d::kernels

#endif
