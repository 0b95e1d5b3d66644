#ifndef ESR3D_REGISTRATION_HPP
#define ESR3D_REGISTRATION_HPP

#include <cstddef>
#include <vector>

#include "esr3d/curve_dp.hpp"
#include "esr3d/grid.hpp"
#include "esr3d/linalg.hpp"

namespace esr3d {

struct RegistrationConfig {
  double tol = 1e-6;  // stop when |E_curr - E_prev| < tol
  int iten = 10;      // iteration cap; the loop body runs at most iten+1 times
  DpConfig dp;
  int threads = 0;        // row-level parallelism; 0 = hardware concurrency
  bool validate = true;   // per-iteration monotonicity checks (cheap)
};

struct RegistrationResult {
  double energy = 0.0;    // E, squared distance
  double distance = 0.0;  // sqrt(E)
  Rotation3 rotation;     // applied to the first surface
  Warp2D warp;            // applied to the second surface
  SurfaceGrid registered_first;   // R * c1
  SurfaceGrid registered_second;  // c2 composed with the warp, row-wise
  ShapeField field_first;         // q1 after rotation
  ShapeField field_second;        // q2 after warping
  int iterations = 0;
  std::vector<double> energy_trace;  // E per iteration, length == iterations
  std::vector<double> row_energies;  // final E(h_j) per row
};

// Alternating minimization over rotations of the first surface and row-wise
// warps of the second: each iteration computes the best rotation for the
// current warped field, rotates q1, then rematches every row of the original
// q2 against the rotated rows by dynamic programming. Inputs must share
// partitions and should be unit-area normalized (see register_surfaces).
RegistrationResult dp_surface_min(const SurfaceGrid& c1, const SurfaceGrid& c2,
                                  const RegistrationConfig& cfg = {});

// Convenience wrapper: normalizes both surfaces to unit area first.
RegistrationResult register_surfaces(const SurfaceGrid& c1, const SurfaceGrid& c2,
                                     const RegistrationConfig& cfg = {});

struct CornerSearchResult {
  RegistrationResult best;
  std::size_t candidate_index = 0;  // index into corner_candidates(c2)
};

// Runs dp_surface_min against every corner candidate of the second surface
// (eight with transposed candidates, four without) and keeps the smallest
// distance.
CornerSearchResult register_with_corner_search(const SurfaceGrid& c1, const SurfaceGrid& c2,
                                               const RegistrationConfig& cfg = {},
                                               bool include_reversed = true);

}  // namespace esr3d

#endif
