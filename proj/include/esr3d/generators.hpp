#ifndef ESR3D_GENERATORS_HPP
#define ESR3D_GENERATORS_HPP

#include <string>

#include "esr3d/grid.hpp"
#include "esr3d/linalg.hpp"

namespace esr3d {

// Analytic test-surface families on the unit square. For each family, type 1
// equals P * type 2 pointwise with P = [[0,1,0],[0,0,1],[1,0,0]]:
//   sine 1:      (r, t, sin k pi r)
//   sine 2:      (sin k pi r, r, t)
//   helicoid 1:  (r cos k pi t, r sin k pi t, k pi t)
//   helicoid 2:  (k pi t, r cos k pi t, r sin k pi t)
//   cos-sine 1:  (r, t, cos(pi r / 2) sin(pi t / 2))
//   cos-sine 2:  (cos(pi r / 2) sin(pi t / 2), r, t)
// The cosine-sine family has no frequency parameter; k is ignored there.
enum class SurfaceKind {
  SineType1,
  SineType2,
  HelicoidType1,
  HelicoidType2,
  CosSineType1,
  CosSineType2,
};

struct SurfaceFamily {
  SurfaceKind kind = SurfaceKind::SineType1;
  int k = 1;
};

// The fixed permutation rotation relating type 1 and type 2 of each family.
Mat3 family_pair_rotation();

Vec3 evaluate(const SurfaceFamily& f, double r, double t);

SurfaceGrid generate(const SurfaceFamily& f, const Partition& r, const Partition& t);

// Coordinate power warp gamma(r,t) = (r^a, t^b) of the unit square; exponents
// >= 1 keep it a bijection fixing the corners.
struct GammaWarp {
  double exponent_r = 1.0;
  double exponent_t = 1.0;
};

// Resamples the family at the warped parameters: the output keeps g's
// partitions but holds the closed-form points c(gamma(r_i, t_j)).
SurfaceGrid apply_gamma(const SurfaceGrid& g, const GammaWarp& w, const SurfaceFamily& f);

// Parsing for the CLI ("sine1", "sine2", "helicoid1", "helicoid2",
// "cossine1", "cossine2"); throws InvalidArgument on unknown names.
SurfaceKind parse_surface_kind(const std::string& name);
const char* surface_kind_name(SurfaceKind kind);

}  // namespace esr3d

#endif
