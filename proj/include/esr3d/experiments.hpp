#ifndef ESR3D_EXPERIMENTS_HPP
#define ESR3D_EXPERIMENTS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "esr3d/generators.hpp"

namespace esr3d {

// Bundled validation cases: registrations of analytic family pairs whose
// expected distances are known from prior runs of this method. Each case
// registers a type-2 surface (first) against a gamma-warped type-1 surface
// (second) on a uniform 101x101 lattice.
struct ExperimentCase {
  std::string id;
  SurfaceFamily first;
  SurfaceFamily second;
  GammaWarp gamma;
  double reference_distance = 0.0;
  std::size_t m = 101;
  std::size_t n = 101;
};

const std::vector<ExperimentCase>& experiment_catalog();

// Throws UnknownCase for ids not in the catalog.
const ExperimentCase& find_experiment(std::string_view id);

}  // namespace esr3d

#endif
