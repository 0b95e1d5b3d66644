#include "esr3d/experiments.hpp"

#include "esr3d/errors.hpp"

namespace esr3d {

const std::vector<ExperimentCase>& experiment_catalog() {
  static const std::vector<ExperimentCase> cases = [] {
    const GammaWarp gr{1.25, 1.0};
    const GammaWarp grt{1.25, 1.25};
    std::vector<ExperimentCase> v;
    v.push_back({"sine-k2-gr", {SurfaceKind::SineType2, 2}, {SurfaceKind::SineType1, 2}, gr,
                 0.0003, 101, 101});
    v.push_back({"sine-k3-gr", {SurfaceKind::SineType2, 2}, {SurfaceKind::SineType1, 3}, gr,
                 0.3479, 101, 101});
    v.push_back({"sine-k4-gr", {SurfaceKind::SineType2, 2}, {SurfaceKind::SineType1, 4}, gr,
                 0.3192, 101, 101});
    v.push_back({"sine-k2-grt", {SurfaceKind::SineType2, 2}, {SurfaceKind::SineType1, 2}, grt,
                 0.0126, 101, 101});
    v.push_back({"helicoid-gr", {SurfaceKind::HelicoidType2, 4}, {SurfaceKind::HelicoidType1, 4},
                 gr, 0.0002, 101, 101});
    v.push_back({"helicoid-grt", {SurfaceKind::HelicoidType2, 4}, {SurfaceKind::HelicoidType1, 4},
                 grt, 0.0796, 101, 101});
    v.push_back({"cossine-gr", {SurfaceKind::CosSineType2, 1}, {SurfaceKind::CosSineType1, 1}, gr,
                 0.0002, 101, 101});
    v.push_back({"cossine-grt", {SurfaceKind::CosSineType2, 1}, {SurfaceKind::CosSineType1, 1},
                 grt, 0.0143, 101, 101});
    return v;
  }();
  return cases;
}

const ExperimentCase& find_experiment(std::string_view id) {
  for (const ExperimentCase& c : experiment_catalog()) {
    if (c.id == id) return c;
  }
  std::string known;
  for (const ExperimentCase& c : experiment_catalog()) {
    known += known.empty() ? c.id : ", " + c.id;
  }
  throw UnknownCase("unknown case '" + std::string(id) + "' (known: " + known + ")");
}

}  // namespace esr3d
