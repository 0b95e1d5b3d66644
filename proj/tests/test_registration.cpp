#include <doctest.h>

#include <cmath>
#include <numbers>

#include "esr3d/generators.hpp"
#include "esr3d/registration.hpp"
#include "esr3d/shape.hpp"
#include "test_util.hpp"

using namespace esr3d;

namespace {

// Deliberately asymmetric smooth surface: no flip or transpose of the lattice
// reproduces it, so corner-search winners are unique.
SurfaceGrid asymmetric_surface(std::size_t m, std::size_t n) {
  const Partition r = Partition::uniform(m), t = Partition::uniform(n);
  std::vector<Vec3> pts;
  pts.reserve(m * n);
  constexpr double pi = std::numbers::pi;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      const double rr = r[i], tt = t[j];
      const double z = 0.35 * std::sin(pi * rr) * (1.0 + 0.8 * rr) + 0.3 * tt * tt +
                       0.15 * std::sin(2.0 * pi * tt) * rr;
      pts.push_back({rr, tt, z});
    }
  return make_surface_grid(r, t, pts);
}

}  // namespace

TEST_CASE("registering a surface against itself is essentially free") {
  const SurfaceGrid c = normalize_unit_area(
      generate({SurfaceKind::SineType1, 2}, Partition::uniform(31), Partition::uniform(31)));
  const RegistrationResult res = dp_surface_min(c, c);

  CHECK(res.distance <= 1e-3);
  CHECK((res.rotation.matrix() - Mat3::identity()).max_abs() <= 1e-6);
  CHECK(res.iterations >= 1);
  CHECK(res.iterations <= 11);
  CHECK(res.energy_trace.size() == static_cast<std::size_t>(res.iterations));
  CHECK(res.distance == doctest::Approx(std::sqrt(res.energy)));
  for (std::size_t j = 0; j < c.cols(); ++j)
    for (std::size_t i = 0; i < c.rows(); ++i)
      CHECK(std::abs(res.warp.row(j).samples()[i] - c.r()[i]) <= 1e-12);

  // recomputing the energy from the returned fields reproduces it
  const double recomputed = field_distance(res.field_first, res.field_second);
  CHECK(std::abs(recomputed * recomputed - res.energy) <= 1e-9);
}

TEST_CASE("the shape distance ignores a rigid rotation of one input") {
  const SurfaceGrid c = normalize_unit_area(
      generate({SurfaceKind::SineType1, 2}, Partition::uniform(31), Partition::uniform(31)));
  testutil::Rng rng(81);
  const SurfaceGrid rotated = rotate(c, testutil::random_rotation(rng));
  const RegistrationResult res = dp_surface_min(rotated, c);
  CHECK(res.distance <= 1e-3);
}

TEST_CASE("registration traces converge and respect the iteration cap") {
  const SurfaceGrid c1 = normalize_unit_area(
      generate({SurfaceKind::SineType2, 2}, Partition::uniform(26), Partition::uniform(26)));
  const SurfaceGrid c2 = normalize_unit_area(
      generate({SurfaceKind::SineType1, 3}, Partition::uniform(26), Partition::uniform(26)));

  RegistrationConfig cfg;
  cfg.iten = 2;
  cfg.tol = 1e-300;  // effectively unreachable for distinct surfaces
  const RegistrationResult res = dp_surface_min(c1, c2, cfg);
  CHECK(res.iterations == 3);  // iten + 1
  CHECK(res.energy_trace.size() == 3);
  CHECK(res.row_energies.size() == c1.cols());
}

TEST_CASE("registration validates input and configuration") {
  const SurfaceGrid a = normalize_unit_area(
      generate({SurfaceKind::SineType1, 2}, Partition::uniform(11), Partition::uniform(11)));
  const SurfaceGrid b = normalize_unit_area(
      generate({SurfaceKind::SineType1, 2}, Partition::uniform(12), Partition::uniform(11)));
  CHECK_THROWS_AS(dp_surface_min(a, b), DimensionMismatch);

  const SurfaceGrid c(Partition({0.0, 0.3, 0.5, 0.62, 0.8, 0.9, 0.95, 0.97, 0.99, 0.995, 1.0}),
                      a.t(), std::vector<double>(11 * 11, 0.0),
                      std::vector<double>(11 * 11, 0.0), std::vector<double>(11 * 11, 0.0));
  CHECK_THROWS_AS(dp_surface_min(a, c), PartitionMismatch);

  RegistrationConfig bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(dp_surface_min(a, a, bad), InvalidArgument);
  bad = RegistrationConfig{};
  bad.iten = 0;
  CHECK_THROWS_AS(dp_surface_min(a, a, bad), InvalidArgument);
}

TEST_CASE("register_surfaces normalizes before matching") {
  // same shape at different scales still registers to zero distance
  const SurfaceGrid small = generate({SurfaceKind::SineType1, 2}, Partition::uniform(26),
                                     Partition::uniform(26));
  SurfaceGrid big = rotate(small, Mat3::diagonal(1, 1, 1));
  {
    std::vector<double> x(big.x().begin(), big.x().end());
    std::vector<double> y(big.y().begin(), big.y().end());
    std::vector<double> z(big.z().begin(), big.z().end());
    for (auto& v : x) v *= 3.0;
    for (auto& v : y) v *= 3.0;
    for (auto& v : z) v *= 3.0;
    big = SurfaceGrid(big.r(), big.t(), std::move(x), std::move(y), std::move(z));
  }
  const RegistrationResult res = register_surfaces(small, big);
  CHECK(res.distance <= 1e-3);
}

TEST_CASE("row-parallel execution is deterministic") {
  const SurfaceGrid c1 = normalize_unit_area(
      generate({SurfaceKind::SineType2, 2}, Partition::uniform(21), Partition::uniform(21)));
  const SurfaceGrid c2 = normalize_unit_area(
      generate({SurfaceKind::SineType1, 3}, Partition::uniform(21), Partition::uniform(21)));
  RegistrationConfig serial;
  serial.threads = 1;
  RegistrationConfig parallel;
  parallel.threads = 4;
  const RegistrationResult a = dp_surface_min(c1, c2, serial);
  const RegistrationResult b = dp_surface_min(c1, c2, parallel);
  CHECK(a.energy == b.energy);
  CHECK(a.iterations == b.iterations);
  for (std::size_t j = 0; j < c1.cols(); ++j)
    for (std::size_t i = 0; i < c1.rows(); ++i)
      CHECK(a.warp.row(j).samples()[i] == b.warp.row(j).samples()[i]);
}

TEST_CASE("flat patches register despite rank-deficient fields") {
  // constant unit normals: the cross-covariance is rank one, the completed
  // rotation must still fix the normal direction
  const Partition r = Partition::uniform(11), t = Partition::uniform(11);
  std::vector<Vec3> pts;
  for (std::size_t j = 0; j < 11; ++j)
    for (std::size_t i = 0; i < 11; ++i) pts.push_back({r[i], t[j], 0.0});
  const SurfaceGrid flat = make_surface_grid(r, t, pts);
  const RegistrationResult res = register_surfaces(flat, flat);
  CHECK(res.distance <= 1e-9);
  const Vec3 n = res.rotation.matrix() * Vec3{0, 0, 1};
  CHECK((n - Vec3{0, 0, 1}).norm() <= 1e-9);
}

TEST_CASE("registration works on non-uniform partitions") {
  std::vector<double> rv{0.0, 0.07, 0.15, 0.26, 0.38, 0.47, 0.61, 0.72, 0.86, 0.93, 1.0};
  std::vector<double> tv{0.0, 0.12, 0.2, 0.33, 0.45, 0.58, 0.66, 0.79, 0.88, 0.95, 1.0};
  const Partition r(rv), t(tv);
  const SurfaceGrid c = normalize_unit_area(generate({SurfaceKind::SineType1, 2}, r, t));
  const RegistrationResult res = dp_surface_min(c, c);
  CHECK(res.distance <= 1e-6);
  for (std::size_t i = 0; i < r.size(); ++i)
    CHECK(res.warp.row(5).samples()[i] == doctest::Approx(r[i]).epsilon(1e-12));
}

TEST_CASE("corner search finds the right reindexing") {
  const SurfaceGrid c1 = normalize_unit_area(asymmetric_surface(17, 17));

  SUBCASE("identity candidate wins for identical surfaces") {
    const CornerSearchResult res = register_with_corner_search(c1, c1);
    CHECK(res.candidate_index == 0);
    CHECK(res.best.distance <= 1e-3);
  }

  SUBCASE("a flipped second surface is undone by its flip candidate") {
    const SurfaceGrid c2 = flip_r(c1);
    const CornerSearchResult res = register_with_corner_search(c1, c2);
    CHECK(res.candidate_index == 1);  // flip_r of the flipped grid restores it
    CHECK(res.best.distance <= 1e-3);

    // all other candidates are strictly worse
    const auto cands = corner_candidates(c2);
    for (std::size_t k = 0; k < cands.size(); ++k) {
      if (k == res.candidate_index) continue;
      const RegistrationResult other = dp_surface_min(c1, cands[k]);
      CHECK(other.distance > res.best.distance);
    }
  }

  SUBCASE("non-square reversal is rejected") {
    const SurfaceGrid wide = normalize_unit_area(asymmetric_surface(17, 13));
    const SurfaceGrid wide2 = normalize_unit_area(asymmetric_surface(17, 13));
    CHECK_THROWS_AS(register_with_corner_search(wide, wide2), NonSquareReversal);
  }
}
