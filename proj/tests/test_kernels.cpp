#include <doctest.h>

#include <cmath>
#include <vector>

#include "esr3d/kernels.hpp"
#include "test_util.hpp"

using namespace esr3d;

namespace {

struct Planes {
  std::vector<double> x, y, z;
};

Planes random_planes(testutil::Rng& rng, std::size_t count) {
  Planes p{std::vector<double>(count), std::vector<double>(count), std::vector<double>(count)};
  for (std::size_t k = 0; k < count; ++k) {
    p.x[k] = rng.uniform(-2, 2);
    p.y[k] = rng.uniform(-2, 2);
    p.z[k] = rng.uniform(-2, 2);
  }
  return p;
}

}  // namespace

TEST_CASE("scalar and simd kernel variants agree") {
  const kernels::Table& s = kernels::scalar();
  const kernels::Table* v = kernels::avx2();
  if (v == nullptr) {
    MESSAGE("no simd variant on this host; scalar only");
    return;
  }

  testutil::Rng rng(31);
  for (std::size_t m : {3ul, 7ul, 16ul, 101ul}) {
    for (std::size_t n : {2ul, 5ul, 33ul}) {
      const Planes a = random_planes(rng, m * n);
      const Planes b = random_planes(rng, m * n);
      const Partition pr = testutil::random_partition(rng, m);
      const Partition pt = testutil::random_partition(rng, n);
      const double* wr = pr.trapezoid_weights().data();
      const double* wt = pt.trapezoid_weights().data();

      const double ssd_s = s.weighted_ssd(a.x.data(), a.y.data(), a.z.data(), b.x.data(),
                                          b.y.data(), b.z.data(), wr, m, wt, n);
      const double ssd_v = v->weighted_ssd(a.x.data(), a.y.data(), a.z.data(), b.x.data(),
                                           b.y.data(), b.z.data(), wr, m, wt, n);
      CHECK(std::abs(ssd_s - ssd_v) <= 1e-12 * (1.0 + std::abs(ssd_s)));

      double cov_s[9], cov_v[9];
      s.cross_covariance(a.x.data(), a.y.data(), a.z.data(), b.x.data(), b.y.data(), b.z.data(),
                         wr, m, wt, n, cov_s);
      v->cross_covariance(a.x.data(), a.y.data(), a.z.data(), b.x.data(), b.y.data(), b.z.data(),
                          wr, m, wt, n, cov_v);
      for (int k = 0; k < 9; ++k)
        CHECK(std::abs(cov_s[k] - cov_v[k]) <= 1e-12 * (1.0 + std::abs(cov_s[k])));

      const Mat3 rot = testutil::random_rotation(rng);
      Planes out_s = random_planes(rng, m * n), out_v = out_s;
      s.rotate_vectors(rot.m.data(), a.x.data(), a.y.data(), a.z.data(), out_s.x.data(),
                       out_s.y.data(), out_s.z.data(), m * n);
      v->rotate_vectors(rot.m.data(), a.x.data(), a.y.data(), a.z.data(), out_v.x.data(),
                        out_v.y.data(), out_v.z.data(), m * n);
      for (std::size_t k = 0; k < m * n; ++k) {
        CHECK(std::abs(out_s.x[k] - out_v.x[k]) <= 1e-13);
        CHECK(std::abs(out_s.y[k] - out_v.y[k]) <= 1e-13);
        CHECK(std::abs(out_s.z[k] - out_v.z[k]) <= 1e-13);
      }

      Planes qn_s = out_s, qn_v = out_s;
      s.cross_normalize(a.x.data(), a.y.data(), a.z.data(), b.x.data(), b.y.data(), b.z.data(),
                        qn_s.x.data(), qn_s.y.data(), qn_s.z.data(), m * n, 1e-12);
      v->cross_normalize(a.x.data(), a.y.data(), a.z.data(), b.x.data(), b.y.data(), b.z.data(),
                         qn_v.x.data(), qn_v.y.data(), qn_v.z.data(), m * n, 1e-12);
      for (std::size_t k = 0; k < m * n; ++k) {
        CHECK(std::abs(qn_s.x[k] - qn_v.x[k]) <= 1e-12);
        CHECK(std::abs(qn_s.y[k] - qn_v.y[k]) <= 1e-12);
        CHECK(std::abs(qn_s.z[k] - qn_v.z[k]) <= 1e-12);
      }

      const double area_s = s.triangle_area_sum(a.x.data(), a.y.data(), a.z.data(), m, n);
      const double area_v = v->triangle_area_sum(a.x.data(), a.y.data(), a.z.data(), m, n);
      CHECK(std::abs(area_s - area_v) <= 1e-12 * (1.0 + std::abs(area_s)));
    }
  }
}

TEST_CASE("scalar kernels match a direct vector-math evaluation") {
  testutil::Rng rng(32);
  const std::size_t m = 6, n = 4;
  const Planes a = random_planes(rng, m * n);
  const Planes b = random_planes(rng, m * n);
  const Partition pr = testutil::random_partition(rng, m);
  const Partition pt = testutil::random_partition(rng, n);
  const kernels::Table& s = kernels::scalar();

  double expect = 0.0;
  Mat3 cov_expect{};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t k = i + m * j;
      const Vec3 va{a.x[k], a.y[k], a.z[k]};
      const Vec3 vb{b.x[k], b.y[k], b.z[k]};
      const double w = pr.trapezoid_weights()[i] * pt.trapezoid_weights()[j];
      expect += w * (va - vb).squared_norm();
      const double ea[3] = {va.x, va.y, va.z}, eb[3] = {vb.x, vb.y, vb.z};
      for (int kk = 0; kk < 3; ++kk)
        for (int ll = 0; ll < 3; ++ll) cov_expect.m[3 * kk + ll] += w * ea[kk] * eb[ll];
    }

  const double got = s.weighted_ssd(a.x.data(), a.y.data(), a.z.data(), b.x.data(), b.y.data(),
                                    b.z.data(), pr.trapezoid_weights().data(), m,
                                    pt.trapezoid_weights().data(), n);
  CHECK(got == doctest::Approx(expect).epsilon(1e-13));

  double cov[9];
  s.cross_covariance(a.x.data(), a.y.data(), a.z.data(), b.x.data(), b.y.data(), b.z.data(),
                     pr.trapezoid_weights().data(), m, pt.trapezoid_weights().data(), n, cov);
  for (int k = 0; k < 9; ++k) CHECK(cov[k] == doctest::Approx(cov_expect.m[k]).epsilon(1e-12));

  Planes q{std::vector<double>(m * n), std::vector<double>(m * n), std::vector<double>(m * n)};
  s.cross_normalize(a.x.data(), a.y.data(), a.z.data(), b.x.data(), b.y.data(), b.z.data(),
                    q.x.data(), q.y.data(), q.z.data(), m * n, 1e-12);
  for (std::size_t k = 0; k < m * n; ++k) {
    const Vec3 cr = cross({a.x[k], a.y[k], a.z[k]}, {b.x[k], b.y[k], b.z[k]});
    const Vec3 want = cr.norm() > 1e-12 ? cr / std::sqrt(cr.norm()) : Vec3{};
    CHECK(q.x[k] == doctest::Approx(want.x).epsilon(1e-12));
    CHECK(q.y[k] == doctest::Approx(want.y).epsilon(1e-12));
    CHECK(q.z[k] == doctest::Approx(want.z).epsilon(1e-12));
  }
}

TEST_CASE("rotate_vectors works in place") {
  testutil::Rng rng(33);
  const std::size_t count = 23;
  Planes a = random_planes(rng, count);
  const Planes orig = a;
  const Mat3 rot = testutil::random_rotation(rng);
  Planes out{std::vector<double>(count), std::vector<double>(count), std::vector<double>(count)};
  const kernels::Table& k = kernels::active();
  k.rotate_vectors(rot.m.data(), a.x.data(), a.y.data(), a.z.data(), out.x.data(), out.y.data(),
                   out.z.data(), count);
  k.rotate_vectors(rot.m.data(), a.x.data(), a.y.data(), a.z.data(), a.x.data(), a.y.data(),
                   a.z.data(), count);
  double moved = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    CHECK(a.x[i] == out.x[i]);
    CHECK(a.y[i] == out.y[i]);
    CHECK(a.z[i] == out.z[i]);
    moved += std::abs(a.x[i] - orig.x[i]);
  }
  CHECK(moved > 0.0);  // rotation actually applied
}
