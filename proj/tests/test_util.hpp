#ifndef ESR3D_TESTS_TEST_UTIL_HPP
#define ESR3D_TESTS_TEST_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "esr3d/grid.hpp"
#include "esr3d/linalg.hpp"
#include "esr3d/partition.hpp"

namespace testutil {

// splitmix64: deterministic across platforms, unlike the std distributions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

private:
  std::uint64_t state_;
};

// Uniformly distributed rotation (Shoemake's quaternion construction).
inline esr3d::Mat3 random_rotation(Rng& rng) {
  const double u1 = rng.uniform(), u2 = rng.uniform(), u3 = rng.uniform();
  const double two_pi = 2.0 * std::numbers::pi;
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  const double qx = a * std::sin(two_pi * u2);
  const double qy = a * std::cos(two_pi * u2);
  const double qz = b * std::sin(two_pi * u3);
  const double qw = b * std::cos(two_pi * u3);
  esr3d::Mat3 r;
  r(0, 0) = 1 - 2 * (qy * qy + qz * qz);
  r(0, 1) = 2 * (qx * qy - qz * qw);
  r(0, 2) = 2 * (qx * qz + qy * qw);
  r(1, 0) = 2 * (qx * qy + qz * qw);
  r(1, 1) = 1 - 2 * (qx * qx + qz * qz);
  r(1, 2) = 2 * (qy * qz - qx * qw);
  r(2, 0) = 2 * (qx * qz - qy * qw);
  r(2, 1) = 2 * (qy * qz + qx * qw);
  r(2, 2) = 1 - 2 * (qx * qx + qy * qy);
  return r;
}

// Random strictly increasing partition of [0,1] with `count` values.
inline esr3d::Partition random_partition(Rng& rng, std::size_t count) {
  std::vector<double> gaps(count - 1);
  double total = 0.0;
  for (double& g : gaps) {
    g = 0.1 + rng.uniform();
    total += g;
  }
  std::vector<double> v(count);
  v[0] = 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    acc += gaps[i];
    v[i + 1] = acc / total;
  }
  v[count - 1] = 1.0;
  return esr3d::Partition(std::move(v));
}

// Independent natural-spline oracle: assembles the full tridiagonal system as
// a dense matrix, solves it by Gaussian elimination with partial pivoting, and
// evaluates with the classical A/B form. Shares nothing with CubicSpline3
// except the defining equations.
class DenseNaturalSpline {
public:
  DenseNaturalSpline(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> rhs(n, 0.0);
    a[0][0] = 1.0;
    a[n - 1][n - 1] = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double hl = x_[i] - x_[i - 1];
      const double hr = x_[i + 1] - x_[i];
      a[i][i - 1] = hl / 6.0;
      a[i][i] = (hl + hr) / 3.0;
      a[i][i + 1] = hr / 6.0;
      rhs[i] = (y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl;
    }
    m2_ = solve(a, rhs);
  }

  double operator()(double u) const {
    const std::size_t n = x_.size();
    std::size_t k = 0;
    while (k + 2 < n && u >= x_[k + 1]) ++k;
    const double h = x_[k + 1] - x_[k];
    const double a = (x_[k + 1] - u) / h;
    const double b = (u - x_[k]) / h;
    return a * y_[k] + b * y_[k + 1] +
           ((a * a * a - a) * m2_[k] + (b * b * b - b) * m2_[k + 1]) * h * h / 6.0;
  }

private:
  static std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      for (std::size_t r = col + 1; r < n; ++r) {
        if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
      }
      std::swap(a[col], a[pivot]);
      std::swap(b[col], b[pivot]);
      for (std::size_t r = col + 1; r < n; ++r) {
        const double f = a[r][col] / a[col][col];
        for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        b[r] -= f * b[col];
      }
    }
    std::vector<double> out(n);
    for (std::size_t r = n; r-- > 0;) {
      double s = b[r];
      for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * out[c];
      out[r] = s / a[r][r];
    }
    return out;
  }

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m2_;
};

// Three-component wrapper over the dense oracle.
class DenseNaturalSpline3 {
public:
  DenseNaturalSpline3(const std::vector<double>& x, const std::vector<double>& px,
                      const std::vector<double>& py, const std::vector<double>& pz)
      : sx_(x, px), sy_(x, py), sz_(x, pz) {}

  esr3d::Vec3 operator()(double u) const { return {sx_(u), sy_(u), sz_(u)}; }

private:
  DenseNaturalSpline sx_, sy_, sz_;
};

struct Row3 {
  std::vector<double> x, y, z;
  esr3d::RowView3 view() const { return {x.data(), y.data(), z.data(), x.size()}; }
};

inline Row3 random_row(Rng& rng, std::size_t m) {
  Row3 r{std::vector<double>(m), std::vector<double>(m), std::vector<double>(m)};
  for (std::size_t i = 0; i < m; ++i) {
    r.x[i] = rng.uniform(-1, 1);
    r.y[i] = rng.uniform(-1, 1);
    r.z[i] = rng.uniform(-1, 1);
  }
  return r;
}

// Random shape-field-like lattice with entries in [-1, 1].
inline esr3d::ShapeField random_field(Rng& rng, const esr3d::Partition& r,
                                      const esr3d::Partition& t) {
  const std::size_t count = r.size() * t.size();
  std::vector<double> x(count), y(count), z(count);
  for (std::size_t k = 0; k < count; ++k) {
    x[k] = rng.uniform(-1.0, 1.0);
    y[k] = rng.uniform(-1.0, 1.0);
    z[k] = rng.uniform(-1.0, 1.0);
  }
  return esr3d::ShapeField(r, t, std::move(x), std::move(y), std::move(z));
}

}  // namespace testutil

#endif
