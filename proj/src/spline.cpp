#include "esr3d/spline.hpp"

#include <algorithm>
#include <cmath>

#include "esr3d/errors.hpp"

namespace esr3d {

CubicSpline3::CubicSpline3(std::span<const double> x, std::span<const double> px,
                           std::span<const double> py, std::span<const double> pz) {
  const std::size_t n = x.size();
  if (n < 2) throw DimensionMismatch("spline needs at least 2 breakpoints");
  if (px.size() != n || py.size() != n || pz.size() != n)
    throw DimensionMismatch("spline component length mismatch");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x[i] < x[i + 1])) throw InvalidPartition("spline breakpoints must be increasing");
  }

  x_.assign(x.begin(), x.end());
  const std::span<const double> comps[3] = {px, py, pz};

  // Second derivatives of the natural spline (zero at both ends), solved by
  // the standard forward elimination / back substitution.
  std::vector<double> m2(n), u(n);
  for (int c = 0; c < 3; ++c) {
    const std::span<const double>& yv = comps[c];
    m2[0] = u[0] = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
      const double p = sig * m2[i - 1] + 2.0;
      m2[i] = (sig - 1.0) / p;
      double r = (yv[i + 1] - yv[i]) / (x_[i + 1] - x_[i]) - (yv[i] - yv[i - 1]) / (x_[i] - x_[i - 1]);
      u[i] = (6.0 * r / (x_[i + 1] - x_[i - 1]) - sig * u[i - 1]) / p;
    }
    m2[n - 1] = 0.0;
    for (std::size_t k = n - 1; k-- > 0;) m2[k] = m2[k] * m2[k + 1] + u[k];

    y_[c].assign(yv.begin(), yv.end());
    c1_[c].resize(n - 1);
    c2_[c].resize(n - 1);
    c3_[c].resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double h = x_[i + 1] - x_[i];
      c1_[c][i] = (yv[i + 1] - yv[i]) / h - h * (2.0 * m2[i] + m2[i + 1]) / 6.0;
      c2_[c][i] = m2[i] / 2.0;
      c3_[c][i] = (m2[i + 1] - m2[i]) / (6.0 * h);
    }
  }
}

std::size_t CubicSpline3::locate(double u) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), u);
  const std::ptrdiff_t idx = (it - x_.begin()) - 1;
  const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(x_.size()) - 2;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(idx, 0, last));
}

Vec3 CubicSpline3::piece(std::size_t k, double u) const {
  // Exact node value at the right breakpoint; the left one falls out of t = 0.
  if (u == x_[k + 1]) return {y_[0][k + 1], y_[1][k + 1], y_[2][k + 1]};
  const double t = u - x_[k];
  Vec3 out;
  out.x = y_[0][k] + t * (c1_[0][k] + t * (c2_[0][k] + t * c3_[0][k]));
  out.y = y_[1][k] + t * (c1_[1][k] + t * (c2_[1][k] + t * c3_[1][k]));
  out.z = y_[2][k] + t * (c1_[2][k] + t * (c2_[2][k] + t * c3_[2][k]));
  return out;
}

Vec3 CubicSpline3::operator()(double u) const { return piece(locate(u), u); }

Vec3 CubicSpline3::eval(double u, std::size_t& hint) const {
  const std::size_t last = x_.size() - 2;
  std::size_t k = std::min(hint, last);
  while (k < last && u >= x_[k + 1]) ++k;
  while (k > 0 && u < x_[k]) --k;
  hint = k;
  return piece(k, u);
}

}  // namespace esr3d
