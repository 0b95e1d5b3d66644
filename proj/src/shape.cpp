#include "esr3d/shape.hpp"

#include <cmath>

#include "esr3d/kernels.hpp"
#include "esr3d/spline.hpp"

namespace esr3d {

PartialDerivatives partial_derivatives(const SurfaceGrid& g) {
  const std::size_t m = g.rows(), n = g.cols();
  if (m < 3 || n < 3) throw GridTooSmall("centered differences need at least a 3x3 grid");

  PartialDerivatives d;
  d.m = m;
  d.n = n;
  const std::size_t count = m * n;
  d.rx.resize(count);
  d.ry.resize(count);
  d.rz.resize(count);
  d.tx.resize(count);
  d.ty.resize(count);
  d.tz.resize(count);

  const auto& r = g.r();
  const auto& t = g.t();
  const auto x = g.x(), y = g.y(), z = g.z();

  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t off = m * j;
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t lo, hi;
      double dr;
      if (i == 0) {
        lo = 0, hi = 1, dr = r.spacing(0);
      } else if (i == m - 1) {
        lo = m - 2, hi = m - 1, dr = r.spacing(m - 2);
      } else {
        lo = i - 1, hi = i + 1, dr = r[i + 1] - r[i - 1];
      }
      d.rx[off + i] = (x[off + hi] - x[off + lo]) / dr;
      d.ry[off + i] = (y[off + hi] - y[off + lo]) / dr;
      d.rz[off + i] = (z[off + hi] - z[off + lo]) / dr;
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    std::size_t lo, hi;
    double dt;
    if (j == 0) {
      lo = 0, hi = 1, dt = t.spacing(0);
    } else if (j == n - 1) {
      lo = n - 2, hi = n - 1, dt = t.spacing(n - 2);
    } else {
      lo = j - 1, hi = j + 1, dt = t[j + 1] - t[j - 1];
    }
    const std::size_t olo = m * lo, ohi = m * hi, off = m * j;
    for (std::size_t i = 0; i < m; ++i) {
      d.tx[off + i] = (x[ohi + i] - x[olo + i]) / dt;
      d.ty[off + i] = (y[ohi + i] - y[olo + i]) / dt;
      d.tz[off + i] = (z[ohi + i] - z[olo + i]) / dt;
    }
  }
  return d;
}

ShapeField shape_function(const SurfaceGrid& g) {
  const PartialDerivatives d = partial_derivatives(g);
  const std::size_t count = d.m * d.n;
  std::vector<double> qx(count), qy(count), qz(count);
  kernels::active().cross_normalize(d.rx.data(), d.ry.data(), d.rz.data(), d.tx.data(),
                                    d.ty.data(), d.tz.data(), qx.data(), qy.data(), qz.data(),
                                    count, kZeroNormalEps);
  return ShapeField(g.r(), g.t(), std::move(qx), std::move(qy), std::move(qz));
}

AreaEstimate surface_area(const SurfaceGrid& g) {
  return {kernels::active().triangle_area_sum(g.x().data(), g.y().data(), g.z().data(), g.rows(),
                                              g.cols())};
}

SurfaceGrid normalize_unit_area(const SurfaceGrid& g) {
  const double area = surface_area(g).value;
  if (!(area > kZeroNormalEps)) throw DegenerateSurface("surface area is not positive");
  const double scale = 1.0 / std::sqrt(area);
  const std::size_t count = g.rows() * g.cols();
  std::vector<double> x(count), y(count), z(count);
  for (std::size_t k = 0; k < count; ++k) {
    x[k] = g.x()[k] * scale;
    y[k] = g.y()[k] * scale;
    z[k] = g.z()[k] * scale;
  }
  return SurfaceGrid(g.r(), g.t(), std::move(x), std::move(y), std::move(z));
}

ShapeField warp_action(const ShapeField& q, const Warp2D& h) {
  const std::size_t m = q.rows(), n = q.cols();
  if (h.rows() != n || h.samples_per_row() != m)
    throw DimensionMismatch("warp dimensions do not match the field");

  std::vector<double> ox(m * n), oy(m * n), oz(m * n);
  for (std::size_t j = 0; j < n; ++j) {
    const RowView3 row = q.row(j);
    const CubicSpline3 s(q.r().values(), {row.x, m}, {row.y, m}, {row.z, m});
    const Diffeo1D& hj = h.row(j);
    const std::size_t off = m * j;
    std::size_t hint = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Vec3 v = s.eval(hj.samples()[i], hint);
      const double root = std::sqrt(hj.derivative()[i]);
      ox[off + i] = root * v.x;
      oy[off + i] = root * v.y;
      oz[off + i] = root * v.z;
    }
  }
  return ShapeField(q.r(), q.t(), std::move(ox), std::move(oy), std::move(oz));
}

double field_distance(const ShapeField& q1, const ShapeField& q2) {
  if (q1.rows() != q2.rows() || q1.cols() != q2.cols())
    throw DimensionMismatch("field dimensions differ");
  if (!q1.r().approx_equal(q2.r()) || !q1.t().approx_equal(q2.t()))
    throw PartitionMismatch("field partitions differ");
  const double ssd = kernels::active().weighted_ssd(
      q1.x().data(), q1.y().data(), q1.z().data(), q2.x().data(), q2.y().data(), q2.z().data(),
      q1.r().trapezoid_weights().data(), q1.rows(), q1.t().trapezoid_weights().data(), q1.cols());
  return std::sqrt(ssd);
}

namespace {

template <class L>
L rotate_lattice(const L& a, const Mat3& r) {
  const std::size_t count = a.rows() * a.cols();
  std::vector<double> x(count), y(count), z(count);
  kernels::active().rotate_vectors(r.m.data(), a.x().data(), a.y().data(), a.z().data(), x.data(),
                                   y.data(), z.data(), count);
  return L(a.r(), a.t(), std::move(x), std::move(y), std::move(z));
}

}  // namespace

ShapeField rotate(const ShapeField& q, const Mat3& r) { return rotate_lattice(q, r); }
SurfaceGrid rotate(const SurfaceGrid& g, const Mat3& r) { return rotate_lattice(g, r); }

}  // namespace esr3d
