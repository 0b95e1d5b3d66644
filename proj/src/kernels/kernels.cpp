#include "esr3d/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <string_view>

namespace esr3d::kernels {

namespace scalar_impl {

double weighted_ssd(const double* ax, const double* ay, const double* az, const double* bx,
                    const double* by, const double* bz, const double* wr, std::size_t m,
                    const double* wt, std::size_t n) {
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t off = m * j;
    double row = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double dx = ax[off + i] - bx[off + i];
      const double dy = ay[off + i] - by[off + i];
      const double dz = az[off + i] - bz[off + i];
      row += wr[i] * (dx * dx + dy * dy + dz * dz);
    }
    total += wt[j] * row;
  }
  return total;
}

void cross_covariance(const double* ax, const double* ay, const double* az, const double* bx,
                      const double* by, const double* bz, const double* wr, std::size_t m,
                      const double* wt, std::size_t n, double out[9]) {
  for (int k = 0; k < 9; ++k) out[k] = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t off = m * j;
    double acc[9] = {0, 0, 0, 0, 0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < m; ++i) {
      const double w = wr[i];
      const double wax = w * ax[off + i], way = w * ay[off + i], waz = w * az[off + i];
      const double vx = bx[off + i], vy = by[off + i], vz = bz[off + i];
      acc[0] += wax * vx;
      acc[1] += wax * vy;
      acc[2] += wax * vz;
      acc[3] += way * vx;
      acc[4] += way * vy;
      acc[5] += way * vz;
      acc[6] += waz * vx;
      acc[7] += waz * vy;
      acc[8] += waz * vz;
    }
    for (int k = 0; k < 9; ++k) out[k] += wt[j] * acc[k];
  }
}

void rotate_vectors(const double r[9], const double* x, const double* y, const double* z,
                    double* ox, double* oy, double* oz, std::size_t count) {
  for (std::size_t k = 0; k < count; ++k) {
    const double vx = x[k], vy = y[k], vz = z[k];
    ox[k] = r[0] * vx + r[1] * vy + r[2] * vz;
    oy[k] = r[3] * vx + r[4] * vy + r[5] * vz;
    oz[k] = r[6] * vx + r[7] * vy + r[8] * vz;
  }
}

void cross_normalize(const double* ax, const double* ay, const double* az, const double* bx,
                     const double* by, const double* bz, double* qx, double* qy, double* qz,
                     std::size_t count, double eps) {
  const double eps2 = eps * eps;
  for (std::size_t k = 0; k < count; ++k) {
    const double nx = ay[k] * bz[k] - az[k] * by[k];
    const double ny = az[k] * bx[k] - ax[k] * bz[k];
    const double nz = ax[k] * by[k] - ay[k] * bx[k];
    const double nn = nx * nx + ny * ny + nz * nz;
    if (nn <= eps2) {
      qx[k] = qy[k] = qz[k] = 0.0;
    } else {
      const double scale = 1.0 / std::sqrt(std::sqrt(nn));
      qx[k] = nx * scale;
      qy[k] = ny * scale;
      qz[k] = nz * scale;
    }
  }
}

double triangle_area_sum(const double* x, const double* y, const double* z, std::size_t m,
                         std::size_t n) {
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const std::size_t o0 = m * j, o1 = m * (j + 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const double px = x[o0 + i], py = y[o0 + i], pz = z[o0 + i];
      // edges from c(i,j) to c(i+1,j), c(i,j+1), c(i+1,j+1)
      const double ax = x[o0 + i + 1] - px, ay = y[o0 + i + 1] - py, az = z[o0 + i + 1] - pz;
      const double bx = x[o1 + i] - px, by = y[o1 + i] - py, bz = z[o1 + i] - pz;
      const double cx = x[o1 + i + 1] - px, cy = y[o1 + i + 1] - py, cz = z[o1 + i + 1] - pz;
      // triangle (c(i,j), c(i+1,j+1), c(i,j+1))
      double ux = cy * bz - cz * by;
      double uy = cz * bx - cx * bz;
      double uz = cx * by - cy * bx;
      total += 0.5 * std::sqrt(ux * ux + uy * uy + uz * uz);
      // triangle (c(i,j), c(i+1,j), c(i+1,j+1))
      ux = ay * cz - az * cy;
      uy = az * cx - ax * cz;
      uz = ax * cy - ay * cx;
      total += 0.5 * std::sqrt(ux * ux + uy * uy + uz * uz);
    }
  }
  return total;
}

}  // namespace scalar_impl

const Table& scalar() {
  static const Table table = {
      scalar_impl::weighted_ssd,   scalar_impl::cross_covariance,
      scalar_impl::rotate_vectors, scalar_impl::cross_normalize,
      scalar_impl::triangle_area_sum,
  };
  return table;
}

namespace {

const Table* pick_active(const char** name) {
  const char* env = std::getenv("ESR3D_KERNELS");
  if (env != nullptr && std::string_view(env) == "scalar") {
    *name = "scalar";
    return &scalar();
  }
  if (const Table* t = avx2()) {
    *name = "avx2";
    return t;
  }
  *name = "scalar";
  return &scalar();
}

const char* g_active_name = nullptr;

}  // namespace

const Table& active() {
  static const Table* table = pick_active(&g_active_name);
  return *table;
}

const char* active_name() {
  active();
  return g_active_name;
}

}  // namespace esr3d::kernels
