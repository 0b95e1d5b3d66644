// AVX2+FMA variants of the lattice kernels. Compiled into every build via
// per-function target attributes; selected at runtime only when the CPU
// reports avx2 and fma.

#include "esr3d/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define ESR3D_HAVE_AVX2_BUILD 1
#include <immintrin.h>

#include <cmath>
#endif

namespace esr3d::kernels {

#ifdef ESR3D_HAVE_AVX2_BUILD

namespace avx2_impl {

__attribute__((target("avx2,fma"))) static double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swap = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swap));
}

__attribute__((target("avx2,fma"))) double weighted_ssd(
    const double* ax, const double* ay, const double* az, const double* bx, const double* by,
    const double* bz, const double* wr, std::size_t m, const double* wt, std::size_t n) {
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t off = m * j;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
      const __m256d dx =
          _mm256_sub_pd(_mm256_loadu_pd(ax + off + i), _mm256_loadu_pd(bx + off + i));
      const __m256d dy =
          _mm256_sub_pd(_mm256_loadu_pd(ay + off + i), _mm256_loadu_pd(by + off + i));
      const __m256d dz =
          _mm256_sub_pd(_mm256_loadu_pd(az + off + i), _mm256_loadu_pd(bz + off + i));
      __m256d sq = _mm256_mul_pd(dx, dx);
      sq = _mm256_fmadd_pd(dy, dy, sq);
      sq = _mm256_fmadd_pd(dz, dz, sq);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(wr + i), sq, acc);
    }
    double row = hsum(acc);
    for (; i < m; ++i) {
      const double dx = ax[off + i] - bx[off + i];
      const double dy = ay[off + i] - by[off + i];
      const double dz = az[off + i] - bz[off + i];
      row += wr[i] * (dx * dx + dy * dy + dz * dz);
    }
    total += wt[j] * row;
  }
  return total;
}

__attribute__((target("avx2,fma"))) void cross_covariance(
    const double* ax, const double* ay, const double* az, const double* bx, const double* by,
    const double* bz, const double* wr, std::size_t m, const double* wt, std::size_t n,
    double out[9]) {
  for (int k = 0; k < 9; ++k) out[k] = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t off = m * j;
    __m256d acc[9];
    for (auto& a : acc) a = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
      const __m256d w = _mm256_loadu_pd(wr + i);
      const __m256d wax = _mm256_mul_pd(w, _mm256_loadu_pd(ax + off + i));
      const __m256d way = _mm256_mul_pd(w, _mm256_loadu_pd(ay + off + i));
      const __m256d waz = _mm256_mul_pd(w, _mm256_loadu_pd(az + off + i));
      const __m256d vx = _mm256_loadu_pd(bx + off + i);
      const __m256d vy = _mm256_loadu_pd(by + off + i);
      const __m256d vz = _mm256_loadu_pd(bz + off + i);
      acc[0] = _mm256_fmadd_pd(wax, vx, acc[0]);
      acc[1] = _mm256_fmadd_pd(wax, vy, acc[1]);
      acc[2] = _mm256_fmadd_pd(wax, vz, acc[2]);
      acc[3] = _mm256_fmadd_pd(way, vx, acc[3]);
      acc[4] = _mm256_fmadd_pd(way, vy, acc[4]);
      acc[5] = _mm256_fmadd_pd(way, vz, acc[5]);
      acc[6] = _mm256_fmadd_pd(waz, vx, acc[6]);
      acc[7] = _mm256_fmadd_pd(waz, vy, acc[7]);
      acc[8] = _mm256_fmadd_pd(waz, vz, acc[8]);
    }
    double row[9];
    for (int k = 0; k < 9; ++k) row[k] = hsum(acc[k]);
    for (; i < m; ++i) {
      const double w = wr[i];
      const double wa[3] = {w * ax[off + i], w * ay[off + i], w * az[off + i]};
      const double v[3] = {bx[off + i], by[off + i], bz[off + i]};
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) row[3 * k + l] += wa[k] * v[l];
    }
    for (int k = 0; k < 9; ++k) out[k] += wt[j] * row[k];
  }
}

__attribute__((target("avx2,fma"))) void rotate_vectors(const double r[9], const double* x,
                                                        const double* y, const double* z,
                                                        double* ox, double* oy, double* oz,
                                                        std::size_t count) {
  const __m256d r0 = _mm256_set1_pd(r[0]), r1 = _mm256_set1_pd(r[1]), r2 = _mm256_set1_pd(r[2]);
  const __m256d r3 = _mm256_set1_pd(r[3]), r4 = _mm256_set1_pd(r[4]), r5 = _mm256_set1_pd(r[5]);
  const __m256d r6 = _mm256_set1_pd(r[6]), r7 = _mm256_set1_pd(r[7]), r8 = _mm256_set1_pd(r[8]);
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d vx = _mm256_loadu_pd(x + k);
    const __m256d vy = _mm256_loadu_pd(y + k);
    const __m256d vz = _mm256_loadu_pd(z + k);
    const __m256d nx = _mm256_fmadd_pd(r0, vx, _mm256_fmadd_pd(r1, vy, _mm256_mul_pd(r2, vz)));
    const __m256d ny = _mm256_fmadd_pd(r3, vx, _mm256_fmadd_pd(r4, vy, _mm256_mul_pd(r5, vz)));
    const __m256d nz = _mm256_fmadd_pd(r6, vx, _mm256_fmadd_pd(r7, vy, _mm256_mul_pd(r8, vz)));
    _mm256_storeu_pd(ox + k, nx);
    _mm256_storeu_pd(oy + k, ny);
    _mm256_storeu_pd(oz + k, nz);
  }
  for (; k < count; ++k) {
    const double vx = x[k], vy = y[k], vz = z[k];
    ox[k] = r[0] * vx + r[1] * vy + r[2] * vz;
    oy[k] = r[3] * vx + r[4] * vy + r[5] * vz;
    oz[k] = r[6] * vx + r[7] * vy + r[8] * vz;
  }
}

__attribute__((target("avx2,fma"))) void cross_normalize(
    const double* ax, const double* ay, const double* az, const double* bx, const double* by,
    const double* bz, double* qx, double* qy, double* qz, std::size_t count, double eps) {
  const __m256d eps2 = _mm256_set1_pd(eps * eps);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d vax = _mm256_loadu_pd(ax + k), vay = _mm256_loadu_pd(ay + k),
                  vaz = _mm256_loadu_pd(az + k);
    const __m256d vbx = _mm256_loadu_pd(bx + k), vby = _mm256_loadu_pd(by + k),
                  vbz = _mm256_loadu_pd(bz + k);
    const __m256d nx = _mm256_fmsub_pd(vay, vbz, _mm256_mul_pd(vaz, vby));
    const __m256d ny = _mm256_fmsub_pd(vaz, vbx, _mm256_mul_pd(vax, vbz));
    const __m256d nz = _mm256_fmsub_pd(vax, vby, _mm256_mul_pd(vay, vbx));
    __m256d nn = _mm256_mul_pd(nx, nx);
    nn = _mm256_fmadd_pd(ny, ny, nn);
    nn = _mm256_fmadd_pd(nz, nz, nn);
    const __m256d keep = _mm256_cmp_pd(nn, eps2, _CMP_GT_OQ);
    const __m256d scale = _mm256_div_pd(one, _mm256_sqrt_pd(_mm256_sqrt_pd(nn)));
    _mm256_storeu_pd(qx + k, _mm256_blendv_pd(zero, _mm256_mul_pd(nx, scale), keep));
    _mm256_storeu_pd(qy + k, _mm256_blendv_pd(zero, _mm256_mul_pd(ny, scale), keep));
    _mm256_storeu_pd(qz + k, _mm256_blendv_pd(zero, _mm256_mul_pd(nz, scale), keep));
  }
  const double e2 = eps * eps;
  for (; k < count; ++k) {
    const double nx = ay[k] * bz[k] - az[k] * by[k];
    const double ny = az[k] * bx[k] - ax[k] * bz[k];
    const double nz = ax[k] * by[k] - ay[k] * bx[k];
    const double nn = nx * nx + ny * ny + nz * nz;
    if (nn <= e2) {
      qx[k] = qy[k] = qz[k] = 0.0;
    } else {
      const double scale = 1.0 / std::sqrt(std::sqrt(nn));
      qx[k] = nx * scale;
      qy[k] = ny * scale;
      qz[k] = nz * scale;
    }
  }
}

__attribute__((target("avx2,fma"))) double triangle_area_sum(const double* x, const double* y,
                                                             const double* z, std::size_t m,
                                                             std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const std::size_t o0 = m * j, o1 = m * (j + 1);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 5 <= m; i += 4) {  // lanes i..i+3 each need i+1
      const __m256d px = _mm256_loadu_pd(x + o0 + i), py = _mm256_loadu_pd(y + o0 + i),
                    pz = _mm256_loadu_pd(z + o0 + i);
      const __m256d axv = _mm256_sub_pd(_mm256_loadu_pd(x + o0 + i + 1), px);
      const __m256d ayv = _mm256_sub_pd(_mm256_loadu_pd(y + o0 + i + 1), py);
      const __m256d azv = _mm256_sub_pd(_mm256_loadu_pd(z + o0 + i + 1), pz);
      const __m256d bxv = _mm256_sub_pd(_mm256_loadu_pd(x + o1 + i), px);
      const __m256d byv = _mm256_sub_pd(_mm256_loadu_pd(y + o1 + i), py);
      const __m256d bzv = _mm256_sub_pd(_mm256_loadu_pd(z + o1 + i), pz);
      const __m256d cxv = _mm256_sub_pd(_mm256_loadu_pd(x + o1 + i + 1), px);
      const __m256d cyv = _mm256_sub_pd(_mm256_loadu_pd(y + o1 + i + 1), py);
      const __m256d czv = _mm256_sub_pd(_mm256_loadu_pd(z + o1 + i + 1), pz);

      __m256d ux = _mm256_fmsub_pd(cyv, bzv, _mm256_mul_pd(czv, byv));
      __m256d uy = _mm256_fmsub_pd(czv, bxv, _mm256_mul_pd(cxv, bzv));
      __m256d uz = _mm256_fmsub_pd(cxv, byv, _mm256_mul_pd(cyv, bxv));
      __m256d nn = _mm256_mul_pd(ux, ux);
      nn = _mm256_fmadd_pd(uy, uy, nn);
      nn = _mm256_fmadd_pd(uz, uz, nn);
      acc = _mm256_fmadd_pd(half, _mm256_sqrt_pd(nn), acc);

      ux = _mm256_fmsub_pd(ayv, czv, _mm256_mul_pd(azv, cyv));
      uy = _mm256_fmsub_pd(azv, cxv, _mm256_mul_pd(axv, czv));
      uz = _mm256_fmsub_pd(axv, cyv, _mm256_mul_pd(ayv, cxv));
      nn = _mm256_mul_pd(ux, ux);
      nn = _mm256_fmadd_pd(uy, uy, nn);
      nn = _mm256_fmadd_pd(uz, uz, nn);
      acc = _mm256_fmadd_pd(half, _mm256_sqrt_pd(nn), acc);
    }
    total += hsum(acc);
    for (; i + 1 < m; ++i) {
      const double px = x[o0 + i], py = y[o0 + i], pz = z[o0 + i];
      const double ax = x[o0 + i + 1] - px, ay = y[o0 + i + 1] - py, az = z[o0 + i + 1] - pz;
      const double bx = x[o1 + i] - px, by = y[o1 + i] - py, bz = z[o1 + i] - pz;
      const double cx = x[o1 + i + 1] - px, cy = y[o1 + i + 1] - py, cz = z[o1 + i + 1] - pz;
      double ux = cy * bz - cz * by, uy = cz * bx - cx * bz, uz = cx * by - cy * bx;
      total += 0.5 * std::sqrt(ux * ux + uy * uy + uz * uz);
      ux = ay * cz - az * cy;
      uy = az * cx - ax * cz;
      uz = ax * cy - ay * cx;
      total += 0.5 * std::sqrt(ux * ux + uy * uy + uz * uz);
    }
  }
  return total;
}

}  // namespace avx2_impl

const Table* avx2() {
  static const Table table = {
      avx2_impl::weighted_ssd,   avx2_impl::cross_covariance, avx2_impl::rotate_vectors,
      avx2_impl::cross_normalize, avx2_impl::triangle_area_sum,
  };
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &table : nullptr;
}

#else

const Table* avx2() { return nullptr; }

#endif

}  // namespace esr3d::kernels
