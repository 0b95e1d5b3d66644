#include "esr3d/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace esr3d {

Rotation3::Rotation3(const Mat3& m) : m_(m) {
  const Mat3 gram = m_.transposed() * m_;
  const Mat3 err = gram - Mat3::identity();
  if (err.max_abs() > 1e-10) throw NumericalFailure("rotation matrix is not orthogonal");
  if (std::abs(m_.det() - 1.0) > 1e-10)
    throw NumericalFailure("rotation matrix determinant is not +1");
}

namespace {

// Rotates columns p and q of a by [[c, s], [-s, c]] acting on the right.
void rotate_columns(Mat3& a, std::size_t p, std::size_t q, double c, double s) {
  for (std::size_t i = 0; i < 3; ++i) {
    const double u = a(i, p);
    const double w = a(i, q);
    a(i, p) = c * u - s * w;
    a(i, q) = s * u + c * w;
  }
}

void swap_columns(Mat3& a, std::size_t p, std::size_t q) {
  for (std::size_t i = 0; i < 3; ++i) std::swap(a(i, p), a(i, q));
}

// Fills column k of u with a unit vector orthogonal to all columns < k.
void complete_column(Mat3& u, std::size_t k) {
  Vec3 best{};
  double best_norm = -1.0;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    Vec3 cand{axis == 0 ? 1.0 : 0.0, axis == 1 ? 1.0 : 0.0, axis == 2 ? 1.0 : 0.0};
    for (std::size_t c = 0; c < k; ++c) {
      const Vec3 uc = u.column(c);
      cand = cand - dot(cand, uc) * uc;
    }
    const double nn = cand.norm();
    if (nn > best_norm) {
      best_norm = nn;
      best = cand;
    }
  }
  best = best / best_norm;
  u(0, k) = best.x;
  u(1, k) = best.y;
  u(2, k) = best.z;
}

}  // namespace

SvdResult svd3(const Mat3& m) {
  for (double e : m.m) {
    if (!std::isfinite(e)) throw NonFiniteValue("svd3: non-finite entry");
  }

  Mat3 b = m;
  Mat3 v = Mat3::identity();

  // One-sided Jacobi: orthogonalize column pairs until all column inner
  // products vanish relative to the column norms.
  constexpr double kTol = 1e-14;
  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < 2; ++p) {
      for (std::size_t q = p + 1; q < 3; ++q) {
        const Vec3 cp = b.column(p);
        const Vec3 cq = b.column(q);
        const double alpha = cp.squared_norm();
        const double beta = cq.squared_norm();
        const double gamma = dot(cp, cq);
        const double denom = std::sqrt(alpha * beta);
        if (denom == 0.0 || std::abs(gamma) <= kTol * denom) continue;
        off = std::max(off, std::abs(gamma) / denom);
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate_columns(b, p, q, c, s);
        rotate_columns(v, p, q, c, s);
      }
    }
    if (off == 0.0) break;
  }

  Vec3 s{b.column(0).norm(), b.column(1).norm(), b.column(2).norm()};
  double sv[3] = {s.x, s.y, s.z};

  // Sort singular values descending, permuting columns of b and v alike.
  std::size_t order[3] = {0, 1, 2};
  std::sort(order, order + 3, [&](std::size_t a, std::size_t c) { return sv[a] > sv[c]; });
  // Apply the permutation by successive swaps.
  std::size_t pos[3];
  for (std::size_t k = 0; k < 3; ++k) pos[order[k]] = k;
  for (std::size_t k = 0; k < 3; ++k) {
    while (pos[k] != k) {
      const std::size_t other = pos[k];
      swap_columns(b, k, other);
      swap_columns(v, k, other);
      std::swap(sv[k], sv[other]);
      std::swap(pos[k], pos[other]);
    }
  }

  Mat3 u{};
  const double smax = sv[0];
  const double rank_tol = smax > 0.0 ? smax * 1e-14 : 0.0;
  std::size_t rank = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    if (sv[k] > rank_tol && sv[k] > 0.0) {
      const Vec3 col = b.column(k) / sv[k];
      u(0, k) = col.x;
      u(1, k) = col.y;
      u(2, k) = col.z;
      rank = k + 1;
    }
  }
  for (std::size_t k = rank; k < 3; ++k) {
    sv[k] = std::max(sv[k], 0.0);
    complete_column(u, k);
  }

  return {u, {sv[0], sv[1], sv[2]}, v};
}

}  // namespace esr3d
