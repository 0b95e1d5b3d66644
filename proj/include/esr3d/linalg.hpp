#ifndef ESR3D_LINALG_HPP
#define ESR3D_LINALG_HPP

#include <array>
#include <cmath>
#include <cstddef>

#include "esr3d/errors.hpp"

namespace esr3d {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
  friend Vec3 operator*(Vec3 v, double s) { return s * v; }
  friend Vec3 operator/(Vec3 v, double s) { return {v.x / s, v.y / s, v.z / s}; }

  double squared_norm() const { return x * x + y * y + z * z; }
  double norm() const { return std::sqrt(squared_norm()); }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> m{};

  static Mat3 identity() { return {{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }
  static Mat3 diagonal(double a, double b, double c) { return {{a, 0, 0, 0, b, 0, 0, 0, c}}; }

  double operator()(std::size_t row, std::size_t col) const { return m[3 * row + col]; }
  double& operator()(std::size_t row, std::size_t col) { return m[3 * row + col]; }

  Vec3 column(std::size_t c) const { return {m[c], m[3 + c], m[6 + c]}; }
  Vec3 row(std::size_t r) const { return {m[3 * r], m[3 * r + 1], m[3 * r + 2]}; }

  Mat3 transposed() const {
    return {{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
  }

  double trace() const { return m[0] + m[4] + m[8]; }

  double det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }

  friend Vec3 operator*(const Mat3& a, Vec3 v) {
    return {a.m[0] * v.x + a.m[1] * v.y + a.m[2] * v.z,
            a.m[3] * v.x + a.m[4] * v.y + a.m[5] * v.z,
            a.m[6] * v.x + a.m[7] * v.y + a.m[8] * v.z};
  }

  friend Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 out;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
    return out;
  }

  friend Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 out;
    for (std::size_t k = 0; k < 9; ++k) out.m[k] = a.m[k] - b.m[k];
    return out;
  }

  double max_abs() const {
    double v = 0.0;
    for (double e : m) v = std::max(v, std::abs(e));
    return v;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double e : m) s += e * e;
    return std::sqrt(s);
  }
};

// Proper rotation, checked at construction: R'R = I within 1e-10 max-norm
// and det(R) = 1 within 1e-10.
class Rotation3 {
public:
  explicit Rotation3(const Mat3& m);

  static Rotation3 identity() { return Rotation3(Mat3::identity()); }

  const Mat3& matrix() const { return m_; }
  Vec3 operator*(Vec3 v) const { return m_ * v; }

private:
  Mat3 m_;
};

struct SvdResult {
  Mat3 u;
  Vec3 s;  // singular values, descending, >= 0
  Mat3 v;  // m = u * diag(s) * v^T
};

// SVD of a 3x3 matrix by one-sided Jacobi column orthogonalization.
// Handles rank-deficient input; U columns for zero singular values are
// completed to an orthonormal basis.
SvdResult svd3(const Mat3& m);

}  // namespace esr3d

#endif
