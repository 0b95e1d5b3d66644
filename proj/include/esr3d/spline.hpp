#ifndef ESR3D_SPLINE_HPP
#define ESR3D_SPLINE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "esr3d/linalg.hpp"

namespace esr3d {

// Natural cubic splines (zero second derivative at both ends) through a shared
// strictly increasing breakpoint sequence, one spline per vector component.
// Evaluation at a breakpoint returns the node value exactly.
class CubicSpline3 {
public:
  CubicSpline3(std::span<const double> x, std::span<const double> px,
               std::span<const double> py, std::span<const double> pz);

  std::size_t size() const { return x_.size(); }

  Vec3 operator()(double u) const;

  // Same as operator(), but starts the interval search at *hint and updates
  // it; O(1) amortized for monotone evaluation sequences.
  Vec3 eval(double u, std::size_t& hint) const;

private:
  std::size_t locate(double u) const;
  Vec3 piece(std::size_t k, double u) const;

  std::vector<double> x_;
  // Per-interval polynomial y0 + t*(c1 + t*(c2 + t*c3)), t = u - x_[k],
  // stored per component.
  std::vector<double> y_[3];
  std::vector<double> c1_[3];
  std::vector<double> c2_[3];
  std::vector<double> c3_[3];
};

}  // namespace esr3d

#endif
