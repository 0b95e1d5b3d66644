#ifndef ESR3D_PARTITION_HPP
#define ESR3D_PARTITION_HPP

#include <cstddef>
#include <vector>

#include "esr3d/errors.hpp"

namespace esr3d {

// Strictly increasing partition 0 = v[0] < v[1] < ... < v[n-1] = 1 of the unit
// interval, together with its trapezoid node weights. The weights are the
// per-node quadrature weights of the composite trapezoidal rule:
//   w[0] = (v[1]-v[0])/2,  w[n-1] = (v[n-1]-v[n-2])/2,
//   w[i] = (v[i+1]-v[i-1])/2 otherwise;
// they are all positive and sum to 1.
class Partition {
public:
  explicit Partition(std::vector<double> values);

  static Partition uniform(std::size_t count);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  // Delta v[i] = v[i+1] - v[i], defined for i < size()-1.
  double spacing(std::size_t i) const { return values_[i + 1] - values_[i]; }

  const std::vector<double>& trapezoid_weights() const { return weights_; }

  // Per-value comparison with absolute tolerance (reindexed partitions can
  // differ from their source by rounding of the 1-x remap).
  bool approx_equal(const Partition& other, double tol = 1e-12) const;

  // Remaps values by x -> 1-x and reverses, preserving endpoint exactness.
  Partition flipped() const;

private:
  std::vector<double> values_;
  std::vector<double> weights_;
};

}  // namespace esr3d

#endif
