#include "esr3d/partition.hpp"

#include <algorithm>
#include <cmath>

namespace esr3d {

Partition::Partition(std::vector<double> values) : values_(std::move(values)) {
  const std::size_t n = values_.size();
  if (n < 2) throw InvalidPartition("partition needs at least 2 values");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidPartition("partition value not finite");
  }
  if (values_.front() != 0.0) throw InvalidPartition("partition must start at 0");
  if (values_.back() != 1.0) throw InvalidPartition("partition must end at 1");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(values_[i] < values_[i + 1]))
      throw InvalidPartition("partition values must be strictly increasing");
  }

  weights_.resize(n);
  weights_.front() = (values_[1] - values_[0]) / 2.0;
  weights_.back() = (values_[n - 1] - values_[n - 2]) / 2.0;
  for (std::size_t i = 1; i + 1 < n; ++i) weights_[i] = (values_[i + 1] - values_[i - 1]) / 2.0;
}

Partition Partition::uniform(std::size_t count) {
  if (count < 2) throw InvalidPartition("partition needs at least 2 values");
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i)
    v[i] = static_cast<double>(i) / static_cast<double>(count - 1);
  v.front() = 0.0;
  v.back() = 1.0;
  return Partition(std::move(v));
}

bool Partition::approx_equal(const Partition& other, double tol) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (std::abs(values_[i] - other.values_[i]) > tol) return false;
  }
  return true;
}

Partition Partition::flipped() const {
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i)
    v[i] = 1.0 - values_[values_.size() - 1 - i];
  v.front() = 0.0;
  v.back() = 1.0;
  return Partition(std::move(v));
}

}  // namespace esr3d
