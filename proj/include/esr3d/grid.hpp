#ifndef ESR3D_GRID_HPP
#define ESR3D_GRID_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "esr3d/linalg.hpp"
#include "esr3d/partition.hpp"

namespace esr3d {

// Contiguous view over one lattice row (fixed t index): x/y/z planes, m nodes.
struct RowView3 {
  const double* x;
  const double* y;
  const double* z;
  std::size_t m;

  Vec3 operator[](std::size_t i) const { return {x[i], y[i], z[i]}; }
};

namespace detail {

// M x N lattice of 3-vectors in structure-of-arrays layout, index i + M*j
// with i (the r direction) varying fastest, plus the two axis partitions.
// Immutable after construction; construction validates dimensions and
// finiteness.
template <class Tag>
class Lattice3 {
public:
  Lattice3(Partition r, Partition t, std::vector<double> x, std::vector<double> y,
           std::vector<double> z);
  Lattice3(Partition r, Partition t, const std::vector<Vec3>& points);

  std::size_t rows() const { return r_.size(); }  // M
  std::size_t cols() const { return t_.size(); }  // N

  const Partition& r() const { return r_; }
  const Partition& t() const { return t_; }

  std::span<const double> x() const { return x_; }
  std::span<const double> y() const { return y_; }
  std::span<const double> z() const { return z_; }

  std::size_t index(std::size_t i, std::size_t j) const { return i + rows() * j; }

  Vec3 at(std::size_t i, std::size_t j) const {
    const std::size_t k = index(i, j);
    return {x_[k], y_[k], z_[k]};
  }

  RowView3 row(std::size_t j) const {
    const std::size_t off = rows() * j;
    return {x_.data() + off, y_.data() + off, z_.data() + off, rows()};
  }

private:
  Partition r_;
  Partition t_;
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> z_;
};

}  // namespace detail

// Discretized parametrized surface: points c(r_i, t_j).
using SurfaceGrid = detail::Lattice3<struct SurfaceGridTag>;
// Discretized shape function: vectors q(r_i, t_j).
using ShapeField = detail::Lattice3<struct ShapeFieldTag>;

SurfaceGrid make_surface_grid(Partition r, Partition t, const std::vector<Vec3>& points);

// Discretized orientation-preserving diffeomorphism of [0,1]: sample values
// h(r_i) (non-decreasing, h(0)=0, h(1)=1) and derivative values h'(r_i) >= 0.
class Diffeo1D {
public:
  Diffeo1D(std::vector<double> samples, std::vector<double> derivative);

  static Diffeo1D identity(const Partition& r);

  // Derivative by forward differences, h'(r_i) = (h(r_{i+1})-h(r_i))/Dr_i for
  // i < M-1; the last node takes the backward difference (the preceding
  // segment's slope).
  static Diffeo1D from_samples(std::vector<double> samples, const Partition& r);

  std::size_t size() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }
  const std::vector<double>& derivative() const { return derivative_; }

private:
  std::vector<double> samples_;
  std::vector<double> derivative_;
};

// Discretized unit-square homeomorphism acting on the first coordinate only:
// h(r_i, t_j) = (h_j(r_i), t_j), one Diffeo1D per lattice row.
class Warp2D {
public:
  explicit Warp2D(std::vector<Diffeo1D> rows);

  static Warp2D identity(const Partition& r, const Partition& t);

  std::size_t rows() const { return rows_.size(); }          // N
  std::size_t samples_per_row() const;                       // M
  const Diffeo1D& row(std::size_t j) const { return rows_[j]; }

private:
  std::vector<Diffeo1D> rows_;
};

// Lattice reindexings. Flips remap the affected partition by x -> 1-x;
// transpose swaps the roles of r and t.
SurfaceGrid flip_r(const SurfaceGrid& g);
SurfaceGrid flip_t(const SurfaceGrid& g);
SurfaceGrid transpose(const SurfaceGrid& g);

// The eight candidate reindexings that move each lattice corner to position
// (0,0), in original and transposed traversal order:
//   0: identity       1: flip_r          2: flip_t          3: flip_r+flip_t
//   4: transpose(0)   5: transpose(1)    6: transpose(2)    7: transpose(3)
// With include_reversed = false only the first four are produced. Transposed
// candidates require M == N (NonSquareReversal otherwise).
std::vector<SurfaceGrid> corner_candidates(const SurfaceGrid& g, bool include_reversed = true);

}  // namespace esr3d

#endif
