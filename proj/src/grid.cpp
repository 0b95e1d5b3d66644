#include "esr3d/grid.hpp"

#include <cmath>
#include <utility>

namespace esr3d {

namespace detail {

namespace {

void check_plane(const std::vector<double>& p, std::size_t expected, const char* what) {
  if (p.size() != expected) throw DimensionMismatch(std::string(what) + ": plane size mismatch");
  for (double v : p) {
    if (!std::isfinite(v)) throw NonFiniteValue(std::string(what) + ": non-finite coordinate");
  }
}

}  // namespace

template <class Tag>
Lattice3<Tag>::Lattice3(Partition r, Partition t, std::vector<double> x, std::vector<double> y,
                        std::vector<double> z)
    : r_(std::move(r)), t_(std::move(t)), x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
  const std::size_t count = r_.size() * t_.size();
  check_plane(x_, count, "lattice x");
  check_plane(y_, count, "lattice y");
  check_plane(z_, count, "lattice z");
}

template <class Tag>
Lattice3<Tag>::Lattice3(Partition r, Partition t, const std::vector<Vec3>& points)
    : r_(std::move(r)), t_(std::move(t)) {
  const std::size_t count = r_.size() * t_.size();
  if (points.size() != count)
    throw DimensionMismatch("lattice: point count does not match partitions");
  x_.resize(count);
  y_.resize(count);
  z_.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    x_[k] = points[k].x;
    y_[k] = points[k].y;
    z_[k] = points[k].z;
    if (!std::isfinite(x_[k]) || !std::isfinite(y_[k]) || !std::isfinite(z_[k]))
      throw NonFiniteValue("lattice: non-finite coordinate");
  }
}

template class Lattice3<struct SurfaceGridTag>;
template class Lattice3<struct ShapeFieldTag>;

}  // namespace detail

SurfaceGrid make_surface_grid(Partition r, Partition t, const std::vector<Vec3>& points) {
  return SurfaceGrid(std::move(r), std::move(t), points);
}

Diffeo1D::Diffeo1D(std::vector<double> samples, std::vector<double> derivative)
    : samples_(std::move(samples)), derivative_(std::move(derivative)) {
  const std::size_t n = samples_.size();
  if (n < 2) throw DimensionMismatch("diffeomorphism needs at least 2 samples");
  if (derivative_.size() != n)
    throw DimensionMismatch("diffeomorphism sample/derivative length mismatch");
  constexpr double end_tol = 1e-12;
  if (std::abs(samples_.front()) > end_tol || std::abs(samples_.back() - 1.0) > end_tol)
    throw InvalidPartition("diffeomorphism must map 0 to 0 and 1 to 1");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (samples_[i + 1] < samples_[i])
      throw InvalidPartition("diffeomorphism samples must be non-decreasing");
  }
  for (double d : derivative_) {
    if (!(d >= 0.0)) throw InvalidPartition("diffeomorphism derivative must be non-negative");
  }
}

Diffeo1D Diffeo1D::identity(const Partition& r) {
  return Diffeo1D(r.values(), std::vector<double>(r.size(), 1.0));
}

Diffeo1D Diffeo1D::from_samples(std::vector<double> samples, const Partition& r) {
  const std::size_t n = samples.size();
  if (n != r.size()) throw DimensionMismatch("diffeomorphism sample count != partition size");
  std::vector<double> d(n);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (samples[i + 1] - samples[i]) / r.spacing(i);
  d[n - 1] = d[n - 2];
  return Diffeo1D(std::move(samples), std::move(d));
}

Warp2D::Warp2D(std::vector<Diffeo1D> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw DimensionMismatch("warp needs at least one row");
  const std::size_t m = rows_.front().size();
  for (const Diffeo1D& d : rows_) {
    if (d.size() != m) throw DimensionMismatch("warp rows have differing sample counts");
  }
}

std::size_t Warp2D::samples_per_row() const { return rows_.front().size(); }

Warp2D Warp2D::identity(const Partition& r, const Partition& t) {
  return Warp2D(std::vector<Diffeo1D>(t.size(), Diffeo1D::identity(r)));
}

namespace {

// Rebuilds a grid through an index map (i,j) -> source index.
template <class Map>
SurfaceGrid remap(const Partition& r, const Partition& t, const SurfaceGrid& g, Map map) {
  const std::size_t m = r.size(), n = t.size();
  std::vector<double> x(m * n), y(m * n), z(m * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t dst = i + m * j;
      const std::size_t src = map(i, j);
      x[dst] = g.x()[src];
      y[dst] = g.y()[src];
      z[dst] = g.z()[src];
    }
  }
  return SurfaceGrid(r, t, std::move(x), std::move(y), std::move(z));
}

}  // namespace

SurfaceGrid flip_r(const SurfaceGrid& g) {
  const std::size_t m = g.rows();
  return remap(g.r().flipped(), g.t(), g,
               [&](std::size_t i, std::size_t j) { return g.index(m - 1 - i, j); });
}

SurfaceGrid flip_t(const SurfaceGrid& g) {
  const std::size_t n = g.cols();
  return remap(g.r(), g.t().flipped(), g,
               [&](std::size_t i, std::size_t j) { return g.index(i, n - 1 - j); });
}

SurfaceGrid transpose(const SurfaceGrid& g) {
  return remap(g.t(), g.r(), g, [&](std::size_t i, std::size_t j) { return g.index(j, i); });
}

std::vector<SurfaceGrid> corner_candidates(const SurfaceGrid& g, bool include_reversed) {
  if (include_reversed && g.rows() != g.cols())
    throw NonSquareReversal("transposed candidates require M == N");

  std::vector<SurfaceGrid> out;
  out.reserve(include_reversed ? 8 : 4);
  out.push_back(g);
  out.push_back(flip_r(g));
  out.push_back(flip_t(g));
  out.push_back(flip_t(flip_r(g)));
  if (include_reversed) {
    for (std::size_t k = 0; k < 4; ++k) out.push_back(transpose(out[k]));
  }
  return out;
}

}  // namespace esr3d
