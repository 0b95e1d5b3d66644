#include "esr3d/registration.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>
#include <utility>

#include "esr3d/align.hpp"
#include "esr3d/kernels.hpp"
#include "esr3d/shape.hpp"
#include "esr3d/spline.hpp"

namespace esr3d {

namespace {

unsigned resolve_threads(int requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs fn(j) for j in [0, count) on up to `threads` workers. Exceptions are
// rethrown on the calling thread.
template <class Fn>
void parallel_rows(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::min<std::size_t>(threads, count);
  if (threads <= 1) {
    for (std::size_t j = 0; j < count; ++j) fn(j);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= count) return;
      try {
        fn(j);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double weighted_ssd_planes(const std::vector<double>& ax, const std::vector<double>& ay,
                           const std::vector<double>& az, const std::vector<double>& bx,
                           const std::vector<double>& by, const std::vector<double>& bz,
                           const Partition& r, const Partition& t) {
  return kernels::active().weighted_ssd(ax.data(), ay.data(), az.data(), bx.data(), by.data(),
                                        bz.data(), r.trapezoid_weights().data(), r.size(),
                                        t.trapezoid_weights().data(), t.size());
}

}  // namespace

RegistrationResult dp_surface_min(const SurfaceGrid& c1, const SurfaceGrid& c2,
                                  const RegistrationConfig& cfg) {
  if (c1.rows() != c2.rows() || c1.cols() != c2.cols())
    throw DimensionMismatch("surfaces have different lattice dimensions");
  if (!c1.r().approx_equal(c2.r()) || !c1.t().approx_equal(c2.t()))
    throw PartitionMismatch("surfaces have different partitions");
  if (cfg.tol <= 0.0) throw InvalidArgument("tol must be positive");
  if (cfg.iten < 1) throw InvalidArgument("iten must be >= 1");

  const Partition& r = c1.r();
  const Partition& t = c1.t();
  const std::size_t m = c1.rows(), n = c1.cols();
  const auto& wr = r.trapezoid_weights();
  const auto& wt = t.trapezoid_weights();
  const unsigned threads = resolve_threads(cfg.threads);

  const ShapeField q1 = shape_function(c1);
  const ShapeField q2 = shape_function(c2);

  // The DP always rematches the original q2 rows, so their splines are fixed.
  std::vector<CubicSpline3> q2_splines;
  q2_splines.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const RowView3 row = q2.row(j);
    q2_splines.emplace_back(r.values(), std::span<const double>{row.x, m},
                            std::span<const double>{row.y, m}, std::span<const double>{row.z, m});
  }

  // q2hat starts as q2 and is overwritten row-by-row each iteration.
  std::vector<double> q2hx(q2.x().begin(), q2.x().end());
  std::vector<double> q2hy(q2.y().begin(), q2.y().end());
  std::vector<double> q2hz(q2.z().begin(), q2.z().end());
  std::vector<double> q1hx(m * n), q1hy(m * n), q1hz(m * n);

  std::vector<Diffeo1D> diffeos(n, Diffeo1D::identity(r));
  std::vector<double> row_e(n, 0.0);
  std::vector<double> trace;

  Rotation3 rotation = Rotation3::identity();
  Mat3 rot_prev = Mat3::identity();
  double e_curr = 1e6;
  int iter = 0;

  for (;;) {
    ++iter;
    const double e_prev = e_curr;

    // Rotation step: best R aligning R*q1 with the current q2hat.
    const ShapeField q2hat_field(r, t, q2hx, q2hy, q2hz);
    const KabschResult ku = kabsch_umeyama(q2hat_field, q1);
    const Mat3 rot = ku.rotation.matrix();

    kernels::active().rotate_vectors(rot.m.data(), q1.x().data(), q1.y().data(), q1.z().data(),
                                     q1hx.data(), q1hy.data(), q1hz.data(), m * n);
    if (cfg.validate) {
      std::vector<double> px(m * n), py(m * n), pz(m * n);
      kernels::active().rotate_vectors(rot_prev.m.data(), q1.x().data(), q1.y().data(),
                                       q1.z().data(), px.data(), py.data(), pz.data(), m * n);
      const double f_new = weighted_ssd_planes(q2hx, q2hy, q2hz, q1hx, q1hy, q1hz, r, t);
      const double f_old = weighted_ssd_planes(q2hx, q2hy, q2hz, px, py, pz, r, t);
      if (f_new > f_old + 1e-9)
        throw NumericalFailure("rotation step increased the alignment objective");
    }
    rotation = ku.rotation;
    rot_prev = rot;

    // Warp step: rematch every row of the original q2 against the rotated q1.
    parallel_rows(n, threads, [&](std::size_t j) {
      const std::size_t off = m * j;
      const RowView3 q1row{q1hx.data() + off, q1hy.data() + off, q1hz.data() + off, m};
      const RowView3 q2row = q2.row(j);
      DpRowMatch match = dp_match(q1row, q2row, q2_splines[j], r, cfg.dp);

      if (cfg.validate) {
        double identity_e = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const Vec3 d = q1row[i] - q2row[i];
          identity_e += wr[i] * d.squared_norm();
        }
        if (match.objective > identity_e + 1e-9)
          throw NumericalFailure("row DP did worse than the identity warp");
      }

      const Diffeo1D& h = match.diffeo;
      double e = 0.0;
      std::size_t hint = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const Vec3 v = q2_splines[j].eval(h.samples()[i], hint);
        const double root = std::sqrt(h.derivative()[i]);
        q2hx[off + i] = root * v.x;
        q2hy[off + i] = root * v.y;
        q2hz[off + i] = root * v.z;
        const double dx = q1hx[off + i] - q2hx[off + i];
        const double dy = q1hy[off + i] - q2hy[off + i];
        const double dz = q1hz[off + i] - q2hz[off + i];
        e += wr[i] * (dx * dx + dy * dy + dz * dz);
      }
      row_e[j] = e;
      diffeos[j] = std::move(match.diffeo);
    });

    e_curr = 0.0;
    for (std::size_t j = 0; j < n; ++j) e_curr += wt[j] * row_e[j];
    trace.push_back(e_curr);

    if (std::abs(e_curr - e_prev) < cfg.tol || iter > cfg.iten) break;
  }

  // Assemble outputs: rotate c1, respline c2 rows at the final warp samples.
  SurfaceGrid registered_first = rotate(c1, rotation.matrix());
  std::vector<double> c2hx(m * n), c2hy(m * n), c2hz(m * n);
  parallel_rows(n, threads, [&](std::size_t j) {
    const RowView3 crow = c2.row(j);
    const CubicSpline3 s(r.values(), std::span<const double>{crow.x, m},
                         std::span<const double>{crow.y, m}, std::span<const double>{crow.z, m});
    const std::size_t off = m * j;
    std::size_t hint = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Vec3 v = s.eval(diffeos[j].samples()[i], hint);
      c2hx[off + i] = v.x;
      c2hy[off + i] = v.y;
      c2hz[off + i] = v.z;
    }
  });

  RegistrationResult result{
      .energy = e_curr,
      .distance = std::sqrt(std::max(e_curr, 0.0)),
      .rotation = rotation,
      .warp = Warp2D(std::move(diffeos)),
      .registered_first = std::move(registered_first),
      .registered_second = SurfaceGrid(r, t, std::move(c2hx), std::move(c2hy), std::move(c2hz)),
      .field_first = ShapeField(r, t, std::move(q1hx), std::move(q1hy), std::move(q1hz)),
      .field_second = ShapeField(r, t, std::move(q2hx), std::move(q2hy), std::move(q2hz)),
      .iterations = iter,
      .energy_trace = std::move(trace),
      .row_energies = std::move(row_e),
  };
  return result;
}

RegistrationResult register_surfaces(const SurfaceGrid& c1, const SurfaceGrid& c2,
                                     const RegistrationConfig& cfg) {
  return dp_surface_min(normalize_unit_area(c1), normalize_unit_area(c2), cfg);
}

CornerSearchResult register_with_corner_search(const SurfaceGrid& c1, const SurfaceGrid& c2,
                                               const RegistrationConfig& cfg,
                                               bool include_reversed) {
  const std::vector<SurfaceGrid> candidates = corner_candidates(c2, include_reversed);
  CornerSearchResult out{dp_surface_min(c1, candidates[0], cfg), 0};
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    RegistrationResult res = dp_surface_min(c1, candidates[k], cfg);
    if (res.distance < out.best.distance) {
      out.best = std::move(res);
      out.candidate_index = k;
    }
  }
  return out;
}

}  // namespace esr3d
