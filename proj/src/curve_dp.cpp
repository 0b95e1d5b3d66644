#include "esr3d/curve_dp.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

namespace esr3d {

RowEnergy row_energy(RowView3 q1, RowView3 q2, const Diffeo1D& h, const Partition& r) {
  const std::size_t m = r.size();
  if (q1.m != m || q2.m != m || h.size() != m)
    throw DimensionMismatch("row_energy: row lengths and partition size differ");

  const CubicSpline3 s(r.values(), {q2.x, m}, {q2.y, m}, {q2.z, m});
  const auto& w = r.trapezoid_weights();

  RowEnergy out;
  out.per_node.resize(m);
  std::size_t hint = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec3 v = s.eval(h.samples()[i], hint);
    const double root = std::sqrt(h.derivative()[i]);
    const Vec3 d = q1[i] - root * v;
    out.per_node[i] = d.squared_norm();
    out.value += w[i] * out.per_node[i];
  }
  return out;
}

namespace {

struct Move {
  int di;
  int dm;
};

// Scan order (di ascending, then dm) doubles as the deterministic tie-break
// order of the DP.
std::vector<Move> admissible_moves(const DpConfig& cfg) {
  if (cfg.max_slope_num < 1 || cfg.max_slope_den < 1)
    throw InvalidArgument("slope window bounds must be >= 1");
  std::vector<Move> moves;
  for (int di = 1; di <= cfg.max_slope_den; ++di) {
    for (int dm = 1; dm <= cfg.max_slope_num; ++dm) {
      if (std::gcd(di, dm) == 1) moves.push_back({di, dm});
    }
  }
  return moves;
}

}  // namespace

namespace {

// Fine-value DP: h-values live on a uniform grid of (m-1)*res+1 values over
// [0,1]; every move advances one column with slope in [1/limit, limit]. The
// per-value spline samples and inner products are precomputed, so a
// transition costs a handful of flops.
struct FinePath {
  std::vector<double> samples;
  double objective = 0.0;
  bool found = false;
};

FinePath fine_value_dp(RowView3 q1, RowView3 q2, const CubicSpline3& q2_spline,
                       const Partition& r, int limit, int res) {
  const std::size_t m = r.size();
  const std::size_t vres = static_cast<std::size_t>(res) * (m - 1) + 1;
  const double vstep = 1.0 / static_cast<double>(vres - 1);
  const auto& w = r.trapezoid_weights();
  const double smin = 1.0 / static_cast<double>(limit);
  const double smax = static_cast<double>(limit);
  const double inf = std::numeric_limits<double>::infinity();

  // spline samples of q2 on the value grid, plus their squared norms
  std::vector<double> q2x(vres), q2y(vres), q2z(vres), q2nn(vres);
  {
    std::size_t hint = 0;
    for (std::size_t j = 0; j < vres; ++j) {
      const Vec3 v = q2_spline.eval(static_cast<double>(j) * vstep, hint);
      q2x[j] = v.x;
      q2y[j] = v.y;
      q2z[j] = v.z;
      q2nn[j] = v.squared_norm();
    }
  }

  std::vector<double> prev(vres, inf), next(vres, inf);
  std::vector<std::int32_t> parent(m * vres, -1);
  std::vector<double> dots(vres);
  prev[0] = 0.0;

  for (std::size_t i = 1; i < m; ++i) {
    const double dr = r.spacing(i - 1);
    const double sym = dr * static_cast<double>(vres - 1);
    const std::size_t kmin = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(smin * sym - 1e-12)));
    const std::size_t kmax = std::min<std::size_t>(
        vres - 1, static_cast<std::size_t>(std::floor(smax * sym + 1e-12)));

    const Vec3 q1p = q1[i - 1];
    const double q1pp = q1p.squared_norm();
    for (std::size_t j = 0; j < vres; ++j)
      dots[j] = q1p.x * q2x[j] + q1p.y * q2y[j] + q1p.z * q2z[j];

    std::fill(next.begin(), next.end(), inf);
    std::int32_t* par = parent.data() + i * vres;
    for (std::size_t k = kmin; k <= kmax; ++k) {
      const double slope = static_cast<double>(k) / sym;
      const double root = std::sqrt(slope);
      double tail = w[i - 1] * q1pp;
      if (i == m - 1) {
        const Vec3 d = q1[m - 1] - root * q2[m - 1];
        tail += w[m - 1] * d.squared_norm();
      }
      const double cb = -2.0 * root * w[i - 1];
      const double cc = slope * w[i - 1];
      double* out = next.data() + k;
      for (std::size_t jp = 0; jp + k < vres; ++jp) {
        const double base = prev[jp];
        if (!(base < inf)) continue;
        const double total = base + tail + cb * dots[jp] + cc * q2nn[jp];
        if (total < out[jp]) {
          out[jp] = total;
          par[jp + k] = static_cast<std::int32_t>(jp);
        }
      }
    }
    std::swap(prev, next);
  }

  FinePath out;
  out.objective = prev[vres - 1];
  if (!(out.objective < inf)) return out;
  out.found = true;
  out.samples.resize(m);
  std::size_t j = vres - 1;
  for (std::size_t i = m; i-- > 0;) {
    out.samples[i] = static_cast<double>(j) * vstep;
    if (i > 0) j = static_cast<std::size_t>(parent[i * vres + j]);
  }
  out.samples.front() = 0.0;
  out.samples.back() = 1.0;
  return out;
}

// One banded re-solve around the incumbent samples: per column, candidate
// values current[i] + k*step for |k| <= band (endpoints pinned), transitions
// between consecutive columns restricted to the slope window. The incumbent
// is always a candidate path, so the objective cannot increase.
double refine_pass(std::vector<double>& samples, RowView3 q1, RowView3 q2,
                   const CubicSpline3& q2_spline, const Partition& r, double step, int band,
                   double slope_min, double slope_max) {
  const std::size_t m = r.size();
  const std::size_t width = 2 * static_cast<std::size_t>(band) + 1;
  const auto& w = r.trapezoid_weights();
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> values(m * width);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < width; ++k) {
      const double v = samples[i] + (static_cast<double>(k) - band) * step;
      values[i * width + k] = std::clamp(v, 0.0, 1.0);
    }
  }
  for (std::size_t k = 0; k < width; ++k) {
    values[k] = 0.0;
    values[(m - 1) * width + k] = 1.0;
  }

  std::vector<double> cost(m * width, inf);
  std::vector<std::int32_t> parent(m * width, -1);
  cost[static_cast<std::size_t>(band)] = 0.0;

  std::size_t hint = 0;
  for (std::size_t i = 1; i < m; ++i) {
    const bool last_col = (i == m - 1);
    const double dr = r.spacing(i - 1);
    for (std::size_t kp = 0; kp < width; ++kp) {
      const double base = cost[(i - 1) * width + kp];
      if (!(base < inf)) continue;
      const double vp = values[(i - 1) * width + kp];
      const Vec3 qp = q2_spline.eval(vp, hint);
      const Vec3 q1p = q1[i - 1];
      const Vec3 q1l = q1[m - 1];
      const Vec3 q2l = q2[m - 1];
      for (std::size_t k = 0; k < width; ++k) {
        const double vc = values[i * width + k];
        const double slope = (vc - vp) / dr;
        if (slope < slope_min || slope > slope_max) continue;
        const double root = std::sqrt(slope);
        Vec3 d = q1p - root * qp;
        double seg = w[i - 1] * d.squared_norm();
        if (last_col) {
          d = q1l - root * q2l;
          seg += w[m - 1] * d.squared_norm();
        }
        const double total = base + seg;
        if (total < cost[i * width + k]) {
          cost[i * width + k] = total;
          parent[i * width + k] = static_cast<std::int32_t>(kp);
        }
      }
    }
  }

  // the endpoint candidates are all pinned to 1; any of them closes the path
  std::size_t best_k = 0;
  for (std::size_t k = 1; k < width; ++k) {
    if (cost[(m - 1) * width + k] < cost[(m - 1) * width + best_k]) best_k = k;
  }
  const double objective = cost[(m - 1) * width + best_k];

  std::size_t k = best_k;
  for (std::size_t i = m; i-- > 0;) {
    samples[i] = values[i * width + k];
    if (i > 0) k = static_cast<std::size_t>(parent[i * width + k]);
  }
  samples.front() = 0.0;
  samples.back() = 1.0;
  return objective;
}

}  // namespace

DpRowMatch dp_match(RowView3 q1, RowView3 q2, const CubicSpline3& q2_spline, const Partition& r,
                    const DpConfig& cfg) {
  const std::size_t m = r.size();
  if (m < 3) throw GridTooSmall("dp_match needs at least 3 samples");
  if (q1.m != m || q2.m != m || q2_spline.size() != m)
    throw DimensionMismatch("dp_match: row lengths and partition size differ");
  if (cfg.refine_passes < 0 || cfg.refine_band < 1)
    throw InvalidArgument("refinement parameters out of range");
  if (cfg.fine_slope_limit < 0 || (cfg.fine_slope_limit > 0 && cfg.fine_res < 1))
    throw InvalidArgument("fine-stage parameters out of range");

  const std::vector<Move> moves = admissible_moves(cfg);
  const auto& rv = r.values();
  const auto& w = r.trapezoid_weights();
  const double inf = std::numeric_limits<double>::infinity();

  // cost[col * m + val]: cheapest path cost from (0,0) to h(r_col) = r_val,
  // where every node i < col contributes w[i] * E_i with the slope of the
  // move leaving it, and arrival at the last column adds its node term with
  // the incoming slope.
  std::vector<double> cost(m * m, inf);
  std::vector<std::int32_t> parent(m * m, -1);
  cost[0] = 0.0;

  std::vector<double> frac(static_cast<std::size_t>(cfg.max_slope_den));
  std::vector<std::size_t> hints(static_cast<std::size_t>(cfg.max_slope_den), 0);

  for (std::size_t b = 1; b < m; ++b) {
    const bool last_col = (b == m - 1);
    for (std::size_t mv = 0; mv < moves.size(); ++mv) {
      const std::size_t di = static_cast<std::size_t>(moves[mv].di);
      const std::size_t dm = static_cast<std::size_t>(moves[mv].dm);
      if (b < di) continue;
      const std::size_t a = b - di;
      const double inv_dr = 1.0 / (rv[b] - rv[a]);
      for (std::size_t k = 1; k < di; ++k) frac[k] = (rv[a + k] - rv[a]) * inv_dr;

      const double* base_row = cost.data() + a * m;
      double* out_row = cost.data() + b * m;
      for (std::size_t mb = dm; mb < m; ++mb) {
        const std::size_t ma = mb - dm;
        const double base = base_row[ma];
        if (!(base < inf)) continue;

        const double rise = rv[mb] - rv[ma];
        const double slope = rise * inv_dr;
        const double root = std::sqrt(slope);

        // k = 0: h lands exactly on the lattice value r_ma.
        Vec3 d = q1[a] - root * q2[ma];
        double seg = w[a] * d.squared_norm();
        for (std::size_t k = 1; k < di; ++k) {
          const Vec3 v = q2_spline.eval(rv[ma] + rise * frac[k], hints[k]);
          d = q1[a + k] - root * v;
          seg += w[a + k] * d.squared_norm();
        }
        if (last_col) {
          d = q1[m - 1] - root * q2[m - 1];
          seg += w[m - 1] * d.squared_norm();
        }

        const double total = base + seg;
        if (total < out_row[mb]) {
          out_row[mb] = total;
          parent[b * m + mb] = static_cast<std::int32_t>(mv);
        }
      }
    }
  }

  double objective = cost[(m - 1) * m + (m - 1)];
  if (!(objective < inf)) throw NumericalFailure("dp_match: no admissible path");

  std::vector<double> samples(m);
  samples[m - 1] = 1.0;
  std::size_t b = m - 1, mb = m - 1;
  while (b > 0) {
    const std::int32_t mv = parent[b * m + mb];
    const std::size_t di = static_cast<std::size_t>(moves[static_cast<std::size_t>(mv)].di);
    const std::size_t dm = static_cast<std::size_t>(moves[static_cast<std::size_t>(mv)].dm);
    const std::size_t a = b - di, ma = mb - dm;
    samples[a] = rv[ma];
    const double rise = rv[mb] - rv[ma];
    const double inv_dr = 1.0 / (rv[b] - rv[a]);
    for (std::size_t k = 1; k < di; ++k)
      samples[a + k] = rv[ma] + rise * ((rv[a + k] - rv[a]) * inv_dr);
    b = a;
    mb = ma;
  }

  // Stage 2: the fine-value DP admits steep matches outside the rational
  // move set; keep whichever path is cheaper.
  double slope_min = 1.0 / static_cast<double>(cfg.max_slope_den);
  double slope_max = static_cast<double>(cfg.max_slope_num);
  if (cfg.fine_slope_limit > 0) {
    FinePath fine = fine_value_dp(q1, q2, q2_spline, r, cfg.fine_slope_limit, cfg.fine_res);
    if (fine.found && fine.objective < objective) {
      samples = std::move(fine.samples);
      objective = fine.objective;
    }
    slope_min = std::min(slope_min, 1.0 / static_cast<double>(cfg.fine_slope_limit));
    slope_max = std::max(slope_max, static_cast<double>(cfg.fine_slope_limit));
  }

  // Stage 3: banded off-lattice refinement with a shrinking step.
  double step = 0.5 / static_cast<double>(m - 1);
  for (int pass = 0; pass < cfg.refine_passes; ++pass) {
    objective = refine_pass(samples, q1, q2, q2_spline, r, step, cfg.refine_band, slope_min,
                            slope_max);
    step *= 0.5;
  }

  return {Diffeo1D::from_samples(std::move(samples), r), objective};
}

DpRowMatch dp_match(RowView3 q1, RowView3 q2, const Partition& r, const DpConfig& cfg) {
  const std::size_t m = r.size();
  if (q2.m != m) throw DimensionMismatch("dp_match: row length and partition size differ");
  const CubicSpline3 s(r.values(), {q2.x, m}, {q2.y, m}, {q2.z, m});
  return dp_match(q1, q2, s, r, cfg);
}

}  // namespace esr3d
