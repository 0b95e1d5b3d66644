#include "esr3d/generators.hpp"

#include <cmath>
#include <numbers>

namespace esr3d {

Mat3 family_pair_rotation() { return {{0, 1, 0, 0, 0, 1, 1, 0, 0}}; }

Vec3 evaluate(const SurfaceFamily& f, double r, double t) {
  constexpr double pi = std::numbers::pi;
  const double kpi = static_cast<double>(f.k) * pi;
  switch (f.kind) {
    case SurfaceKind::SineType1:
      return {r, t, std::sin(kpi * r)};
    case SurfaceKind::SineType2:
      return {std::sin(kpi * r), r, t};
    case SurfaceKind::HelicoidType1:
      return {r * std::cos(kpi * t), r * std::sin(kpi * t), kpi * t};
    case SurfaceKind::HelicoidType2:
      return {kpi * t, r * std::cos(kpi * t), r * std::sin(kpi * t)};
    case SurfaceKind::CosSineType1:
      return {r, t, std::cos(0.5 * pi * r) * std::sin(0.5 * pi * t)};
    case SurfaceKind::CosSineType2:
      return {std::cos(0.5 * pi * r) * std::sin(0.5 * pi * t), r, t};
  }
  throw InvalidArgument("unknown surface kind");
}

namespace {

bool needs_k(SurfaceKind kind) {
  return kind != SurfaceKind::CosSineType1 && kind != SurfaceKind::CosSineType2;
}

SurfaceGrid sample(const SurfaceFamily& f, const Partition& r, const Partition& t, double ar,
                   double at) {
  if (needs_k(f.kind) && f.k < 1) throw InvalidArgument("frequency parameter k must be >= 1");
  const std::size_t m = r.size(), n = t.size();
  std::vector<double> x(m * n), y(m * n), z(m * n);
  for (std::size_t j = 0; j < n; ++j) {
    const double tj = at == 1.0 ? t[j] : std::pow(t[j], at);
    for (std::size_t i = 0; i < m; ++i) {
      const double ri = ar == 1.0 ? r[i] : std::pow(r[i], ar);
      const Vec3 p = evaluate(f, ri, tj);
      const std::size_t idx = i + m * j;
      x[idx] = p.x;
      y[idx] = p.y;
      z[idx] = p.z;
    }
  }
  return SurfaceGrid(r, t, std::move(x), std::move(y), std::move(z));
}

}  // namespace

SurfaceGrid generate(const SurfaceFamily& f, const Partition& r, const Partition& t) {
  return sample(f, r, t, 1.0, 1.0);
}

SurfaceGrid apply_gamma(const SurfaceGrid& g, const GammaWarp& w, const SurfaceFamily& f) {
  if (w.exponent_r < 1.0 || w.exponent_t < 1.0)
    throw InvalidArgument("gamma exponents must be >= 1");
  return sample(f, g.r(), g.t(), w.exponent_r, w.exponent_t);
}

SurfaceKind parse_surface_kind(const std::string& name) {
  if (name == "sine1") return SurfaceKind::SineType1;
  if (name == "sine2") return SurfaceKind::SineType2;
  if (name == "helicoid1") return SurfaceKind::HelicoidType1;
  if (name == "helicoid2") return SurfaceKind::HelicoidType2;
  if (name == "cossine1") return SurfaceKind::CosSineType1;
  if (name == "cossine2") return SurfaceKind::CosSineType2;
  throw InvalidArgument("unknown surface family: " + name);
}

const char* surface_kind_name(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::SineType1:
      return "sine1";
    case SurfaceKind::SineType2:
      return "sine2";
    case SurfaceKind::HelicoidType1:
      return "helicoid1";
    case SurfaceKind::HelicoidType2:
      return "helicoid2";
    case SurfaceKind::CosSineType1:
      return "cossine1";
    case SurfaceKind::CosSineType2:
      return "cossine2";
  }
  return "unknown";
}

}  // namespace esr3d
