// esr3d: partial elastic shape registration of gridded 3D surfaces.
//
// Subcommands:
//   generate   write an analytic test surface (optionally gamma-warped)
//   register   register two surface files and report distance/rotation/warp
//   reproduce  run one of the bundled validation cases by id
//
// Exit codes: 0 success, 2 argument error, 3 parse/IO error, 4 numerical
// failure.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "esr3d/experiments.hpp"
#include "esr3d/generators.hpp"
#include "esr3d/kernels.hpp"
#include "esr3d/registration.hpp"
#include "esr3d/shape.hpp"
#include "esr3d/surface_io.hpp"

using nlohmann::json;

namespace {

struct EmitOptions {
  std::string warp_path;
  std::string registered_prefix;
  std::string json_path;
};

int thread_count(int flag_value) {
  // The environment variable wins over the flag.
  if (const char* env = std::getenv("ESR3D_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return flag_value;
}

json rotation_to_json(const esr3d::Mat3& m) {
  json out = json::array();
  for (double e : m.m) out.push_back(e);
  return out;
}

json make_report(const esr3d::RegistrationResult& res, const std::string& first,
                 const std::string& second) {
  json report;
  report["first"] = first;
  report["second"] = second;
  report["m"] = res.registered_first.rows();
  report["n"] = res.registered_first.cols();
  report["distance"] = res.distance;
  report["energy"] = res.energy;
  report["rotation"] = rotation_to_json(res.rotation.matrix());
  report["iterations"] = res.iterations;
  report["energy_trace"] = res.energy_trace;
  report["row_energies"] = res.row_energies;
  report["kernels"] = esr3d::kernels::active_name();
  return report;
}

void emit_outputs(const esr3d::RegistrationResult& res, const EmitOptions& emit, json& report) {
  json emitted = json::object();
  if (!emit.warp_path.empty()) {
    esr3d::write_warp_table(emit.warp_path, res.warp, res.registered_first.r(),
                            res.registered_first.t());
    emitted["warp"] = emit.warp_path;
  }
  if (!emit.registered_prefix.empty()) {
    const std::string f1 = emit.registered_prefix + "_first.txt";
    const std::string f2 = emit.registered_prefix + "_second.txt";
    esr3d::write_surface_file(f1, res.registered_first);
    esr3d::write_surface_file(f2, res.registered_second);
    emitted["registered_first"] = f1;
    emitted["registered_second"] = f2;
  }
  if (!emitted.empty()) report["emitted"] = emitted;
}

void finish_report(const json& report, const EmitOptions& emit) {
  std::printf("distance    %.6g\n", report["distance"].get<double>());
  std::printf("energy      %.6g\n", report["energy"].get<double>());
  std::printf("iterations  %d\n", report["iterations"].get<int>());
  if (report.contains("reference_distance"))
    std::printf("reference   %.6g\n", report["reference_distance"].get<double>());
  if (report.contains("candidate_index"))
    std::printf("candidate   %zu\n", report["candidate_index"].get<std::size_t>());
  const auto& rot = report["rotation"];
  for (int r = 0; r < 3; ++r)
    std::printf("rotation    [% .6f % .6f % .6f]\n", rot[3 * r].get<double>(),
                rot[3 * r + 1].get<double>(), rot[3 * r + 2].get<double>());
  if (!emit.json_path.empty()) {
    if (emit.json_path == "-") {
      std::cout << report.dump(2) << "\n";
    } else {
      std::ofstream out(emit.json_path);
      if (!out) throw esr3d::IoError("cannot open " + emit.json_path + " for writing");
      out << report.dump(2) << "\n";
    }
  }
}

int run_generate(const std::string& family, int k, std::size_t m, std::size_t n, double gamma_a,
                 double gamma_b, const std::string& out_path) {
  if (m < 3 || n < 3)
    throw esr3d::InvalidArgument("m and n must be at least 3 (derivative stencils)");
  const esr3d::SurfaceFamily f{esr3d::parse_surface_kind(family), k};
  const esr3d::Partition r = esr3d::Partition::uniform(m);
  const esr3d::Partition t = esr3d::Partition::uniform(n);
  const esr3d::SurfaceGrid base = esr3d::generate(f, r, t);
  const esr3d::SurfaceGrid g = esr3d::apply_gamma(base, {gamma_a, gamma_b}, f);
  esr3d::write_surface_file(out_path, g);
  std::printf("wrote %s (%zu x %zu, %zu points)\n", out_path.c_str(), m, n, m * n);
  return 0;
}

int run_register(const std::string& first_path, const std::string& second_path,
                 bool corner_search, const esr3d::RegistrationConfig& cfg,
                 const EmitOptions& emit) {
  const esr3d::SurfaceGrid c1 = esr3d::normalize_unit_area(esr3d::read_surface_file(first_path));
  const esr3d::SurfaceGrid c2 = esr3d::normalize_unit_area(esr3d::read_surface_file(second_path));

  json report;
  if (corner_search) {
    esr3d::CornerSearchResult res = esr3d::register_with_corner_search(c1, c2, cfg);
    report = make_report(res.best, first_path, second_path);
    report["candidate_index"] = res.candidate_index;
    emit_outputs(res.best, emit, report);
  } else {
    esr3d::RegistrationResult res = esr3d::dp_surface_min(c1, c2, cfg);
    report = make_report(res, first_path, second_path);
    emit_outputs(res, emit, report);
  }
  finish_report(report, emit);
  return 0;
}

int run_reproduce(const std::string& case_id, std::optional<std::size_t> m_override,
                  std::optional<std::size_t> n_override, const esr3d::RegistrationConfig& cfg,
                  const EmitOptions& emit) {
  const esr3d::ExperimentCase& c = esr3d::find_experiment(case_id);
  const std::size_t m = m_override.value_or(c.m), n = n_override.value_or(c.n);
  if (m < 3 || n < 3) throw esr3d::InvalidArgument("m and n must be at least 3");
  const esr3d::Partition r = esr3d::Partition::uniform(m);
  const esr3d::Partition t = esr3d::Partition::uniform(n);
  const esr3d::SurfaceGrid first = esr3d::generate(c.first, r, t);
  const esr3d::SurfaceGrid second =
      esr3d::apply_gamma(esr3d::generate(c.second, r, t), c.gamma, c.second);

  esr3d::RegistrationResult res = esr3d::register_surfaces(first, second, cfg);
  json report = make_report(res, std::string("generated:") + esr3d::surface_kind_name(c.first.kind),
                            std::string("generated:") + esr3d::surface_kind_name(c.second.kind));
  report["case"] = c.id;
  report["reference_distance"] = c.reference_distance;
  emit_outputs(res, emit, report);
  finish_report(report, emit);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partial elastic shape registration of gridded 3D surfaces"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write an analytic test surface");
  std::string family;
  int k = 1;
  std::size_t gm = 101, gn = 101;
  double gamma_a = 1.0, gamma_b = 1.0;
  std::string out_path;
  gen->add_option("--family", family, "sine1|sine2|helicoid1|helicoid2|cossine1|cossine2")
      ->required();
  gen->add_option("--k", k, "frequency parameter (ignored for cossine)");
  gen->add_option("--m", gm, "grid rows (r direction)");
  gen->add_option("--n", gn, "grid columns (t direction)");
  gen->add_option("--gamma-a", gamma_a, "r-warp exponent, gamma(r,t)=(r^a, t^b)");
  gen->add_option("--gamma-b", gamma_b, "t-warp exponent");
  gen->add_option("--out", out_path, "output surface file")->required();

  // shared registration options
  bool corner_search = false;
  double tol = 1e-6;
  int iten = 10;
  int threads = 0;
  EmitOptions emit;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "convergence tolerance on |E_curr - E_prev|");
    cmd->add_option("--iten", iten, "iteration cap of the repeat loop");
    cmd->add_option("--threads", threads, "row-level worker threads (0 = all cores)");
    cmd->add_option("--emit-warp", emit.warp_path, "write per-row warp tables to this path");
    cmd->add_option("--emit-registered", emit.registered_prefix,
                    "write registered surfaces to <prefix>_first.txt / <prefix>_second.txt");
    cmd->add_option("--json", emit.json_path, "write the full report as JSON ('-' for stdout)");
  };

  // register
  auto* reg = app.add_subcommand("register", "register two surface files");
  std::string first_path, second_path;
  reg->add_option("first", first_path, "first surface file (gets rotated)")->required();
  reg->add_option("second", second_path, "second surface file (gets reparametrized)")->required();
  reg->add_flag("--corner-search", corner_search,
                "try all eight corner/direction reindexings of the second surface");
  add_common(reg);

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "run a bundled validation case");
  std::string case_id;
  std::optional<std::size_t> m_override, n_override;
  rep->add_option("case", case_id, "case id, e.g. sine-k2-gr (see README)")->required();
  rep->add_option("--m", m_override, "override grid rows");
  rep->add_option("--n", n_override, "override grid columns");
  add_common(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    esr3d::RegistrationConfig cfg;
    cfg.tol = tol;
    cfg.iten = iten;
    cfg.threads = thread_count(threads);

    if (gen->parsed()) return run_generate(family, k, gm, gn, gamma_a, gamma_b, out_path);
    if (reg->parsed()) return run_register(first_path, second_path, corner_search, cfg, emit);
    if (rep->parsed()) return run_reproduce(case_id, m_override, n_override, cfg, emit);
  } catch (const esr3d::InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const esr3d::UnknownCase& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const esr3d::DimensionMismatch& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const esr3d::PartitionMismatch& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const esr3d::NonSquareReversal& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const esr3d::GridTooSmall& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const esr3d::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const esr3d::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const esr3d::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 0;
}
