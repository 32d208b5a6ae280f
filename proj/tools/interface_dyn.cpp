// interface-dyn: run configs, measure dispersion, check operator oracles and
// dump initial data. Output is key=value lines on stdout.
//
// Exit codes: 0 success, 1 usage/config error or failed check, 2 run halted by
// a guard (arc-chord or Rayleigh-Taylor breakdown, solver failure, blow-up).
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ifdyn/config.hpp"
#include "ifdyn/dispersion.hpp"
#include "ifdyn/geometry.hpp"
#include "ifdyn/kernels.hpp"
#include "ifdyn/scenarios.hpp"
#include "ifdyn/singular_ops.hpp"
#include "ifdyn/stepper.hpp"

namespace {

using namespace ifdyn;

void kv(const char* key, double v) { std::printf("%s=%s\n", key, format_real(v).c_str()); }
void kv(const char* key, const std::string& v) { std::printf("%s=%s\n", key, v.c_str()); }
void kv(const char* key, long v) { std::printf("%s=%ld\n", key, v); }

int cmd_run(const std::string& config_path, const std::string& out_override) {
  RunConfig cfg = load_config(config_path);
  if (!out_override.empty()) cfg.out_dir = out_override;
  const SimState initial = make_scenario(cfg.scenario, cfg.scenario_params);

  CsvRunSink sink(cfg.out_dir);
  {
    std::ofstream used(std::filesystem::path(cfg.out_dir) / "config.txt");
    used << serialize_config(cfg);
  }
  const RunResult res = run(initial, cfg.params, cfg.step, sink);

  kv("outcome", to_string(res.outcome));
  kv("t", res.t);
  kv("steps", res.steps);
  kv("initial_min_sigma", res.initial_min_sigma);
  kv("min_sigma", res.last.min_sigma);
  kv("arc_chord", res.last.arc_chord);
  kv("energy", res.last.energy);
  kv("out_dir", cfg.out_dir);
  if (!res.message.empty()) kv("message", res.message);
  return res.outcome == RunOutcome::Completed ? 0 : 2;
}

int cmd_dispersion(const DispersionSetup& setup) {
  const DispersionResult r = measure_dispersion(setup);
  kv("k", static_cast<long>(setup.k));
  kv("omega_measured", r.omega);
  kv("omega_expected", r.expected);
  kv("rel_error", r.rel_error);
  kv("crossings", static_cast<long>(r.crossings));
  return 0;
}

VectorField unit_circle(std::size_t n) {
  const Grid g(n);
  VectorField z(n);
  for (std::size_t j = 0; j < n; ++j) {
    z.x[j] = std::cos(g.node(static_cast<std::ptrdiff_t>(j)));
    z.y[j] = std::sin(g.node(static_cast<std::ptrdiff_t>(j)));
  }
  return z;
}

int cmd_operators(std::size_t n) {
  const Grid grid(n);
  const Contour circle(GeometryKind::ClosedContour, unit_circle(n));
  const Contour flat(GeometryKind::HorizontallyPeriodic, VectorField(n));
  const BRKernelEval circle_ops(circle);
  const BRKernelEval flat_ops(flat);
  const ScalarField ones(n, 1.0);
  ScalarField wave(n);
  for (std::size_t j = 0; j < n; ++j) wave[j] = std::cos(3.0 * grid.node(static_cast<std::ptrdiff_t>(j)));

  double br_circle = 0.0;
  {
    const VectorField br = circle_ops.birkhoff_rott(ones);
    const VectorField dz = circle_ops.tangent();
    for (std::size_t j = 0; j < n; ++j) br_circle = std::max(br_circle, norm(br.at(j) - 0.5 * dz.at(j)));
  }
  double br_flat = 0.0;
  {
    const VectorField br = flat_ops.birkhoff_rott(wave);
    for (std::size_t j = 0; j < n; ++j) {
      const double expect = 0.5 * std::sin(3.0 * grid.node(static_cast<std::ptrdiff_t>(j)));
      br_flat = std::max({br_flat, std::abs(br.x[j]), std::abs(br.y[j] - expect)});
    }
  }
  double t_circle = 0.0;
  for (double v : circle_ops.apply_T(ones)) t_circle = std::max(t_circle, std::abs(v - 1.0));
  const double t_flat = max_abs(flat_ops.apply_T(wave));
  const SolveResult solved = solve_second_kind(circle_ops, 1.0, ones, 1e-12, 200);
  double solve_err = 0.0;
  for (double v : solved.x) solve_err = std::max(solve_err, std::abs(v - 0.5));

  kv("n", static_cast<long>(n));
  kv("isa", kernels::to_string(kernels::active_isa()));
  kv("br_circle_error", br_circle);
  kv("br_flat_error", br_flat);
  kv("t_circle_error", t_circle);
  kv("t_flat_max", t_flat);
  kv("solve_circle_error", solve_err);
  kv("solve_residual", solved.residual);
  kv("solve_iterations", static_cast<long>(solved.iterations));
  const bool ok = br_circle < 1e-10 && br_flat < 1e-10 && t_circle < 1e-10 && t_flat < 1e-12 && solve_err < 1e-10 &&
                  solved.residual <= 1e-12;
  kv("status", ok ? "pass" : "fail");
  return ok ? 0 : 1;
}

int cmd_scenario_dump(const std::string& name, const ScenarioParams& sp, const std::string& out) {
  const SimState s = make_scenario(name, sp);
  const Params params;
  Snapshot snap;
  const VectorField z = s.z.coordinates();
  const Grid g = s.z.grid();
  for (std::size_t j = 0; j < z.size(); ++j) {
    snap.rows.push_back({g.node(static_cast<std::ptrdiff_t>(j)), z.x[j], z.y[j], s.omega[j], 0.0, 0.0, 0.0});
  }
  // phi, sigma and c need the derivative; fill them when the state admits one.
  try {
    const BRKernelEval ops(s.z);
    const StateDerivative d = state_derivative(ops, s, params);
    const DiagnosticSample diag = compute_diagnostics(ops, s, d, params);
    snap = make_snapshot(s, d, diag.sigma);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "scenario-dump: derived columns left at 0: %s\n", e.what());
  }
  if (out.empty()) {
    write_snapshot(snap, std::cout);
  } else {
    write_snapshot(snap, std::filesystem::path(out));
    kv("written", out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary-integral simulator for 2-D water waves"};
  app.require_subcommand(1);
  std::string isa;
  app.add_option("--isa", isa, "Quadrature kernel variant (scalar, avx2)")->check(CLI::IsMember({"scalar", "avx2"}));

  auto* run_cmd = app.add_subcommand("run", "Run a configuration file");
  std::string config_path, out_dir;
  run_cmd->add_option("config", config_path, "Configuration file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory (overrides out_dir)");

  auto* disp_cmd = app.add_subcommand("dispersion", "Measure the standing-wave frequency");
  DispersionSetup setup;
  disp_cmd->add_option("--k", setup.k, "Wavenumber")->check(CLI::PositiveNumber);
  disp_cmd->add_option("--g", setup.g, "Gravity")->check(CLI::PositiveNumber);
  disp_cmd->add_option("--n", setup.n, "Grid size");
  disp_cmd->add_option("--t-end", setup.t_end, "Final time")->check(CLI::PositiveNumber);
  disp_cmd->add_option("--dt", setup.dt, "Time step")->check(CLI::PositiveNumber);
  disp_cmd->add_option("--a", setup.amplitude, "Initial amplitude");

  auto* ops_cmd = app.add_subcommand("operators", "Circle and flat-line operator oracles");
  std::size_t ops_n = 64;
  ops_cmd->add_option("--n", ops_n, "Grid size");

  auto* dump_cmd = app.add_subcommand("scenario-dump", "Write a scenario's initial state as a snapshot CSV");
  std::string name, dump_out;
  ScenarioParams sp;
  dump_cmd->add_option("name", name, "Scenario name")->required();
  dump_cmd->add_option("--n", sp.n, "Grid size");
  dump_cmd->add_option("--amplitude", sp.amplitude);
  dump_cmd->add_option("--wavenumber", sp.wavenumber);
  dump_cmd->add_option("--radius", sp.radius);
  dump_cmd->add_option("--omega0", sp.omega0);
  dump_cmd->add_option("--omega-amplitude", sp.omega_amplitude);
  dump_cmd->add_option("--noise", sp.noise);
  dump_cmd->add_option("--seed", sp.seed);
  dump_cmd->add_option("--out", dump_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    kernels::apply_thread_limit_from_env();
    if (!isa.empty()) kernels::set_active_isa(isa == "avx2" ? kernels::Isa::Avx2 : kernels::Isa::Scalar);
    if (*run_cmd) return cmd_run(config_path, out_dir);
    if (*disp_cmd) {
      if (!Grid::valid_size(setup.n)) throw ConfigError("dispersion: --n must be a power of two and at least 16");
      return cmd_dispersion(setup);
    }
    if (*ops_cmd) {
      if (!Grid::valid_size(ops_n)) throw ConfigError("operators: --n must be a power of two and at least 16");
      return cmd_operators(ops_n);
    }
    if (*dump_cmd) return cmd_scenario_dump(name, sp, dump_out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const UnknownScenario& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
