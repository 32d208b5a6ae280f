#include "ifdyn/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ifdyn/geometry.hpp"
#include "ifdyn/spectral.hpp"

namespace ifdyn {

void StepConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("step: " + what); };
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) fail("t_end must be non-negative");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) fail("cfl_safety must lie in (0, 1]");
  if (!(abort_arc_chord > 0.0)) fail("abort_arc_chord must be positive");
  if (std::isnan(abort_min_sigma)) fail("abort_min_sigma must be a number");
  if (output_stride <= 0) fail("output_stride must be positive");
  if (snapshot_stride < 0) fail("snapshot_stride must be non-negative");
  if (energy_k < 2) fail("energy_k must be at least 2");
  if (!(energy_p > 0.0)) fail("energy_p must be positive");
}

const char* to_string(RunOutcome outcome) {
  switch (outcome) {
    case RunOutcome::Completed: return "Completed";
    case RunOutcome::ArcChordBlowup: return "ArcChordBlowup";
    case RunOutcome::RayleighTaylorLost: return "RayleighTaylorLost";
    case RunOutcome::SolverFailure: return "SolverFailure";
    case RunOutcome::NumericalBlowup: return "NumericalBlowup";
  }
  return "Unknown";
}

double stable_dt(const SimState& state, const StateDerivative& d, const Params& params, const StepConfig& cfg) {
  const std::size_t n = state.z.size();
  const double h = state.z.grid().spacing();
  double limit = std::numeric_limits<double>::infinity();
  const double speed = max_norm(d.z_t);
  if (speed > 0.0) limit = std::min(limit, h / speed);
  if (params.g != 0.0) limit = std::min(limit, 1.0 / std::sqrt(std::abs(params.g) * static_cast<double>(n / 2)));
  if (params.epsilon > 0.0) {
    const double stretch = max_norm(state.z.derivative(1));
    limit = std::min(limit, h * h / (2.0 * params.epsilon * stretch));
  }
  return cfg.cfl_safety * limit;
}

namespace {

SimState advance(const SimState& s, const StateDerivative& d, double dt) {
  VectorField p = s.z.samples();
  ScalarField w = s.omega;
  for (std::size_t j = 0; j < w.size(); ++j) {
    p.x[j] += dt * d.z_t.x[j];
    p.y[j] += dt * d.z_t.y[j];
    w[j] += dt * d.omega_t[j];
  }
  return {s.t + dt, Contour(s.z.kind(), std::move(p)), std::move(w)};
}

}  // namespace

SimState rk4_step_from(const SimState& state, const StateDerivative& k1, double dt, const Params& params) {
  const SimState s2 = advance(state, k1, 0.5 * dt);
  const StateDerivative k2 = state_derivative(s2, params);
  const SimState s3 = advance(state, k2, 0.5 * dt);
  const StateDerivative k3 = state_derivative(s3, params);
  const SimState s4 = advance(state, k3, dt);
  const StateDerivative k4 = state_derivative(s4, params);

  const std::size_t n = state.omega.size();
  VectorField p = state.z.samples();
  ScalarField w = state.omega;
  const double a = dt / 6.0;
  for (std::size_t j = 0; j < n; ++j) {
    p.x[j] += a * (k1.z_t.x[j] + 2.0 * k2.z_t.x[j] + 2.0 * k3.z_t.x[j] + k4.z_t.x[j]);
    p.y[j] += a * (k1.z_t.y[j] + 2.0 * k2.z_t.y[j] + 2.0 * k3.z_t.y[j] + k4.z_t.y[j]);
    w[j] += a * (k1.omega_t[j] + 2.0 * k2.omega_t[j] + 2.0 * k3.omega_t[j] + k4.omega_t[j]);
  }

  if (params.filter_threshold > 0.0) {
    p.x = spectral::krasny_filter(p.x, params.filter_threshold);
    p.y = spectral::krasny_filter(p.y, params.filter_threshold);
    w = spectral::krasny_filter(w, params.filter_threshold);
  }
  set_mean(w, mean(state.omega));
  return {state.t + dt, Contour(state.z.kind(), std::move(p)), std::move(w)};
}

SimState rk4_step(const SimState& state, double dt, const Params& params) {
  return rk4_step_from(state, state_derivative(state, params), dt, params);
}

SimState rk4_step(const SimState& state, double dt, const Params& params, const StepConfig& cfg) {
  const StateDerivative k1 = state_derivative(state, params);
  if (cfg.adaptive) {
    const double limit = stable_dt(state, k1, params, cfg);
    if (dt > limit) throw StepRejected(limit);
  }
  return rk4_step_from(state, k1, dt, params);
}

RunResult run(const SimState& initial, const Params& params, const StepConfig& cfg, RunSink& sink) {
  params.validate();
  cfg.validate();
  if (static_cast<std::size_t>(cfg.energy_k) > initial.z.size() / 4) {
    throw ConfigError("step: energy_k exceeds N/4");
  }
  if (const double u = tangent_uniformity(initial.z); !(u <= params.uniformity_tol)) {
    throw ConfigError("initial state: tangent uniformity " + format_real(u) +
                      " exceeds uniformity_tol (under-resolved curve; increase n)");
  }

  RunResult res;
  SimState s = initial;
  const double t_eps = 1e-12 * std::max(1.0, std::abs(cfg.t_end));
  bool first = true;

  auto halt = [&](RunOutcome outcome, std::string message) {
    res.outcome = outcome;
    res.t = s.t;
    res.message = std::move(message);
    res.final_state = s;
    return res;
  };

  for (;;) {
    if (!all_finite(s.z.samples()) || !all_finite(s.omega)) return halt(RunOutcome::NumericalBlowup, "non-finite state");

    std::optional<BRKernelEval> ops;
    StateDerivative k1;
    try {
      ops.emplace(s.z);
      k1 = state_derivative(*ops, s, params);
    } catch (const NoConvergence& e) {
      return halt(RunOutcome::SolverFailure, e.what());
    } catch (const CurveDegenerate& e) {
      return halt(RunOutcome::ArcChordBlowup, e.what());
    }
    if (!all_finite(k1.z_t) || !all_finite(k1.omega_t)) return halt(RunOutcome::NumericalBlowup, "non-finite derivative");

    const double chord = arc_chord(s.z);
    if (chord > cfg.abort_arc_chord) {
      return halt(RunOutcome::ArcChordBlowup, "arc-chord " + format_real(chord) + " exceeds threshold");
    }

    const bool finished = cfg.t_end - s.t <= t_eps;
    const bool want_diag = res.steps % cfg.output_stride == 0 || finished;
    const bool want_snap = cfg.snapshot_stride > 0 && (res.steps % cfg.snapshot_stride == 0 || finished);
    if (want_diag || want_snap) {
      const DiagnosticSample diag = compute_diagnostics(*ops, s, k1, params, cfg.energy_k, cfg.energy_p);
      if (want_diag) sink.diag(diag.record);
      if (want_snap) sink.snapshot(make_snapshot(s, k1, diag.sigma));
      res.last = diag.record;
      if (first) res.initial_min_sigma = diag.record.min_sigma;
      if (diag.record.min_sigma <= cfg.abort_min_sigma) {
        return halt(RunOutcome::RayleighTaylorLost, "min sigma " + format_real(diag.record.min_sigma));
      }
    }
    first = false;
    if (finished) return halt(RunOutcome::Completed, "");

    double dt = cfg.dt;
    if (cfg.adaptive) dt = std::min(dt, stable_dt(s, k1, params, cfg));
    dt = std::min(dt, cfg.t_end - s.t);
    try {
      s = rk4_step_from(s, k1, dt, params);
    } catch (const NoConvergence& e) {
      return halt(RunOutcome::SolverFailure, e.what());
    } catch (const CurveDegenerate& e) {
      return halt(RunOutcome::ArcChordBlowup, e.what());
    }
    ++res.steps;
  }
}

}  // namespace ifdyn
