#pragma once

#include <optional>
#include <string>

#include "ifdyn/diagnostics.hpp"
#include "ifdyn/io.hpp"

namespace ifdyn {

struct StepConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  double cfl_safety = 0.5;
  bool adaptive = false;
  double abort_arc_chord = 1e3;
  double abort_min_sigma = 0.0;  // halt when m(t) <= this
  int output_stride = 1;
  int snapshot_stride = 0;  // 0: no snapshots; otherwise also at the final step
  int energy_k = 4;
  double energy_p = 2.0;

  void validate() const;
  friend bool operator==(const StepConfig&, const StepConfig&) = default;
};

/// Stable step size for the current derivative:
/// cfl * min(h/max|z_t|, 1/sqrt(|g| N/2), h^2/(2 eps max|dz|)), +inf if unconstrained.
double stable_dt(const SimState& state, const StateDerivative& d, const Params& params, const StepConfig& cfg);

/// Classical RK4 on (z, omega), then the Fourier filter on the periodic part of
/// z and on omega, then the mean of omega restored to its pre-step value.
SimState rk4_step(const SimState& state, double dt, const Params& params);

/// As above; with cfg.adaptive, throws StepRejected(stable_dt) when dt exceeds it.
SimState rk4_step(const SimState& state, double dt, const Params& params, const StepConfig& cfg);

/// Step from a precomputed first stage k1 = state_derivative(state).
SimState rk4_step_from(const SimState& state, const StateDerivative& k1, double dt, const Params& params);

enum class RunOutcome { Completed, ArcChordBlowup, RayleighTaylorLost, SolverFailure, NumericalBlowup };
const char* to_string(RunOutcome outcome);

struct RunResult {
  RunOutcome outcome = RunOutcome::Completed;
  double t = 0.0;
  long steps = 0;
  std::string message;
  DiagRecord last;
  double initial_min_sigma = 0.0;
  std::optional<SimState> final_state;
};

/// Diagnostics at t = 0 and every output_stride steps; guards after every
/// accepted step in the order NaN, solver, arc-chord, Rayleigh-Taylor (the
/// last evaluated at diagnostic steps, where sigma is available).
RunResult run(const SimState& initial, const Params& params, const StepConfig& cfg, RunSink& sink);

}  // namespace ifdyn
