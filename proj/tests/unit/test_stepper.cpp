#include <doctest.h>

#include <cmath>

#include "ifdyn/geometry.hpp"
#include "ifdyn/scenarios.hpp"
#include "ifdyn/stepper.hpp"
#include "support.hpp"

using namespace ifdyn;

namespace {

SimState wave(std::size_t n, double a, int k) {
  ScenarioParams sp;
  sp.n = n;
  sp.amplitude = a;
  sp.wavenumber = k;
  return make_scenario("flat_cosine", sp);
}

SimState integrate(SimState s, double dt, int steps, const Params& p) {
  for (int i = 0; i < steps; ++i) s = rk4_step(s, dt, p);
  return s;
}

double state_diff(const SimState& a, const SimState& b) {
  return std::max(test::max_diff(a.z.samples(), b.z.samples()), test::max_diff(a.omega, b.omega));
}

}  // namespace

TEST_CASE("step configuration validation") {
  StepConfig c;
  CHECK_NOTHROW(c.validate());
  c.dt = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = StepConfig{};
  c.output_stride = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = StepConfig{};
  c.energy_k = 1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("flat equilibrium is a fixed point") {
  Params p;
  SimState s{0.0, test::flat(64), ScalarField(64)};
  s = integrate(s, 1e-2, 20, p);
  CHECK(s.t == doctest::Approx(0.2));
  CHECK(max_norm(s.z.samples()) == 0.0);
  CHECK(max_abs(s.omega) == 0.0);
}

TEST_CASE("uniform circle rotates in place") {
  Params p;
  p.g = 0.0;
  const std::size_t n = 64;
  SimState s{0.0, test::circle(n), ScalarField(n, 1.0)};
  s = integrate(s, 1e-2, 100, p);
  const VectorField c = s.z.coordinates();
  double dev = 0.0;
  for (std::size_t j = 0; j < n; ++j) dev = std::max(dev, std::abs(std::hypot(c.x[j], c.y[j]) - 1.0));
  CHECK(dev < 1e-8);
  CHECK(mean(s.omega) == 1.0);
}

TEST_CASE("RK4 self-convergence") {
  Params p;
  const SimState s0 = wave(32, 0.05, 2);
  const double t = 0.5;
  const SimState a = integrate(s0, t / 5, 5, p);
  const SimState b = integrate(s0, t / 10, 10, p);
  const SimState c = integrate(s0, t / 20, 20, p);
  const double ratio = state_diff(a, b) / state_diff(b, c);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("step preserves the mean of omega") {
  Params p;
  SimState s = wave(32, 0.05, 1);
  s.omega = test::sample(32, [](double a) { return 0.3 + 0.1 * std::sin(a); });
  const double m0 = mean(s.omega);
  s = integrate(s, 0.05, 10, p);
  CHECK(mean(s.omega) == m0);
}

TEST_CASE("exact mean projection") {
  ScalarField f = test::sample(64, [](double a) { return 0.1 * std::cos(a) + 1e-3 * std::exp(std::sin(3 * a)); });
  set_mean(f, 0.0);
  CHECK(mean(f) == 0.0);
  for (double target : {1.0, -0.37, 1e-3}) {
    set_mean(f, target);
    CHECK(mean(f) == target);
  }
}

TEST_CASE("adaptive step rejection") {
  Params p;
  const SimState s = wave(64, 0.05, 2);
  StepConfig cfg;
  cfg.adaptive = true;
  const double limit = stable_dt(s, state_derivative(s, p), p, cfg);
  CHECK(limit > 0.0);
  CHECK(std::isfinite(limit));
  CHECK_NOTHROW(rk4_step(s, 0.5 * limit, p, cfg));
  try {
    rk4_step(s, 2.0 * limit, p, cfg);
    FAIL("expected StepRejected");
  } catch (const StepRejected& e) {
    CHECK(e.suggested_dt() == doctest::Approx(limit));
  }
  cfg.adaptive = false;
  CHECK_NOTHROW(rk4_step(s, 2.0 * limit, p, cfg));
}

TEST_CASE("run completes and records diagnostics") {
  Params p;
  StepConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 0.1;
  cfg.output_stride = 2;
  cfg.snapshot_stride = 5;
  MemoryRunSink sink;
  const RunResult r = run(wave(32, 0.02, 1), p, cfg, sink);
  CHECK(r.outcome == RunOutcome::Completed);
  CHECK(r.steps == 10);
  CHECK(r.t == doctest::Approx(0.1));
  REQUIRE(sink.records.size() == 6);
  CHECK(sink.records.front().t == 0.0);
  CHECK(sink.records.back().t == doctest::Approx(0.1));
  CHECK(sink.snapshots.size() == 3);
  CHECK(sink.snapshots.front().rows.size() == 32);
  CHECK(r.final_state.has_value());
}

TEST_CASE("run is deterministic") {
  Params p;
  StepConfig cfg;
  cfg.dt = 0.02;
  cfg.t_end = 0.1;
  MemoryRunSink a, b;
  run(wave(32, 0.03, 2), p, cfg, a);
  run(wave(32, 0.03, 2), p, cfg, b);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i] == b.records[i]);
}

TEST_CASE("run guards") {
  SUBCASE("Rayleigh-Taylor loss under inverted gravity") {
    Params p;
    p.g = -1.0;
    StepConfig cfg;
    MemoryRunSink sink;
    const RunResult r = run(SimState{0.0, test::flat(32), ScalarField(32)}, p, cfg, sink);
    CHECK(r.outcome == RunOutcome::RayleighTaylorLost);
    CHECK(r.steps == 0);
    CHECK(sink.records.size() == 1);
  }
  SUBCASE("arc-chord threshold") {
    Params p;
    p.g = 0.0;
    ScenarioParams sp;
    sp.n = 128;
    sp.amplitude = 0.3;
    sp.wavenumber = 2;
    SimState s = make_scenario("perturbed_circle", sp);
    s.omega = ScalarField(128, 1.0);
    StepConfig cfg;
    cfg.abort_arc_chord = 0.9 * arc_chord(s.z);
    cfg.abort_min_sigma = -1e300;
    MemoryRunSink sink;
    const RunResult r = run(s, p, cfg, sink);
    CHECK(r.outcome == RunOutcome::ArcChordBlowup);
    CHECK(r.t == 0.0);
  }
  SUBCASE("energy index too large for the grid") {
    StepConfig cfg;
    cfg.energy_k = 5;
    MemoryRunSink sink;
    CHECK_THROWS_AS(run(SimState{0.0, test::flat(16), ScalarField(16)}, Params{}, cfg, sink), ConfigError);
  }
  SUBCASE("under-resolved initial curve") {
    MemoryRunSink sink;
    CHECK_THROWS_AS(run(SimState{0.0, test::wavy_circle(64, 0.3, 3), ScalarField(64)}, Params{}, StepConfig{}, sink),
                    ConfigError);
  }
}

TEST_CASE("outcome names") {
  CHECK(std::string(to_string(RunOutcome::Completed)) == "Completed");
  CHECK(std::string(to_string(RunOutcome::RayleighTaylorLost)) == "RayleighTaylorLost");
}
