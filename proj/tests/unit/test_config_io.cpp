#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "ifdyn/config.hpp"
#include "ifdyn/io.hpp"
#include "ifdyn/scenarios.hpp"
#include "support.hpp"

using namespace ifdyn;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("ifdyn_test_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

DiagRecord sample_record() {
  DiagRecord r;
  r.t = 0.1;
  r.A = 6.283185307179586;
  r.B = -1.0 / 3.0;
  r.min_sigma = 0.999999999999;
  r.arc_chord = 1.5707963267948966;
  r.energy = 1e-300;
  r.e_rt = std::numeric_limits<double>::infinity();
  r.mean_omega = -0.0;
  r.max_speed = 123456.789;
  r.uniformity = 4.9e-324;
  r.solver_residual = 2.2e-16;
  r.solver_iters = 7;
  return r;
}

}  // namespace

TEST_CASE("diag row round trip") {
  const DiagRecord r = sample_record();
  const DiagRecord back = parse_diag_row(diag_row(r));
  CHECK(back == r);
  CHECK(std::signbit(back.mean_omega));
  CHECK_THROWS(parse_diag_row("1,2,3"));
  CHECK_THROWS(parse_diag_row("1,2,3,4,5,6,7,8,9,10,11,x"));
}

TEST_CASE("csv sink writes diag and snapshots") {
  const fs::path dir = scratch_dir("sink");
  const SimState s = make_scenario("flat_cosine", [] {
    ScenarioParams sp;
    sp.n = 32;
    sp.amplitude = 0.01;
    return sp;
  }());
  const Params p;
  const StateDerivative d = state_derivative(s, p);
  const BRKernelEval ops(s.z);
  const DiagnosticSample diag = compute_diagnostics(ops, s, d, p);
  {
    CsvRunSink sink(dir);
    sink.diag(diag.record);
    sink.diag(sample_record());
    sink.snapshot(make_snapshot(s, d, diag.sigma));
    sink.snapshot(make_snapshot(s, d, diag.sigma));
  }
  const auto diag_lines = lines_of(dir / "diag.csv");
  REQUIRE(diag_lines.size() == 3);
  CHECK(diag_lines[0] == kDiagHeader);
  CHECK(diag_lines[0] == "t,A,B,min_sigma,arc_chord,energy,e_rt,mean_omega,max_speed,uniformity,solver_residual,solver_iters");
  const auto records = read_diag(dir / "diag.csv");
  REQUIRE(records.size() == 2);
  CHECK(records[0] == diag.record);
  CHECK(records[1] == sample_record());

  CHECK(snapshot_name(12) == "snap_000012.csv");
  REQUIRE(fs::exists(dir / "snap_000000.csv"));
  REQUIRE(fs::exists(dir / "snap_000001.csv"));
  const auto snap_lines = lines_of(dir / "snap_000000.csv");
  CHECK(snap_lines.size() == 33);
  CHECK(snap_lines[0] == "alpha,x,y,omega,phi,sigma,c");
  const Snapshot back = read_snapshot(dir / "snap_000000.csv");
  const Snapshot orig = make_snapshot(s, d, diag.sigma);
  REQUIRE(back.rows.size() == orig.rows.size());
  for (std::size_t j = 0; j < orig.rows.size(); ++j) CHECK(back.rows[j] == orig.rows[j]);
  // Full coordinates: x includes the linear part.
  CHECK(orig.rows[0].alpha == -kPi);
  CHECK(orig.rows[16].x == doctest::Approx(s.z.coordinates().x[16]));
  fs::remove_all(dir);
}

TEST_CASE("config parsing") {
  const RunConfig c = parse_config(
      "# wave test\n"
      "scenario = flat_cosine\n"
      "n = 64   # grid\n"
      "amplitude = 1e-3\n"
      "g = 9.81\n"
      "adaptive = true\n"
      "seed = 18446744073709551615\n"
      "out_dir = results/run1\n");
  CHECK(c.scenario == "flat_cosine");
  CHECK(c.scenario_params.n == 64);
  CHECK(c.scenario_params.amplitude == 1e-3);
  CHECK(c.params.g == 9.81);
  CHECK(c.step.adaptive);
  CHECK(c.scenario_params.seed == std::numeric_limits<std::uint64_t>::max());
  CHECK(c.out_dir == "results/run1");
  CHECK(c.step.dt == StepConfig{}.dt);

  CHECK_THROWS_AS(parse_config("colour = blue\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n = 64\nn = 32\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n = 48\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n = 64x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("dt = fast\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("adaptive = maybe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = vortex\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("just words\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n = 16\nenergy_k = 5\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/run.cfg"), ConfigError);
}

TEST_CASE("config serialization round trip") {
  RunConfig c;
  c.scenario = "perturbed_circle";
  c.scenario_params.n = 256;
  c.scenario_params.amplitude = 0.1 + 0.2;
  c.scenario_params.wavenumber = 3;
  c.params.a_rho = 0.25;
  c.params.epsilon = 1e-3;
  c.params.g = -0.5;
  c.step.dt = 1.0 / 3.0;
  c.step.snapshot_stride = 10;
  c.out_dir = "o";
  const RunConfig back = parse_config(serialize_config(c));
  CHECK(back == c);
  CHECK(parse_config(serialize_config(RunConfig{})) == RunConfig{});
}
