#include "ifdyn/dispersion.hpp"

#include <cmath>

#include "ifdyn/scenarios.hpp"
#include "ifdyn/spectral.hpp"
#include "ifdyn/stepper.hpp"

namespace ifdyn {

double cosine_amplitude(const ScalarField& y, int k) { return 2.0 * spectral::mode(y, k).real(); }

DispersionResult measure_dispersion(const DispersionSetup& setup) {
  ScenarioParams sp;
  sp.n = setup.n;
  sp.amplitude = setup.amplitude;
  sp.wavenumber = setup.k;
  SimState s = make_scenario("flat_cosine", sp);

  Params params;
  params.g = setup.g;
  params.validate();

  DispersionResult r;
  r.expected = std::sqrt(setup.g * setup.k);
  const long steps = std::lround(setup.t_end / setup.dt);
  r.times.push_back(s.t);
  r.amplitudes.push_back(cosine_amplitude(s.z.samples().y, setup.k));

  std::vector<double> crossings;
  for (long i = 0; i < steps; ++i) {
    s = rk4_step(s, setup.dt, params);
    const double a = cosine_amplitude(s.z.samples().y, setup.k);
    const double a0 = r.amplitudes.back();
    const double t0 = r.times.back();
    if ((a0 > 0.0 && a <= 0.0) || (a0 < 0.0 && a >= 0.0)) {
      crossings.push_back(t0 + (s.t - t0) * a0 / (a0 - a));
    }
    r.times.push_back(s.t);
    r.amplitudes.push_back(a);
  }

  r.crossings = static_cast<int>(crossings.size());
  if (crossings.size() < 2) throw std::runtime_error("dispersion: fewer than two zero crossings; increase t_end");
  const double half_period = (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
  r.omega = kPi / half_period;
  r.rel_error = std::abs(r.omega - r.expected) / r.expected;
  return r;
}

}  // namespace ifdyn
