#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ifdyn/dynamics.hpp"

namespace ifdyn {

struct ScenarioParams {
  std::size_t n = 128;
  double amplitude = 0.0;        // a: flat_cosine height, perturbed_circle radial factor
  int wavenumber = 1;            // k (flat_cosine) or m (perturbed_circle)
  double radius = 1.0;           // R
  double omega0 = 1.0;           // circle_patch constant strength
  double omega_amplitude = 0.0;  // adds omega_amplitude * cos(k a) to omega
  double noise = 0.0;            // uniform(-noise, noise) added to the normal coordinate
  std::uint64_t seed = 1;

  friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

const std::vector<std::string>& scenario_names();

/// Builds the named initial state, reparametrized to uniform |dz|. omega is
/// sampled on the final parametrization. Throws UnknownScenario,
/// SelfIntersecting (arc-chord fails on the result) or ConfigError.
SimState make_scenario(const std::string& name, const ScenarioParams& params);

/// Resample a curve at nodes where cumulative arclength is uniform. The point
/// set is that of the trigonometric interpolant of the input.
Contour reparametrize_arclength(const Contour& z);

}  // namespace ifdyn
