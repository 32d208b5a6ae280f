#pragma once

#include <vector>

#include "ifdyn/dynamics.hpp"

namespace ifdyn {

struct DispersionSetup {
  int k = 1;
  double g = 1.0;
  std::size_t n = 128;
  double t_end = 20.0;
  double dt = 0.01;
  double amplitude = 1e-5;
};

struct DispersionResult {
  double omega = 0.0;     // measured angular frequency
  double expected = 0.0;  // sqrt(g k)
  double rel_error = 0.0;
  int crossings = 0;
  std::vector<double> times;       // sample times
  std::vector<double> amplitudes;  // cos(k a) coefficient of the height
};

/// Standing wave from flat_cosine with omega = 0. The period comes from the
/// zero crossings of the k-th cosine coefficient of y, located by linear
/// interpolation. Throws std::runtime_error with fewer than two crossings.
DispersionResult measure_dispersion(const DispersionSetup& setup);

/// 2 Re c_k of the height, i.e. the coefficient of cos(k a).
double cosine_amplitude(const ScalarField& y, int k);

}  // namespace ifdyn
