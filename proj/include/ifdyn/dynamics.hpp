#pragma once

#include "ifdyn/contour.hpp"
#include "ifdyn/singular_ops.hpp"

namespace ifdyn {

struct Params {
  double a_rho = 1.0;  // Atwood number (rho2 - rho1)/(rho2 + rho1)
  double g = 1.0;
  double rho2 = 1.0;
  double epsilon = 0.0;
  double solver_tol = 1e-12;
  int solver_max_iter = 200;
  double filter_threshold = 1e-13;
  double uniformity_tol = 1e-6;
  bool allow_kelvin_helmholtz = false;

  /// Throws ConfigError on out-of-range values. a_rho = 0 needs
  /// allow_kelvin_helmholtz and epsilon > 0.
  void validate() const;
  double rho1() const { return rho2 * (1.0 - a_rho) / (1.0 + a_rho); }

  friend bool operator==(const Params&, const Params&) = default;
};

struct SimState {
  double t = 0.0;
  Contour z;
  ScalarField omega;
};

struct DerivativeAux {
  VectorField br;
  ScalarField c;
  double B = 0.0;
  double A_prime = 0.0;
  ScalarField phi;
  double solver_residual = 0.0;
  int solver_iters = 0;
};

struct StateDerivative {
  VectorField z_t;
  ScalarField omega_t;
  DerivativeAux aux;
};

/// c = ((a+pi)/2pi) int f - int_{-pi}^a f with f = (dz . dBR)/|dz|^2.
ScalarField tangential_speed(const Contour& z, const VectorField& br);

struct BAndAPrime {
  double B = 0.0;
  double A_prime = 0.0;
};
BAndAPrime b_and_a_prime(const Contour& z, const VectorField& br);

/// phi = omega/(2|dz|) - c|dz|.
ScalarField phi_from_state(const Contour& z, const ScalarField& omega, const ScalarField& c);

/// Right-hand side b of (I + a_rho T) omega_t = b, without the epsilon term.
/// a_rho = 1 uses the phi^2 transport form; other values the general form.
ScalarField omega_rhs(const BRKernelEval& ops, const ScalarField& omega, const VectorField& br,
                      const VectorField& z_t, const ScalarField& c, const ScalarField& phi, const Params& params);

StateDerivative state_derivative(const BRKernelEval& ops, const SimState& state, const Params& params);
StateDerivative state_derivative(const SimState& state, const Params& params);

}  // namespace ifdyn
