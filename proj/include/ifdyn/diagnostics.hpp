#pragma once

#include "ifdyn/dynamics.hpp"

namespace ifdyn {

struct DiagRecord {
  double t = 0.0;
  double A = 0.0;
  double B = 0.0;
  double min_sigma = 0.0;
  double arc_chord = 0.0;
  double energy = 0.0;
  double e_rt = 0.0;
  double mean_omega = 0.0;
  double max_speed = 0.0;
  double uniformity = 0.0;
  double solver_residual = 0.0;
  int solver_iters = 0;

  friend bool operator==(const DiagRecord&, const DiagRecord&) = default;
};

/// Rayleigh-Taylor function sigma = -[grad p] . d^perp z. dt_br must be
/// dt_birkhoff_rott(omega, z_t, omega_t) for the solved derivative.
ScalarField sigma_field(const Contour& z, const ScalarField& omega, const StateDerivative& d,
                        const VectorField& dt_br, const Params& params);

/// The water-wave form (rho1 = 0); defined for any a_rho, meaningful at a_rho = 1.
ScalarField sigma_field_water_wave(const Contour& z, const ScalarField& omega, const StateDerivative& d,
                                   const VectorField& dt_br, const Params& params);

struct EnergyTerms {
  double curve = 0.0;         // ||z||^2_{H^{k-1}} (periodic part for periodic curves)
  double sigma_weighted = 0.0;  // int sigma/(rho |dz|^2) |d^k z|^2
  double arc_chord_sq = 0.0;
  double omega = 0.0;         // ||omega||^2_{H^{k-2}}
  double phi = 0.0;           // ||phi||^2_{H^{k-1/2}}
};

struct EnergyValue {
  double E = 0.0;
  double e_rt = 0.0;  // E^p + 1/m, +inf when m <= 0
  double min_sigma = 0.0;
  bool valid = true;  // false when m <= 0
  EnergyTerms terms;
};

/// Throws ResolutionExceeded if k > N/4; std::invalid_argument if k < 2.
EnergyValue energy(const SimState& state, const StateDerivative& d, const ScalarField& sigma, int k, double p,
                   const Params& params);

struct Conservation {
  double mean_omega = 0.0;
  double uniformity = 0.0;
};
Conservation conservation(const SimState& state);

struct DiagnosticSample {
  DiagRecord record;
  ScalarField sigma;
  EnergyValue energy;
};

/// Full record from a state and its already-computed derivative.
DiagnosticSample compute_diagnostics(const BRKernelEval& ops, const SimState& state, const StateDerivative& d,
                                     const Params& params, int energy_k = 4, double energy_p = 2.0);

}  // namespace ifdyn
