#include "ifdyn/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ifdyn/geometry.hpp"
#include "ifdyn/spectral.hpp"

namespace ifdyn {

ScalarField sigma_field_water_wave(const Contour& z, const ScalarField& omega, const StateDerivative& d,
                                   const VectorField& dt_br, const Params& params) {
  const std::size_t n = omega.size();
  const VectorField dz = z.derivative(1);
  const VectorField d2z = z.derivative(2);
  const VectorField dbr = spectral::derivative(d.aux.br, 1);
  const VectorField dzt = spectral::derivative(d.z_t, 1);
  const ScalarField& phi = d.aux.phi;

  ScalarField sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 t = dz.at(j);
    const Vec2 nrm = perp(t);
    const double a = dot(t, t);
    const double s = std::sqrt(a);
    const double r = phi[j] / s;
    const double first = dot(dt_br.at(j) + r * dbr.at(j), nrm);
    const double second = 0.5 * omega[j] / a * dot(dzt.at(j) + r * d2z.at(j), nrm);
    sigma[j] = params.rho2 * (first + second + params.g * t.x);
  }
  return sigma;
}

ScalarField sigma_field(const Contour& z, const ScalarField& omega, const StateDerivative& d,
                        const VectorField& dt_br, const Params& params) {
  if (params.a_rho == 1.0) return sigma_field_water_wave(z, omega, d, dt_br, params);

  const std::size_t n = omega.size();
  const double ar = params.a_rho;
  const double scale = params.rho2 + params.rho1();
  const VectorField dz = z.derivative(1);
  const VectorField d2z = z.derivative(2);
  const VectorField dbr = spectral::derivative(d.aux.br, 1);

  ScalarField sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 t = dz.at(j);
    const Vec2 nrm = perp(t);
    const double a = dot(t, t);
    const double w = omega[j];
    const double first = ar * dot(dt_br.at(j) + (w * w / (4.0 * a * a)) * d2z.at(j), nrm);
    const double second = (w / a - ar * d.aux.c[j]) * dot(dbr.at(j), nrm);
    sigma[j] = scale * (first + second + params.g * ar * t.x);
  }
  return sigma;
}

EnergyValue energy(const SimState& state, const StateDerivative& d, const ScalarField& sigma, int k, double p,
                   const Params& params) {
  const std::size_t n = state.z.size();
  if (k < 2) throw std::invalid_argument("energy: k must be at least 2");
  if (static_cast<std::size_t>(k) > n / 4) {
    throw ResolutionExceeded("energy: k = " + std::to_string(k) + " exceeds N/4 = " + std::to_string(n / 4));
  }
  const double kd = static_cast<double>(k);
  const VectorField& samples = state.z.samples();
  const VectorField dz = state.z.derivative(1);
  const VectorField dkz = state.z.derivative(k);
  const double h = state.z.grid().spacing();
  const double scale = params.rho2 + params.rho1();

  EnergyValue out;
  EnergyTerms& e = out.terms;
  e.curve = std::pow(spectral::sobolev_norm(samples.x, kd - 1.0), 2) +
            std::pow(spectral::sobolev_norm(samples.y, kd - 1.0), 2);
  for (std::size_t j = 0; j < n; ++j) {
    e.sigma_weighted += h * sigma[j] / (scale * dot(dz.at(j), dz.at(j))) * dot(dkz.at(j), dkz.at(j));
  }
  e.arc_chord_sq = std::pow(arc_chord(state.z), 2);
  e.omega = std::pow(spectral::sobolev_norm(state.omega, kd - 2.0), 2);
  e.phi = std::pow(spectral::sobolev_norm(d.aux.phi, kd - 0.5), 2);

  const double e2 = e.curve + e.sigma_weighted + e.arc_chord_sq + e.omega + e.phi;
  out.E = std::sqrt(std::max(e2, 0.0));
  out.min_sigma = *std::min_element(sigma.begin(), sigma.end());
  out.valid = out.min_sigma > 0.0;
  out.e_rt = out.valid ? std::pow(out.E, p) + 1.0 / out.min_sigma : std::numeric_limits<double>::infinity();
  return out;
}

Conservation conservation(const SimState& state) { return {mean(state.omega), tangent_uniformity(state.z)}; }

DiagnosticSample compute_diagnostics(const BRKernelEval& ops, const SimState& state, const StateDerivative& d,
                                     const Params& params, int energy_k, double energy_p) {
  DiagnosticSample s;
  const VectorField dt_br = ops.dt_birkhoff_rott(state.omega, d.z_t, d.omega_t);
  s.sigma = sigma_field(state.z, state.omega, d, dt_br, params);
  s.energy = energy(state, d, s.sigma, energy_k, energy_p, params);
  const Conservation cons = conservation(state);

  DiagRecord& r = s.record;
  r.t = state.t;
  r.A = mean_tangent_length_sq(state.z);
  r.B = d.aux.B;
  r.min_sigma = s.energy.min_sigma;
  r.arc_chord = std::sqrt(s.energy.terms.arc_chord_sq);
  r.energy = s.energy.E;
  r.e_rt = s.energy.e_rt;
  r.mean_omega = cons.mean_omega;
  r.max_speed = max_norm(d.z_t);
  r.uniformity = cons.uniformity;
  r.solver_residual = d.aux.solver_residual;
  r.solver_iters = d.aux.solver_iters;
  return s;
}

}  // namespace ifdyn
