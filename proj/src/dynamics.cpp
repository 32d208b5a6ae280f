#include "ifdyn/dynamics.hpp"

#include <cmath>

#include "ifdyn/spectral.hpp"

namespace ifdyn {

void Params::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("params: " + what); };
  if (!(a_rho > -1.0 && a_rho <= 1.0)) fail("a_rho must lie in (-1, 1]");
  if (!std::isfinite(g)) fail("g must be finite");
  if (!(rho2 > 0.0) || !std::isfinite(rho2)) fail("rho2 must be positive");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) fail("epsilon must be non-negative");
  if (!(solver_tol > 0.0)) fail("solver_tol must be positive");
  if (solver_max_iter <= 0) fail("solver_max_iter must be positive");
  if (!(filter_threshold >= 0.0 && filter_threshold < 1.0)) fail("filter_threshold must lie in [0, 1)");
  if (!(uniformity_tol > 0.0)) fail("uniformity_tol must be positive");
  if (a_rho == 0.0) {
    if (!allow_kelvin_helmholtz) fail("a_rho = 0 is the ill-posed vortex sheet; set allow_kelvin_helmholtz");
    if (!(epsilon > 0.0)) fail("a_rho = 0 requires epsilon > 0");
  }
}

namespace {

ScalarField dot_field(const VectorField& a, const VectorField& b) {
  ScalarField out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a.x[j] * b.x[j] + a.y[j] * b.y[j];
  return out;
}

ScalarField speed_field(const VectorField& dz) {
  ScalarField out(dz.size());
  for (std::size_t j = 0; j < dz.size(); ++j) out[j] = std::hypot(dz.x[j], dz.y[j]);
  return out;
}

ScalarField tangential_speed_from(const VectorField& dz, const VectorField& br) {
  const VectorField dbr = spectral::derivative(br, 1);
  ScalarField f(dz.size());
  for (std::size_t j = 0; j < dz.size(); ++j) {
    f[j] = dot(dz.at(j), dbr.at(j)) / dot(dz.at(j), dz.at(j));
  }
  // The mean of f cancels against the linear term; what remains is periodic.
  const ScalarField big_f = spectral::antiderivative(f);
  ScalarField c(dz.size());
  for (std::size_t j = 0; j < dz.size(); ++j) c[j] = big_f[0] - big_f[j];
  return c;
}

}  // namespace

ScalarField tangential_speed(const Contour& z, const VectorField& br) {
  return tangential_speed_from(z.derivative(1), br);
}

BAndAPrime b_and_a_prime(const Contour& z, const VectorField& br) {
  const VectorField dz = z.derivative(1);
  const VectorField dbr = spectral::derivative(br, 1);
  const ScalarField p = dot_field(dz, dbr);
  ScalarField f(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) f[j] = p[j] / dot(dz.at(j), dz.at(j));
  return {mean(f), 2.0 * mean(p)};
}

ScalarField phi_from_state(const Contour& z, const ScalarField& omega, const ScalarField& c) {
  const ScalarField s = speed_field(z.derivative(1));
  ScalarField phi(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) phi[j] = omega[j] / (2.0 * s[j]) - c[j] * s[j];
  return phi;
}

ScalarField omega_rhs(const BRKernelEval& ops, const ScalarField& omega, const VectorField& br,
                      const VectorField& z_t, const ScalarField& c, const ScalarField& phi, const Params& params) {
  const std::size_t n = omega.size();
  const VectorField& dz = ops.tangent();
  const VectorField dbr = spectral::derivative(br, 1);
  const ScalarField dz_dbr = dot_field(dz, dbr);

  // z_t-part of -2 d_tBR . dz; the omega_t part sits in T on the left.
  const VectorField stretch = ops.dt_birkhoff_rott(omega, z_t, ScalarField(n));
  ScalarField i12(n);
  for (std::size_t j = 0; j < n; ++j) i12[j] = -2.0 * dot(stretch.at(j), dz.at(j));

  ScalarField rhs(n);
  const double g = params.g;
  if (params.a_rho == 1.0) {
    ScalarField phi2(n);
    for (std::size_t j = 0; j < n; ++j) phi2[j] = phi[j] * phi[j];
    const ScalarField dphi2 = spectral::derivative(phi2, 1);
    const double a_prime = 2.0 * mean(dz_dbr);
    for (std::size_t j = 0; j < n; ++j) rhs[j] = i12[j] - dphi2[j] + c[j] * a_prime - 2.0 * g * dz.y[j];
  } else {
    const double a = params.a_rho;
    ScalarField q(n), cw(n);
    for (std::size_t j = 0; j < n; ++j) {
      q[j] = omega[j] * omega[j] / (4.0 * dot(dz.at(j), dz.at(j)));
      cw[j] = c[j] * omega[j];
    }
    const ScalarField dq = spectral::derivative(q, 1);
    const ScalarField dcw = spectral::derivative(cw, 1);
    for (std::size_t j = 0; j < n; ++j) {
      rhs[j] = a * i12[j] - a * dq[j] + dcw[j] + 2.0 * a * c[j] * dz_dbr[j] - 2.0 * a * g * dz.y[j];
    }
  }
  return rhs;
}

StateDerivative state_derivative(const BRKernelEval& ops, const SimState& state, const Params& params) {
  const std::size_t n = state.omega.size();
  if (n != ops.size()) throw std::invalid_argument("state_derivative: omega size does not match the contour");
  const VectorField& dz = ops.tangent();

  StateDerivative d;
  d.aux.br = ops.birkhoff_rott(state.omega);
  d.aux.c = tangential_speed_from(dz, d.aux.br);
  const BAndAPrime ba = b_and_a_prime(ops.contour(), d.aux.br);
  d.aux.B = ba.B;
  d.aux.A_prime = ba.A_prime;
  d.aux.phi = phi_from_state(ops.contour(), state.omega, d.aux.c);

  d.z_t = VectorField(n);
  for (std::size_t j = 0; j < n; ++j) {
    d.z_t.x[j] = d.aux.br.x[j] + d.aux.c[j] * dz.x[j];
    d.z_t.y[j] = d.aux.br.y[j] + d.aux.c[j] * dz.y[j];
  }

  ScalarField rhs = omega_rhs(ops, state.omega, d.aux.br, d.z_t, d.aux.c, d.aux.phi, params);
  if (params.epsilon > 0.0) {
    const ScalarField lap = spectral::derivative(d.aux.phi, 2);
    for (std::size_t j = 0; j < n; ++j) rhs[j] += params.epsilon * 2.0 * norm(dz.at(j)) * lap[j];
  }

  SolveResult solved = solve_second_kind(ops, params.a_rho, rhs, params.solver_tol, params.solver_max_iter);
  d.omega_t = std::move(solved.x);
  d.aux.solver_residual = solved.residual;
  d.aux.solver_iters = solved.iterations;
  return d;
}

StateDerivative state_derivative(const SimState& state, const Params& params) {
  return state_derivative(BRKernelEval(state.z), state, params);
}

}  // namespace ifdyn
