#include "ifdyn/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ifdyn/geometry.hpp"
#include "ifdyn/spectral.hpp"

namespace ifdyn {

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"flat_rest", "flat_cosine", "circle_patch", "perturbed_circle"};
  return names;
}

Contour reparametrize_arclength(const Contour& z) {
  const std::size_t n = z.size();
  const Grid grid = z.grid();
  const VectorField dz = z.derivative(1);
  ScalarField speed(n);
  for (std::size_t j = 0; j < n; ++j) speed[j] = norm(dz.at(j));
  const double mean_speed = mean(speed);

  // s(a) = mean_speed (a + pi) + S(a) - S(-pi), S the mean-free antiderivative.
  const auto s_coeffs = spectral::forward(spectral::antiderivative(speed).span());
  const auto v_coeffs = spectral::forward(speed.span());
  const double s0 = spectral::interpolate(s_coeffs, n, -kPi);

  const auto px = spectral::forward(z.samples().x.span());
  const auto py = spectral::forward(z.samples().y.span());
  VectorField out(n);
  double beta = -kPi;
  for (std::size_t j = 0; j < n; ++j) {
    const double target = grid.node(static_cast<std::ptrdiff_t>(j));
    // Newton on beta + (S(beta) - S(-pi))/mean_speed = target, monotone in beta.
    if (j > 0) beta += grid.spacing() * mean_speed / spectral::interpolate(v_coeffs, n, beta);
    for (int it = 0; it < 60; ++it) {
      const double g = beta + (spectral::interpolate(s_coeffs, n, beta) - s0) / mean_speed - target;
      const double dg = spectral::interpolate(v_coeffs, n, beta) / mean_speed;
      const double step = g / dg;
      beta -= step;
      if (std::abs(step) < 1e-12) break;  // quadratic convergence: the last step already landed
    }
    const double x = spectral::interpolate(px, n, beta);
    const double y = spectral::interpolate(py, n, beta);
    out.x[j] = z.periodic() ? x + beta - target : x;
    out.y[j] = y;
  }
  return Contour(z.kind(), std::move(out));
}

namespace {

Contour uniformize(Contour z) {
  // Aliasing of the resampled curve leaves a residual non-uniformity that
  // further passes reduce.
  for (int pass = 0; pass < 4 && tangent_uniformity(z) > 1e-12; ++pass) z = reparametrize_arclength(z);
  return z;
}

void add_noise(VectorField& p, const ScenarioParams& sp, bool closed) {
  if (sp.noise == 0.0) return;
  std::mt19937_64 rng(sp.seed);
  std::uniform_real_distribution<double> dist(-sp.noise, sp.noise);
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double e = dist(rng);
    if (closed) {
      const double r = std::hypot(p.x[j], p.y[j]);
      p.x[j] += e * p.x[j] / r;
      p.y[j] += e * p.y[j] / r;
    } else {
      p.y[j] += e;
    }
  }
}

}  // namespace

SimState make_scenario(const std::string& name, const ScenarioParams& sp) {
  if (!Grid::valid_size(sp.n)) throw ConfigError("scenario: N must be a power of two and at least 16");
  const Grid grid(sp.n);
  const std::size_t n = sp.n;
  ScalarField omega(n);
  VectorField p(n);
  GeometryKind kind = GeometryKind::HorizontallyPeriodic;
  const double k = static_cast<double>(sp.wavenumber);

  if (name == "flat_rest") {
    // periodic part stays 0
  } else if (name == "flat_cosine") {
    if (sp.wavenumber < 1 || static_cast<std::size_t>(sp.wavenumber) >= n / 2) {
      throw ConfigError("flat_cosine: wavenumber must lie in [1, N/2)");
    }
    for (std::size_t j = 0; j < n; ++j) p.y[j] = sp.amplitude * std::cos(k * grid.node(static_cast<std::ptrdiff_t>(j)));
  } else if (name == "circle_patch" || name == "perturbed_circle") {
    if (!(sp.radius > 0.0)) throw ConfigError(name + ": radius must be positive");
    kind = GeometryKind::ClosedContour;
    const bool perturbed = name == "perturbed_circle";
    if (perturbed && (sp.wavenumber < 1 || static_cast<std::size_t>(sp.wavenumber) >= n / 2)) {
      throw ConfigError("perturbed_circle: wavenumber must lie in [1, N/2)");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double a = grid.node(static_cast<std::ptrdiff_t>(j));
      const double r = sp.radius * (perturbed ? 1.0 + sp.amplitude * std::cos(k * a) : 1.0);
      p.x[j] = r * std::cos(a);
      p.y[j] = r * std::sin(a);
    }
    if (!perturbed) std::fill(omega.begin(), omega.end(), sp.omega0);
  } else {
    throw UnknownScenario("unknown scenario '" + name + "'");
  }

  add_noise(p, sp, kind == GeometryKind::ClosedContour);
  Contour z(kind, std::move(p));
  try {
    z = uniformize(std::move(z));
    arc_chord(z);
  } catch (const CurveDegenerate& e) {
    throw SelfIntersecting(name + ": " + e.what());
  }

  if (sp.omega_amplitude != 0.0) {
    // The cosine adds no circulation; the projection makes that exact on the grid.
    const double base = mean(omega);
    for (std::size_t j = 0; j < n; ++j) {
      omega[j] += sp.omega_amplitude * std::cos(k * grid.node(static_cast<std::ptrdiff_t>(j)));
    }
    set_mean(omega, base);
  }
  return {0.0, std::move(z), std::move(omega)};
}

}  // namespace ifdyn
