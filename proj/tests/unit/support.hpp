#pragma once

#include <cmath>
#include <functional>

#include "ifdyn/contour.hpp"

namespace test {

using namespace ifdyn;

inline ScalarField sample(std::size_t n, const std::function<double(double)>& f) {
  const Grid g(n);
  ScalarField out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = f(g.node(static_cast<std::ptrdiff_t>(j)));
  return out;
}

inline Contour circle(std::size_t n, double r = 1.0) {
  return Contour(GeometryKind::ClosedContour,
                 VectorField(sample(n, [r](double a) { return r * std::cos(a); }),
                             sample(n, [r](double a) { return r * std::sin(a); })));
}

inline Contour flat(std::size_t n) { return Contour(GeometryKind::HorizontallyPeriodic, VectorField(n)); }

/// Periodic curve with periodic part (0, a cos(k alpha)), not reparametrized.
inline Contour graph_curve(std::size_t n, double a, int k) {
  return Contour(GeometryKind::HorizontallyPeriodic,
                 VectorField(ScalarField(n), sample(n, [a, k](double s) { return a * std::cos(k * s); })));
}

/// Smooth closed curve r = 1 + eps cos(m alpha) (non-uniform speed).
inline Contour wavy_circle(std::size_t n, double eps, int m) {
  auto r = [eps, m](double a) { return 1.0 + eps * std::cos(m * a); };
  return Contour(GeometryKind::ClosedContour,
                 VectorField(sample(n, [r](double a) { return r(a) * std::cos(a); }),
                             sample(n, [r](double a) { return r(a) * std::sin(a); })));
}

inline double max_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

inline double max_diff(const VectorField& a, const VectorField& b) {
  return std::max(max_diff(a.x, b.x), max_diff(a.y, b.y));
}

}  // namespace test
