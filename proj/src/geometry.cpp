#include "ifdyn/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace ifdyn {

double arc_chord(const Contour& z) {
  const auto n = static_cast<std::ptrdiff_t>(z.size());
  const double h = z.grid().spacing();
  const VectorField dz = z.derivative(1);

  double worst = 0.0;
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const double speed = norm(dz.at(static_cast<std::size_t>(j)));
    if (speed == 0.0) throw CurveDegenerate("arc_chord: vanishing tangent at node " + std::to_string(j));
    worst = std::max(worst, 1.0 / speed);
  }

  // Rows are independent; the max reduction is order-insensitive.
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const Vec2 zj = z.point(j);
    for (std::ptrdiff_t m = -n / 2 + 1; m <= n / 2; ++m) {
      if (m == 0) continue;
      const double chord = norm(zj - z.point(j - m));
      if (chord == 0.0) {
        std::ostringstream os;
        os << "arc_chord: nodes " << j << " and " << ((j - m) % n + n) % n << " coincide";
        throw CurveDegenerate(os.str());
      }
      worst = std::max(worst, std::abs(static_cast<double>(m)) * h / chord);
    }
  }
  return worst;
}

double mean_tangent_length_sq(const Contour& z) {
  const VectorField dz = z.derivative(1);
  double sum = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) sum += dot(dz.at(j), dz.at(j));
  return sum / static_cast<double>(z.size());
}

double tangent_uniformity(const Contour& z) {
  const VectorField dz = z.derivative(1);
  ScalarField a(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) a[j] = dot(dz.at(j), dz.at(j));
  const double m = mean(a);
  if (m == 0.0) return 0.0;
  double dev = 0.0;
  for (double v : a) dev = std::max(dev, std::abs(v - m));
  return dev / m;
}

}  // namespace ifdyn
