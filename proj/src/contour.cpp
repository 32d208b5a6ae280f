#include "ifdyn/contour.hpp"

#include "ifdyn/spectral.hpp"

namespace ifdyn {

Contour::Contour(GeometryKind kind, VectorField samples) : kind_(kind), samples_(std::move(samples)) {
  if (samples_.x.size() != samples_.y.size()) throw std::invalid_argument("Contour: component size mismatch");
  if (!Grid::valid_size(samples_.size())) throw ConfigError("Contour: N must be a power of two and at least 16");
}

Vec2 Contour::point(std::ptrdiff_t i) const {
  const auto n = static_cast<std::ptrdiff_t>(size());
  std::ptrdiff_t wrapped = i % n;
  if (wrapped < 0) wrapped += n;
  const std::ptrdiff_t turns = (i - wrapped) / n;
  Vec2 p = samples_.at(static_cast<std::size_t>(wrapped));
  if (periodic()) {
    p.x += grid().node(wrapped) + kTwoPi * static_cast<double>(turns);
  }
  return p;
}

VectorField Contour::coordinates() const {
  VectorField z = samples_;
  if (periodic()) {
    const Grid g = grid();
    for (std::size_t j = 0; j < size(); ++j) z.x[j] += g.node(static_cast<std::ptrdiff_t>(j));
  }
  return z;
}

VectorField Contour::derivative(int order) const {
  VectorField d = spectral::derivative(samples_, order);
  if (periodic() && order == 1) {
    for (auto& v : d.x) v += 1.0;
  }
  return d;
}

}  // namespace ifdyn
