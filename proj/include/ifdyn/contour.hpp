#pragma once

#include "ifdyn/grid.hpp"
#include "ifdyn/types.hpp"

namespace ifdyn {

/// Sampled interface curve z(alpha).
///
/// For a HorizontallyPeriodic curve the stored samples are the periodic part
/// p(alpha) = z(alpha) - (alpha, 0); every Fourier operation and norm acts on
/// p, and the constant tangent (1, 0) is added back wherever derivatives of z
/// are taken.
class Contour {
 public:
  Contour(GeometryKind kind, VectorField samples);

  GeometryKind kind() const { return kind_; }
  bool periodic() const { return kind_ == GeometryKind::HorizontallyPeriodic; }
  std::size_t size() const { return samples_.size(); }
  Grid grid() const { return Grid(size()); }

  /// Stored samples: z itself (closed) or its periodic part (periodic).
  const VectorField& samples() const { return samples_; }

  /// z at node index i; any integer index is accepted and unwrapped according
  /// to the geometry kind.
  Vec2 point(std::ptrdiff_t i) const;

  /// Full coordinates of z at the nodes.
  VectorField coordinates() const;

  /// d^order z / d alpha^order, order >= 1.
  VectorField derivative(int order = 1) const;

  friend bool operator==(const Contour&, const Contour&) = default;

 private:
  GeometryKind kind_;
  VectorField samples_;
};

}  // namespace ifdyn
