#pragma once

#include "ifdyn/types.hpp"

namespace ifdyn {

/// Uniform grid alpha_j = -pi + j h on [-pi, pi), h = 2 pi / N.
/// N must be a power of two and at least 16.
class Grid {
 public:
  explicit Grid(std::size_t n);

  std::size_t size() const { return n_; }
  double spacing() const { return kTwoPi / static_cast<double>(n_); }
  double node(std::ptrdiff_t j) const { return -kPi + spacing() * static_cast<double>(j); }
  ScalarField nodes() const;

  static bool valid_size(std::size_t n);

 private:
  std::size_t n_;
};

}  // namespace ifdyn
