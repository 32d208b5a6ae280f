#pragma once

// Pairwise Cauchy-kernel sums behind the Birkhoff-Rott quadrature.
//
// With z read as a complex number and Delta_jk = z_j - z_k, every quadrature in
// singular_ops reduces to one of
//
//   S_j = sum_k K(Delta_jk) u_k
//   S_j = sum_k K(Delta_jk) ut_k + K'(Delta_jk) (zt_j - zt_k) u_k
//
// with K(D) = 1/D on closed contours and K(D) = cot(D/2)/2 (the image sum of
// 1/D over horizontal 2pi shifts) on periodic ones. The sum runs either over
// nodes of opposite index parity (alternating-point rule) or over every k != j.
//
// Each sum has a scalar reference implementation and SIMD variants selected at
// runtime; the variants must agree with the reference to rounding.
#include <array>
#include <span>
#include <vector>

#include "ifdyn/types.hpp"

namespace ifdyn::kernels {

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);
bool available(Isa isa);
Isa best_available();

/// Process-wide selection. Initialized from INTERFACE_DYN_ISA (scalar|avx2)
/// when set, otherwise the best available variant.
Isa active_isa();
void set_active_isa(Isa isa);

/// Caps the worker threads of the row-parallel loops; 0 restores the default.
/// No effect in builds without OpenMP.
void set_thread_limit(int threads);

/// Applies INTERFACE_DYN_THREADS when set (0 or absent: automatic). Returns the
/// value applied.
int apply_thread_limit_from_env();

enum class Offsets {
  Alternating,  // k with j - k odd
  AllButSelf    // every k != j
};

/// Node data split by index parity: entry [p][m] holds node 2m + p.
struct NodeTable {
  GeometryKind kind = GeometryKind::ClosedContour;
  std::size_t n = 0;
  std::array<std::vector<double>, 2> x, y;
  // Periodic kernel only: sin/cos(x/2) and sinh/cosh(y/2).
  std::array<std::vector<double>, 2> sin_hx, cos_hx, sinh_hy, cosh_hy;

  static NodeTable build(GeometryKind kind, const VectorField& coordinates);
};

struct ComplexSums {
  ScalarField re;
  ScalarField im;
};

ComplexSums cauchy_sum(const NodeTable& nodes, std::span<const double> u, Offsets offsets,
                       Isa isa = active_isa());

ComplexSums cauchy_sum_dt(const NodeTable& nodes, std::span<const double> u, std::span<const double> xt,
                          std::span<const double> yt, std::span<const double> ut, Isa isa = active_isa());

}  // namespace ifdyn::kernels
