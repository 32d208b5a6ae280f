#pragma once

#include "ifdyn/contour.hpp"
#include "ifdyn/kernels.hpp"

// Principal-value Birkhoff-Rott quadrature and the operator T(u) = 2 BR(z,u).dz.
//
// BR and dt_BR use the alternating-point trapezoidal rule (weight 2h, offsets
// j - k odd). apply_T uses the full trapezoidal rule over k != j plus the
// analytic diagonal limit of the smooth kernel Im(dz_j / (z_j - z_k)): the
// alternating rule maps the sawtooth (-1)^j to -(-1)^j on closed curves, which
// makes I + T singular on the grid.
namespace ifdyn {

/// Per-contour cache: split node tables, dz and d^2z. Rebuild whenever z changes.
class BRKernelEval {
 public:
  /// Throws CurveDegenerate if two nodes (or, for periodic curves, two images)
  /// coincide or the tangent vanishes.
  explicit BRKernelEval(const Contour& z);

  const Contour& contour() const { return z_; }
  std::size_t size() const { return z_.size(); }
  const VectorField& tangent() const { return dz_; }
  const VectorField& second_derivative() const { return d2z_; }

  VectorField birkhoff_rott(const ScalarField& u) const;
  VectorField dt_birkhoff_rott(const ScalarField& u, const VectorField& z_t, const ScalarField& u_t) const;
  ScalarField apply_T(const ScalarField& u) const;

 private:
  Contour z_;
  kernels::NodeTable nodes_;
  VectorField dz_;
  VectorField d2z_;
  ScalarField t_diagonal_;  // (h/2pi) (dz x d^2z)/|dz|^2
};

struct SolveResult {
  ScalarField x;
  double residual = 0.0;  // ||x + a_rho T x - b||_inf / ||b||_inf (0 when b = 0)
  int iterations = 0;
};

/// Restarted GMRES on (I + a_rho T) x = b, matrix-free. Converged when the true
/// relative residual in the max norm is at most tol; NoConvergence otherwise.
SolveResult solve_second_kind(const BRKernelEval& ops, double a_rho, const ScalarField& b, double tol,
                              int max_iter);

VectorField birkhoff_rott(const Contour& z, const ScalarField& u);
VectorField dt_birkhoff_rott(const Contour& z, const ScalarField& u, const VectorField& z_t,
                             const ScalarField& u_t);
ScalarField apply_T(const Contour& z, const ScalarField& u);
SolveResult solve_second_kind(const Contour& z, double a_rho, const ScalarField& b, double tol, int max_iter);

}  // namespace ifdyn
