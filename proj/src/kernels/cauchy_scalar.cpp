#include <cmath>

#include "cauchy_impl.hpp"

namespace ifdyn::kernels::detail {

namespace {

struct cplx {
  double re;
  double im;
};

inline cplx mul(cplx a, cplx b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

// Reference kernels evaluate the trigonometric functions of each difference
// directly; the SIMD variants use per-node half-angle tables instead.
inline cplx kernel_closed(double dx, double dy) {
  const double r2 = dx * dx + dy * dy;
  return {dx / r2, -dy / r2};
}

inline cplx kernel_periodic(double dx, double dy) {
  const double s = std::sin(0.5 * dx);
  const double c = std::cos(0.5 * dx);
  const double sh = std::sinh(0.5 * dy);
  const double ch = std::cosh(0.5 * dy);
  // cot(D/2)/2 = (sin dx - i sinh dy) / (2 (cosh dy - cos dx))
  const double q = 2.0 * (sh * sh + s * s);
  return {s * c / q, -sh * ch / q};
}

inline cplx kernel(GeometryKind kind, double dx, double dy) {
  return kind == GeometryKind::ClosedContour ? kernel_closed(dx, dy) : kernel_periodic(dx, dy);
}

// dK/dD: -K^2 for 1/D, -(1/4 + K^2) for cot(D/2)/2.
inline cplx kernel_derivative(GeometryKind kind, cplx k) {
  const cplx k2 = mul(k, k);
  return kind == GeometryKind::ClosedContour ? cplx{-k2.re, -k2.im} : cplx{-(0.25 + k2.re), -k2.im};
}

}  // namespace

void cauchy_sum_scalar(const SplitArgs& a) {
  const NodeTable& t = *a.nodes;
  const std::size_t n = t.n;
  const std::size_t half = n / 2;
  const auto rows = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel for schedule(static) if (n >= kParallelRows)
  for (std::ptrdiff_t jj = 0; jj < rows; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const std::size_t pj = j & 1U;
    const std::size_t idx = j >> 1U;
    const double xj = t.x[pj][idx];
    const double yj = t.y[pj][idx];
    double sr = 0.0;
    double si = 0.0;
    for (std::size_t pass = 0; pass < 2; ++pass) {
      const std::size_t q = pass == 0 ? 1 - pj : pj;
      if (pass == 1 && a.offsets == Offsets::Alternating) break;
      for (std::size_t m = 0; m < half; ++m) {
        if (q == pj && m == idx) continue;
        const cplx k = kernel(t.kind, xj - t.x[q][m], yj - t.y[q][m]);
        sr += k.re * a.u[q][m];
        si += k.im * a.u[q][m];
      }
    }
    a.re[j] = sr;
    a.im[j] = si;
  }
}

void cauchy_sum_dt_scalar(const SplitArgs& a) {
  const NodeTable& t = *a.nodes;
  const std::size_t n = t.n;
  const std::size_t half = n / 2;
  const auto rows = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel for schedule(static) if (n >= kParallelRows)
  for (std::ptrdiff_t jj = 0; jj < rows; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const std::size_t pj = j & 1U;
    const std::size_t idx = j >> 1U;
    const std::size_t q = 1 - pj;
    const double xj = t.x[pj][idx];
    const double yj = t.y[pj][idx];
    const double xtj = a.xt[pj][idx];
    const double ytj = a.yt[pj][idx];
    double sr = 0.0;
    double si = 0.0;
    for (std::size_t m = 0; m < half; ++m) {
      const cplx k = kernel(t.kind, xj - t.x[q][m], yj - t.y[q][m]);
      const cplx kp = kernel_derivative(t.kind, k);
      const cplx stretch = mul(kp, {xtj - a.xt[q][m], ytj - a.yt[q][m]});
      sr += k.re * a.ut[q][m] + stretch.re * a.u[q][m];
      si += k.im * a.ut[q][m] + stretch.im * a.u[q][m];
    }
    a.re[j] = sr;
    a.im[j] = si;
  }
}

}  // namespace ifdyn::kernels::detail
