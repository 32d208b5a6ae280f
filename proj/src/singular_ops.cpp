#include "ifdyn/singular_ops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ifdyn/spectral.hpp"

namespace ifdyn {

namespace {

void check_same_grid(std::size_t n, std::size_t m, const char* what) {
  if (n != m) throw std::invalid_argument(std::string(what) + ": field size does not match the contour");
}

// Rejects coincident nodes. For periodic curves the kernel denominator
// sinh^2(dy/2) + sin^2(dx/2) also vanishes for coincident images.
void check_chords(const kernels::NodeTable& t) {
  const std::size_t n = t.n;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t pj = j & 1U, ij = j >> 1U;
    for (std::size_t k = j + 1; k < n; ++k) {
      const std::size_t pk = k & 1U, ik = k >> 1U;
      double d = 0.0;
      if (t.kind == GeometryKind::ClosedContour) {
        const double dx = t.x[pj][ij] - t.x[pk][ik];
        const double dy = t.y[pj][ij] - t.y[pk][ik];
        d = dx * dx + dy * dy;
      } else {
        const double s = t.sin_hx[pj][ij] * t.cos_hx[pk][ik] - t.cos_hx[pj][ij] * t.sin_hx[pk][ik];
        const double sh = t.sinh_hy[pj][ij] * t.cosh_hy[pk][ik] - t.cosh_hy[pj][ij] * t.sinh_hy[pk][ik];
        d = s * s + sh * sh;
      }
      if (d == 0.0) {
        std::ostringstream os;
        os << "quadrature: nodes " << j << " and " << k << " coincide";
        throw CurveDegenerate(os.str());
      }
    }
  }
}

}  // namespace

BRKernelEval::BRKernelEval(const Contour& z)
    : z_(z),
      nodes_(kernels::NodeTable::build(z.kind(), z.coordinates())),
      dz_(z.derivative(1)),
      d2z_(z.derivative(2)),
      t_diagonal_(z.size()) {
  const double h = z.grid().spacing();
  for (std::size_t j = 0; j < size(); ++j) {
    const double a = dot(dz_.at(j), dz_.at(j));
    if (a == 0.0) throw CurveDegenerate("quadrature: vanishing tangent at node " + std::to_string(j));
    const double cross = dz_.x[j] * d2z_.y[j] - dz_.y[j] * d2z_.x[j];
    t_diagonal_[j] = h / (2.0 * kPi) * cross / a;
  }
  check_chords(nodes_);
}

// conj(BR) = (1/2 pi i) sum 2h K u, so BR = (Im W, Re W)/2pi with W = 2h sum K u.
VectorField BRKernelEval::birkhoff_rott(const ScalarField& u) const {
  check_same_grid(size(), u.size(), "birkhoff_rott");
  const auto s = kernels::cauchy_sum(nodes_, u.span(), kernels::Offsets::Alternating);
  const double w = 2.0 * z_.grid().spacing() / (2.0 * kPi);
  VectorField br(size());
  for (std::size_t j = 0; j < size(); ++j) {
    br.x[j] = w * s.im[j];
    br.y[j] = w * s.re[j];
  }
  return br;
}

VectorField BRKernelEval::dt_birkhoff_rott(const ScalarField& u, const VectorField& z_t,
                                           const ScalarField& u_t) const {
  check_same_grid(size(), u.size(), "dt_birkhoff_rott");
  check_same_grid(size(), z_t.size(), "dt_birkhoff_rott");
  check_same_grid(size(), u_t.size(), "dt_birkhoff_rott");
  const auto s = kernels::cauchy_sum_dt(nodes_, u.span(), z_t.x.span(), z_t.y.span(), u_t.span());
  const double w = 2.0 * z_.grid().spacing() / (2.0 * kPi);
  VectorField out(size());
  for (std::size_t j = 0; j < size(); ++j) {
    out.x[j] = w * s.im[j];
    out.y[j] = w * s.re[j];
  }
  return out;
}

// T_j = (h/pi) [dz_j . (Im S_j, Re S_j)] + diagonal limit, S over every k != j.
ScalarField BRKernelEval::apply_T(const ScalarField& u) const {
  check_same_grid(size(), u.size(), "apply_T");
  const auto s = kernels::cauchy_sum(nodes_, u.span(), kernels::Offsets::AllButSelf);
  const double w = z_.grid().spacing() / kPi;
  ScalarField t(size());
  for (std::size_t j = 0; j < size(); ++j) {
    t[j] = w * (dz_.x[j] * s.im[j] + dz_.y[j] * s.re[j]) + t_diagonal_[j] * u[j];
  }
  return t;
}

namespace {

double max_abs_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

SolveResult solve_second_kind(const BRKernelEval& ops, double a_rho, const ScalarField& b, double tol,
                              int max_iter) {
  check_same_grid(ops.size(), b.size(), "solve_second_kind");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_second_kind: tol must be positive");
  const std::size_t n = b.size();
  const double bnorm = max_abs(b);
  SolveResult out{ScalarField(n), 0.0, 0};
  if (bnorm == 0.0) return out;
  if (a_rho == 0.0) {
    out.x = b;
    return out;
  }

  auto apply = [&](const std::vector<double>& v) {
    const ScalarField tv = ops.apply_T(ScalarField(v));
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = v[i] + a_rho * tv[i];
    return r;
  };
  auto residual = [&](const std::vector<double>& x) {
    const std::vector<double> ax = apply(x);
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ax[i];
    return r;
  };

  const std::size_t restart = std::min<std::size_t>(n, 60);
  std::vector<double> x(n, 0.0);
  std::vector<double> r(b.begin(), b.end());
  double rel = max_abs_of(r) / bnorm;
  int iters = 0;

  while (rel > tol && iters < max_iter) {
    const double beta = norm2(r);
    std::vector<std::vector<double>> v(restart + 1, std::vector<double>(n));
    std::vector<std::vector<double>> hm(restart + 1, std::vector<double>(restart, 0.0));
    std::vector<double> cs(restart), sn(restart), g(restart + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[0][i] = r[i] / beta;
    g[0] = beta;

    std::size_t k = 0;
    for (; k < restart && iters < max_iter; ++k) {
      ++iters;
      std::vector<double> w = apply(v[k]);
      for (std::size_t i = 0; i <= k; ++i) {
        double d = 0.0;
        for (std::size_t l = 0; l < n; ++l) d += w[l] * v[i][l];
        hm[i][k] = d;
        for (std::size_t l = 0; l < n; ++l) w[l] -= d * v[i][l];
      }
      const double wn = norm2(w);
      hm[k + 1][k] = wn;
      for (std::size_t i = 0; i < k; ++i) {
        const double t = cs[i] * hm[i][k] + sn[i] * hm[i + 1][k];
        hm[i + 1][k] = -sn[i] * hm[i][k] + cs[i] * hm[i + 1][k];
        hm[i][k] = t;
      }
      const double den = std::hypot(hm[k][k], hm[k + 1][k]);
      cs[k] = hm[k][k] / den;
      sn[k] = hm[k + 1][k] / den;
      hm[k][k] = den;
      hm[k + 1][k] = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      if (wn == 0.0 || std::abs(g[k + 1]) <= tol * bnorm) {
        ++k;
        break;
      }
      for (std::size_t l = 0; l < n; ++l) v[k + 1][l] = w[l] / wn;
    }

    std::vector<double> y(k);
    for (std::size_t i = k; i-- > 0;) {
      double s = g[i];
      for (std::size_t l = i + 1; l < k; ++l) s -= hm[i][l] * y[l];
      y[i] = s / hm[i][i];
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t l = 0; l < n; ++l) x[l] += y[i] * v[i][l];
    }
    r = residual(x);
    const double next = max_abs_of(r) / bnorm;
    // A restart cycle that makes no progress will not make any on the next.
    if (next >= rel && std::abs(g[k]) > tol * bnorm) {
      rel = next;
      break;
    }
    rel = next;
  }

  out.x = ScalarField(std::move(x));
  out.residual = rel;
  out.iterations = iters;
  if (rel > tol) throw NoConvergence(rel, iters);
  return out;
}

VectorField birkhoff_rott(const Contour& z, const ScalarField& u) { return BRKernelEval(z).birkhoff_rott(u); }

VectorField dt_birkhoff_rott(const Contour& z, const ScalarField& u, const VectorField& z_t,
                             const ScalarField& u_t) {
  return BRKernelEval(z).dt_birkhoff_rott(u, z_t, u_t);
}

ScalarField apply_T(const Contour& z, const ScalarField& u) { return BRKernelEval(z).apply_T(u); }

SolveResult solve_second_kind(const Contour& z, double a_rho, const ScalarField& b, double tol, int max_iter) {
  return solve_second_kind(BRKernelEval(z), a_rho, b, tol, max_iter);
}

}  // namespace ifdyn
