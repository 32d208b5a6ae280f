#pragma once

#include <complex>
#include <vector>

#include "ifdyn/types.hpp"

// Fourier-multiplier calculus on the periodic alpha-grid.
//
// Coefficients are those of the continuous expansion f(a) = sum_k c_k e^{ika}
// with c_k = (1/N) sum_j f_j e^{-ik a_j}, a_j = -pi + j h, so the node offset is
// already folded in. Only k = 0..N/2 are stored (real input). The Nyquist mode
// is dropped by odd multipliers (odd derivatives, Hilbert transform) and kept
// by even ones.
namespace ifdyn::spectral {

using Coefficients = std::vector<std::complex<double>>;

Coefficients forward(std::span<const double> f);
ScalarField inverse(const Coefficients& c, std::size_t n);

/// Multiplier (ik)^order.
ScalarField derivative(const ScalarField& f, int order = 1);
VectorField derivative(const VectorField& f, int order = 1);

/// Periodic Hilbert transform, multiplier -i sign(k). H(cos ka) = sin ka.
ScalarField hilbert(const ScalarField& f);

/// Lambda^s with multiplier |k|^s; s = 0 is the identity.
ScalarField lambda_power(const ScalarField& f, double s);

/// (sum_k (1+k^2)^s |c_k|^2 * 2pi)^{1/2}; equals the L2(-pi,pi) norm at s = 0.
double sobolev_norm(const ScalarField& f, double s);

/// Mean-free antiderivative of the mean-free part of f (the mean of f is ignored).
ScalarField antiderivative(const ScalarField& f);

/// Evaluate the trigonometric interpolant of the samples at an arbitrary alpha.
double interpolate(const Coefficients& c, std::size_t n, double alpha);
double interpolate(const ScalarField& f, double alpha);

/// Zero every mode whose magnitude is below threshold * (largest magnitude).
ScalarField krasny_filter(const ScalarField& f, double threshold);

/// Complex coefficient c_k of mode k (0 <= k <= N/2).
std::complex<double> mode(const ScalarField& f, int k);

}  // namespace ifdyn::spectral
