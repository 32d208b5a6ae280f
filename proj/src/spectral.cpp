#include "ifdyn/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "ifdyn/grid.hpp"

namespace ifdyn::spectral {

namespace {

// FFTW planning is not thread-safe; execution through the new-array interface is.
class PlanCache {
 public:
  struct Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
  };

  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  Plans get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<double> real(n);
    std::vector<std::complex<double>> coeffs(n / 2 + 1);
    auto* cplx = reinterpret_cast<fftw_complex*>(coeffs.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    Plans p;
    p.r2c = fftw_plan_dft_r2c_1d(static_cast<int>(n), real.data(), cplx, flags);
    p.c2r = fftw_plan_dft_c2r_1d(static_cast<int>(n), cplx, real.data(), flags);
    plans_.emplace(n, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.r2c);
      fftw_destroy_plan(p.c2r);
    }
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, Plans> plans_;
};

// e^{ik pi} = (-1)^k folds the node offset a_0 = -pi into the coefficients.
double node_sign(std::size_t k) { return (k % 2 == 0) ? 1.0 : -1.0; }

template <class Multiplier>
ScalarField apply_multiplier(const ScalarField& f, Multiplier&& m) {
  const std::size_t n = f.size();
  Coefficients c = forward(f.span());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= m(static_cast<int>(k), k == n / 2);
  return inverse(c, n);
}

}  // namespace

Coefficients forward(std::span<const double> f) {
  const std::size_t n = f.size();
  if (!Grid::valid_size(n)) throw std::invalid_argument("spectral: grid size must be a power of two >= 16");
  auto plans = PlanCache::instance().get(n);
  std::vector<double> in(f.begin(), f.end());
  Coefficients out(n / 2 + 1);
  fftw_execute_dft_r2c(plans.r2c, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= inv_n * node_sign(k);
  return out;
}

ScalarField inverse(const Coefficients& c, std::size_t n) {
  if (c.size() != n / 2 + 1) throw std::invalid_argument("spectral: coefficient count mismatch");
  auto plans = PlanCache::instance().get(n);
  Coefficients work(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) work[k] = c[k] * node_sign(k);
  // The k = 0 and Nyquist modes of a real signal are real.
  work[0] = work[0].real();
  work[n / 2] = work[n / 2].real();
  ScalarField out(n);
  fftw_execute_dft_c2r(plans.c2r, reinterpret_cast<fftw_complex*>(work.data()), out.data());
  return out;
}

ScalarField derivative(const ScalarField& f, int order) {
  if (order < 0) throw std::invalid_argument("spectral::derivative: negative order");
  if (order == 0) return f;
  return apply_multiplier(f, [order](int k, bool nyquist) -> std::complex<double> {
    if (nyquist && order % 2 == 1) return 0.0;
    return std::pow(std::complex<double>(0.0, static_cast<double>(k)), order);
  });
}

VectorField derivative(const VectorField& f, int order) {
  return {derivative(f.x, order), derivative(f.y, order)};
}

ScalarField hilbert(const ScalarField& f) {
  return apply_multiplier(f, [](int k, bool nyquist) -> std::complex<double> {
    if (k == 0 || nyquist) return 0.0;
    return {0.0, -1.0};
  });
}

ScalarField lambda_power(const ScalarField& f, double s) {
  if (s < 0.0) throw std::invalid_argument("spectral::lambda_power: s must be >= 0");
  if (s == 0.0) return f;
  return apply_multiplier(f, [s](int k, bool) -> std::complex<double> {
    return k == 0 ? 0.0 : std::pow(static_cast<double>(k), s);
  });
}

double sobolev_norm(const ScalarField& f, double s) {
  const std::size_t n = f.size();
  const Coefficients c = forward(f.span());
  double sum = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double w = std::pow(1.0 + kk * kk, s);
    // Modes 1..N/2-1 stand for the +k and -k pair.
    const double mult = (k == 0 || k == n / 2) ? 1.0 : 2.0;
    sum += mult * w * std::norm(c[k]);
  }
  return std::sqrt(kTwoPi * sum);
}

ScalarField antiderivative(const ScalarField& f) {
  return apply_multiplier(f, [](int k, bool nyquist) -> std::complex<double> {
    if (k == 0 || nyquist) return 0.0;
    return std::complex<double>(0.0, -1.0 / static_cast<double>(k));
  });
}

double interpolate(const Coefficients& c, std::size_t n, double alpha) {
  double value = c[0].real();
  for (std::size_t k = 1; k < n / 2; ++k) {
    value += 2.0 * (c[k] * std::polar(1.0, static_cast<double>(k) * alpha)).real();
  }
  value += c[n / 2].real() * std::cos(static_cast<double>(n / 2) * alpha);
  return value;
}

double interpolate(const ScalarField& f, double alpha) {
  return interpolate(forward(f.span()), f.size(), alpha);
}

ScalarField krasny_filter(const ScalarField& f, double threshold) {
  Coefficients c = forward(f.span());
  double largest = 0.0;
  for (const auto& ck : c) largest = std::max(largest, std::abs(ck));
  if (largest == 0.0) return f;
  const double floor = threshold * largest;
  for (auto& ck : c) {
    if (std::abs(ck) < floor) ck = 0.0;
  }
  return inverse(c, f.size());
}

std::complex<double> mode(const ScalarField& f, int k) {
  const Coefficients c = forward(f.span());
  if (k < 0 || static_cast<std::size_t>(k) >= c.size()) throw std::out_of_range("spectral::mode");
  return c[static_cast<std::size_t>(k)];
}

}  // namespace ifdyn::spectral
