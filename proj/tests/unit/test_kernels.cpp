// The SIMD variants must agree with the scalar reference to rounding on every
// geometry, offset set and size the quadrature uses.
#include <doctest.h>

#include <complex>
#include <random>

#include "ifdyn/kernels.hpp"
#include "support.hpp"

using namespace ifdyn;
using kernels::Isa;
using kernels::Offsets;

namespace {

ScalarField random_field(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  ScalarField f(n);
  for (double& v : f) v = d(rng);
  return f;
}

double rel_diff(const ScalarField& a, const ScalarField& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    num = std::max(num, std::abs(a[j] - b[j]));
    den = std::max(den, std::abs(b[j]));
  }
  return den == 0.0 ? num : num / den;
}

// Independent O(N^2) evaluation with std::complex.
kernels::ComplexSums naive(const Contour& z, const ScalarField& u, Offsets off) {
  const std::size_t n = z.size();
  const VectorField c = z.coordinates();
  kernels::ComplexSums s{ScalarField(n), ScalarField(n)};
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      if (off == Offsets::Alternating && ((j + k) % 2 == 0)) continue;
      const std::complex<double> d(c.x[j] - c.x[k], c.y[j] - c.y[k]);
      const std::complex<double> kern = z.periodic() ? 0.5 / std::tan(0.5 * d) : 1.0 / d;
      acc += kern * u[k];
    }
    s.re[j] = acc.real();
    s.im[j] = acc.imag();
  }
  return s;
}

}  // namespace

TEST_CASE("scalar reference matches a direct complex evaluation") {
  for (const Contour& z : {test::wavy_circle(32, 0.2, 3), test::graph_curve(32, 0.4, 2)}) {
    const auto u = random_field(32, 7);
    const auto t = kernels::NodeTable::build(z.kind(), z.coordinates());
    for (Offsets off : {Offsets::Alternating, Offsets::AllButSelf}) {
      const auto ref = naive(z, u, off);
      const auto got = kernels::cauchy_sum(t, u.span(), off, Isa::Scalar);
      CHECK(rel_diff(got.re, ref.re) < 1e-13);
      CHECK(rel_diff(got.im, ref.im) < 1e-13);
    }
  }
}

TEST_CASE("SIMD variants agree with the scalar reference") {
  if (!kernels::available(Isa::Avx2)) {
    MESSAGE("AVX2 not available on this machine; equivalence not exercised");
    return;
  }
  for (std::size_t n : {16, 64, 512}) {
    const std::vector<Contour> curves{test::wavy_circle(n, 0.3, 5), test::graph_curve(n, 0.5, 3)};
    for (const Contour& z : curves) {
      const auto t = kernels::NodeTable::build(z.kind(), z.coordinates());
      const auto u = random_field(n, n);
      const auto ut = random_field(n, n + 1);
      const auto xt = random_field(n, n + 2);
      const auto yt = random_field(n, n + 3);
      for (Offsets off : {Offsets::Alternating, Offsets::AllButSelf}) {
        const auto a = kernels::cauchy_sum(t, u.span(), off, Isa::Scalar);
        const auto b = kernels::cauchy_sum(t, u.span(), off, Isa::Avx2);
        CHECK(rel_diff(b.re, a.re) < 1e-12);
        CHECK(rel_diff(b.im, a.im) < 1e-12);
      }
      const auto a = kernels::cauchy_sum_dt(t, u.span(), xt.span(), yt.span(), ut.span(), Isa::Scalar);
      const auto b = kernels::cauchy_sum_dt(t, u.span(), xt.span(), yt.span(), ut.span(), Isa::Avx2);
      CHECK(rel_diff(b.re, a.re) < 1e-12);
      CHECK(rel_diff(b.im, a.im) < 1e-12);
    }
  }
}

TEST_CASE("ISA selection") {
  CHECK(kernels::available(Isa::Scalar));
  const Isa before = kernels::active_isa();
  kernels::set_active_isa(Isa::Scalar);
  CHECK(kernels::active_isa() == Isa::Scalar);
  kernels::set_active_isa(before);
  CHECK(std::string(kernels::to_string(Isa::Avx2)) == "avx2");
}

TEST_CASE("size mismatch is rejected") {
  const auto z = test::circle(16);
  const auto t = kernels::NodeTable::build(z.kind(), z.coordinates());
  const ScalarField u(32);
  CHECK_THROWS_AS(kernels::cauchy_sum(t, u.span(), Offsets::Alternating), std::invalid_argument);
}
