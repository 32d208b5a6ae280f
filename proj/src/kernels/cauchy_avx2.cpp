// AVX2/FMA variants of the Cauchy-kernel sums. Four targets k per lane group;
// rows j are independent. The periodic kernel avoids per-pair transcendental
// calls through the angle-difference identities
//   sin((x_j - x_k)/2) = s_j c_k - c_j s_k,   sinh((y_j - y_k)/2) = sh_j ch_k - ch_j sh_k
// on tables built once per contour.
#include <immintrin.h>

#include "cauchy_impl.hpp"

namespace ifdyn::kernels::detail {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

struct Row {
  __m256d x, y;
  __m256d s, c, sh, ch;  // periodic tables at node j
};

// K(Delta_jk) for four k starting at m in parity class q.
template <GeometryKind Kind>
inline void kernel4(const NodeTable& t, const Row& r, std::size_t q, std::size_t m, __m256d& kr, __m256d& ki) {
  const __m256d half = _mm256_set1_pd(0.5);
  if constexpr (Kind == GeometryKind::ClosedContour) {
    const __m256d dx = _mm256_sub_pd(r.x, _mm256_loadu_pd(t.x[q].data() + m));
    const __m256d dy = _mm256_sub_pd(r.y, _mm256_loadu_pd(t.y[q].data() + m));
    const __m256d r2 = _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy));
    const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), r2);
    kr = _mm256_mul_pd(dx, inv);
    ki = _mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), dy), inv);
  } else {
    const __m256d sk = _mm256_loadu_pd(t.sin_hx[q].data() + m);
    const __m256d ck = _mm256_loadu_pd(t.cos_hx[q].data() + m);
    const __m256d shk = _mm256_loadu_pd(t.sinh_hy[q].data() + m);
    const __m256d chk = _mm256_loadu_pd(t.cosh_hy[q].data() + m);
    const __m256d sdx = _mm256_fmsub_pd(r.s, ck, _mm256_mul_pd(r.c, sk));
    const __m256d cdx = _mm256_fmadd_pd(r.c, ck, _mm256_mul_pd(r.s, sk));
    const __m256d shy = _mm256_fmsub_pd(r.sh, chk, _mm256_mul_pd(r.ch, shk));
    const __m256d chy = _mm256_fnmadd_pd(r.sh, shk, _mm256_mul_pd(r.ch, chk));
    const __m256d qd = _mm256_fmadd_pd(shy, shy, _mm256_mul_pd(sdx, sdx));
    const __m256d inv = _mm256_div_pd(half, qd);
    kr = _mm256_mul_pd(_mm256_mul_pd(sdx, cdx), inv);
    ki = _mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(shy, chy)), inv);
  }
}

template <GeometryKind Kind>
inline Row load_row(const NodeTable& t, std::size_t pj, std::size_t idx) {
  Row r{};
  r.x = _mm256_set1_pd(t.x[pj][idx]);
  r.y = _mm256_set1_pd(t.y[pj][idx]);
  if constexpr (Kind == GeometryKind::HorizontallyPeriodic) {
    r.s = _mm256_set1_pd(t.sin_hx[pj][idx]);
    r.c = _mm256_set1_pd(t.cos_hx[pj][idx]);
    r.sh = _mm256_set1_pd(t.sinh_hy[pj][idx]);
    r.ch = _mm256_set1_pd(t.cosh_hy[pj][idx]);
  }
  return r;
}

template <GeometryKind Kind>
void sum_impl(const SplitArgs& a) {
  const NodeTable& t = *a.nodes;
  const std::size_t n = t.n;
  const std::size_t half = n / 2;  // multiple of 4 for N >= 16, N a power of two
  const auto rows = static_cast<std::ptrdiff_t>(n);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);

#pragma omp parallel for schedule(static) if (n >= kParallelRows)
  for (std::ptrdiff_t jj = 0; jj < rows; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const std::size_t pj = j & 1U;
    const std::size_t idx = j >> 1U;
    const Row r = load_row<Kind>(t, pj, idx);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();

    for (std::size_t m = 0; m < half; m += 4) {
      __m256d kr, ki;
      kernel4<Kind>(t, r, 1 - pj, m, kr, ki);
      const __m256d u = _mm256_loadu_pd(a.u[1 - pj] + m);
      acc_re = _mm256_fmadd_pd(kr, u, acc_re);
      acc_im = _mm256_fmadd_pd(ki, u, acc_im);
    }

    if (a.offsets == Offsets::AllButSelf) {
      const __m256d self = _mm256_set1_pd(static_cast<double>(idx));
      for (std::size_t m = 0; m < half; m += 4) {
        __m256d kr, ki;
        kernel4<Kind>(t, r, pj, m, kr, ki);
        if (idx >= m && idx < m + 4) {
          const __m256d pos = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(m)), lane);
          const __m256d diag = _mm256_cmp_pd(pos, self, _CMP_EQ_OQ);
          kr = _mm256_blendv_pd(kr, _mm256_setzero_pd(), diag);
          ki = _mm256_blendv_pd(ki, _mm256_setzero_pd(), diag);
        }
        const __m256d u = _mm256_loadu_pd(a.u[pj] + m);
        acc_re = _mm256_fmadd_pd(kr, u, acc_re);
        acc_im = _mm256_fmadd_pd(ki, u, acc_im);
      }
    }
    a.re[j] = hsum(acc_re);
    a.im[j] = hsum(acc_im);
  }
}

template <GeometryKind Kind>
void sum_dt_impl(const SplitArgs& a) {
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
    const Row r = load_row<Kind>(t, pj, idx);
    const __m256d xtj = _mm256_set1_pd(a.xt[pj][idx]);
    const __m256d ytj = _mm256_set1_pd(a.yt[pj][idx]);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();

    for (std::size_t m = 0; m < half; m += 4) {
      __m256d kr, ki;
      kernel4<Kind>(t, r, q, m, kr, ki);
      // K' = -K^2 (closed) or -(1/4 + K^2) (periodic).
      __m256d kpr = _mm256_fmsub_pd(ki, ki, _mm256_mul_pd(kr, kr));
      if constexpr (Kind == GeometryKind::HorizontallyPeriodic) {
        kpr = _mm256_sub_pd(kpr, _mm256_set1_pd(0.25));
      }
      const __m256d kpi = _mm256_mul_pd(_mm256_set1_pd(-2.0), _mm256_mul_pd(kr, ki));
      const __m256d dtr = _mm256_sub_pd(xtj, _mm256_loadu_pd(a.xt[q] + m));
      const __m256d dti = _mm256_sub_pd(ytj, _mm256_loadu_pd(a.yt[q] + m));
      const __m256d str = _mm256_fmsub_pd(kpr, dtr, _mm256_mul_pd(kpi, dti));
      const __m256d sti = _mm256_fmadd_pd(kpr, dti, _mm256_mul_pd(kpi, dtr));
      const __m256d u = _mm256_loadu_pd(a.u[q] + m);
      const __m256d ut = _mm256_loadu_pd(a.ut[q] + m);
      acc_re = _mm256_fmadd_pd(kr, ut, _mm256_fmadd_pd(str, u, acc_re));
      acc_im = _mm256_fmadd_pd(ki, ut, _mm256_fmadd_pd(sti, u, acc_im));
    }
    a.re[j] = hsum(acc_re);
    a.im[j] = hsum(acc_im);
  }
}

}  // namespace

void cauchy_sum_avx2(const SplitArgs& a) {
  if (a.nodes->kind == GeometryKind::ClosedContour) {
    sum_impl<GeometryKind::ClosedContour>(a);
  } else {
    sum_impl<GeometryKind::HorizontallyPeriodic>(a);
  }
}

void cauchy_sum_dt_avx2(const SplitArgs& a) {
  if (a.nodes->kind == GeometryKind::ClosedContour) {
    sum_dt_impl<GeometryKind::ClosedContour>(a);
  } else {
    sum_dt_impl<GeometryKind::HorizontallyPeriodic>(a);
  }
}

}  // namespace ifdyn::kernels::detail
