#pragma once

#include "ifdyn/kernels.hpp"

namespace ifdyn::kernels::detail {

// Field arguments split by parity like NodeTable.
struct SplitArgs {
  const NodeTable* nodes = nullptr;
  std::array<const double*, 2> u{};
  std::array<const double*, 2> ut{};
  std::array<const double*, 2> xt{};
  std::array<const double*, 2> yt{};
  double* re = nullptr;  // indexed by j
  double* im = nullptr;
  Offsets offsets = Offsets::Alternating;
};

void cauchy_sum_scalar(const SplitArgs& args);
void cauchy_sum_dt_scalar(const SplitArgs& args);

#ifdef IFDYN_HAVE_AVX2
void cauchy_sum_avx2(const SplitArgs& args);
void cauchy_sum_dt_avx2(const SplitArgs& args);
#endif

// Row loops parallelize above this size; below it threading overhead dominates.
inline constexpr std::size_t kParallelRows = 256;

}  // namespace ifdyn::kernels::detail
