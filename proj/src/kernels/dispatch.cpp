#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string_view>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cauchy_impl.hpp"

namespace ifdyn::kernels {

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(IFDYN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa best_available() { return available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("INTERFACE_DYN_ISA")) {
    const std::string_view v(env);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && available(Isa::Avx2)) return Isa::Avx2;
  }
  return best_available();
}

std::atomic<Isa>& selection() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

void split(std::span<const double> f, std::array<std::vector<double>, 2>& out) {
  const std::size_t half = f.size() / 2;
  for (auto& v : out) v.resize(half);
  for (std::size_t i = 0; i < f.size(); ++i) out[i & 1U][i >> 1U] = f[i];
}

struct SplitField {
  std::array<std::vector<double>, 2> parts;
  explicit SplitField(std::span<const double> f) { split(f, parts); }
  std::array<const double*, 2> ptrs() const { return {parts[0].data(), parts[1].data()}; }
};

void check_size(const NodeTable& nodes, std::span<const double> f) {
  if (f.size() != nodes.n) throw std::invalid_argument("kernels: field size does not match the node table");
}

}  // namespace

Isa active_isa() { return selection().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!available(isa)) throw std::invalid_argument(std::string("kernels: ISA not available: ") + to_string(isa));
  selection().store(isa, std::memory_order_relaxed);
}

void set_thread_limit(int threads) {
#ifdef _OPENMP
  static const int default_threads = omp_get_max_threads();
  omp_set_num_threads(threads > 0 ? threads : default_threads);
#else
  (void)threads;
#endif
}

int apply_thread_limit_from_env() {
  const char* env = std::getenv("INTERFACE_DYN_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0) throw std::invalid_argument("INTERFACE_DYN_THREADS must be a non-negative integer");
  set_thread_limit(static_cast<int>(v));
  return static_cast<int>(v);
}

NodeTable NodeTable::build(GeometryKind kind, const VectorField& coordinates) {
  NodeTable t;
  t.kind = kind;
  t.n = coordinates.size();
  split(coordinates.x.span(), t.x);
  split(coordinates.y.span(), t.y);
  if (kind == GeometryKind::HorizontallyPeriodic) {
    for (std::size_t p = 0; p < 2; ++p) {
      const std::size_t half = t.x[p].size();
      t.sin_hx[p].resize(half);
      t.cos_hx[p].resize(half);
      t.sinh_hy[p].resize(half);
      t.cosh_hy[p].resize(half);
      for (std::size_t m = 0; m < half; ++m) {
        t.sin_hx[p][m] = std::sin(0.5 * t.x[p][m]);
        t.cos_hx[p][m] = std::cos(0.5 * t.x[p][m]);
        t.sinh_hy[p][m] = std::sinh(0.5 * t.y[p][m]);
        t.cosh_hy[p][m] = std::cosh(0.5 * t.y[p][m]);
      }
    }
  }
  return t;
}

ComplexSums cauchy_sum(const NodeTable& nodes, std::span<const double> u, Offsets offsets, Isa isa) {
  check_size(nodes, u);
  const SplitField su(u);
  ComplexSums out{ScalarField(nodes.n), ScalarField(nodes.n)};
  detail::SplitArgs args;
  args.nodes = &nodes;
  args.u = su.ptrs();
  args.re = out.re.data();
  args.im = out.im.data();
  args.offsets = offsets;
  switch (isa) {
    case Isa::Avx2:
#ifdef IFDYN_HAVE_AVX2
      if (available(Isa::Avx2)) {
        detail::cauchy_sum_avx2(args);
        break;
      }
#endif
      [[fallthrough]];
    case Isa::Scalar: detail::cauchy_sum_scalar(args); break;
  }
  return out;
}

ComplexSums cauchy_sum_dt(const NodeTable& nodes, std::span<const double> u, std::span<const double> xt,
                          std::span<const double> yt, std::span<const double> ut, Isa isa) {
  check_size(nodes, u);
  check_size(nodes, xt);
  check_size(nodes, yt);
  check_size(nodes, ut);
  const SplitField su(u), sxt(xt), syt(yt), sut(ut);
  ComplexSums out{ScalarField(nodes.n), ScalarField(nodes.n)};
  detail::SplitArgs args;
  args.nodes = &nodes;
  args.u = su.ptrs();
  args.xt = sxt.ptrs();
  args.yt = syt.ptrs();
  args.ut = sut.ptrs();
  args.re = out.re.data();
  args.im = out.im.data();
  switch (isa) {
    case Isa::Avx2:
#ifdef IFDYN_HAVE_AVX2
      if (available(Isa::Avx2)) {
        detail::cauchy_sum_dt_avx2(args);
        break;
      }
#endif
      [[fallthrough]];
    case Isa::Scalar: detail::cauchy_sum_dt_scalar(args); break;
  }
  return out;
}

}  // namespace ifdyn::kernels
