#include <algorithm>
#include <bit>
#include <sstream>

#include "ifdyn/grid.hpp"
#include "ifdyn/types.hpp"

namespace ifdyn {

const char* to_string(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::ClosedContour: return "closed";
    case GeometryKind::HorizontallyPeriodic: return "periodic";
  }
  return "unknown";
}

double mean(const ScalarField& f) {
  double sum = 0.0;
  for (double v : f) sum += v;
  return f.size() == 0 ? 0.0 : sum / static_cast<double>(f.size());
}

void set_mean(ScalarField& f, double target) {
  if (f.size() == 0) return;
  for (int pass = 0; pass < 4; ++pass) {
    const double shift = target - mean(f);
    if (shift == 0.0) return;
    for (double& v : f) v += shift;
  }
  // mean() sums left to right, so the last sample sees the partial sum of the others.
  double partial = 0.0;
  for (std::size_t j = 0; j + 1 < f.size(); ++j) partial += f[j];
  f[f.size() - 1] = target * static_cast<double>(f.size()) - partial;
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

double max_norm(const VectorField& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, norm(f.at(i)));
  return m;
}

bool all_finite(const ScalarField& f) {
  return std::all_of(f.begin(), f.end(), [](double v) { return std::isfinite(v); });
}

bool all_finite(const VectorField& f) { return all_finite(f.x) && all_finite(f.y); }

namespace {
std::string no_convergence_message(double residual, int iterations) {
  std::ostringstream os;
  os << "second-kind solve did not converge: residual " << residual << " after " << iterations
     << " iterations";
  return os.str();
}
}  // namespace

NoConvergence::NoConvergence(double residual, int iterations)
    : std::runtime_error(no_convergence_message(residual, iterations)),
      residual_(residual),
      iterations_(iterations) {}

StepRejected::StepRejected(double suggested_dt)
    : std::runtime_error("step rejected by stability control"), suggested_dt_(suggested_dt) {}

Grid::Grid(std::size_t n) : n_(n) {
  if (!valid_size(n)) throw ConfigError("grid size N must be a power of two and at least 16");
}

bool Grid::valid_size(std::size_t n) { return n >= 16 && std::has_single_bit(n); }

ScalarField Grid::nodes() const {
  ScalarField a(n_);
  for (std::size_t j = 0; j < n_; ++j) a[j] = node(static_cast<std::ptrdiff_t>(j));
  return a;
}

}  // namespace ifdyn
