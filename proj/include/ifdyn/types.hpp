#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifdyn {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
/// (a,b)^perp = (-b,a); a positive point vortex rotates counterclockwise.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

enum class GeometryKind {
  ClosedContour,        // z(a + 2pi) = z(a)
  HorizontallyPeriodic  // z(a + 2pi) = z(a) + (2pi, 0)
};

const char* to_string(GeometryKind kind);

// Real samples on the periodic alpha-grid.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(std::size_t n, double fill = 0.0) : values_(n, fill) {}
  explicit ScalarField(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> span() { return values_; }
  std::span<const double> span() const { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }
  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const ScalarField&, const ScalarField&) = default;

 private:
  std::vector<double> values_;
};

// 2-vector samples stored component-wise.
struct VectorField {
  ScalarField x;
  ScalarField y;

  VectorField() = default;
  explicit VectorField(std::size_t n) : x(n), y(n) {}
  VectorField(ScalarField xs, ScalarField ys) : x(std::move(xs)), y(std::move(ys)) {}

  std::size_t size() const { return x.size(); }
  Vec2 at(std::size_t i) const { return {x[i], y[i]}; }
  void set(std::size_t i, Vec2 v) {
    x[i] = v.x;
    y[i] = v.y;
  }

  friend bool operator==(const VectorField&, const VectorField&) = default;
};

double mean(const ScalarField& f);
/// Shift f by a constant so that mean(f) == target, then absorb the remaining
/// rounding into the last sample. Exact whenever target * N is representable
/// and the last partial sum lies within a factor 2 of it (always for target 0).
void set_mean(ScalarField& f, double target);
double max_abs(const ScalarField& f);
double max_norm(const VectorField& f);
bool all_finite(const ScalarField& f);
bool all_finite(const VectorField& f);

// Error taxonomy.

class CurveDegenerate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(double residual, int iterations);
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

class ResolutionExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StepRejected : public std::runtime_error {
 public:
  explicit StepRejected(double suggested_dt);
  double suggested_dt() const { return suggested_dt_; }

 private:
  double suggested_dt_;
};

class UnknownScenario : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SelfIntersecting : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ifdyn
