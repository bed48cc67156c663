#pragma once

#include <compare>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace circkde {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Largest admissible wrapped-Cauchy concentration / disk radius.
inline constexpr double kMaxRadius = 1.0 - 1e-8;

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Reduces any finite real to the half-open interval [-pi, pi).
/// Throws DomainError on NaN or infinity.
double normalize_radians(double x);

/// An angle in radians, always held in [-pi, pi).
class Angle {
public:
  constexpr Angle() = default;
  explicit Angle(double radians) : value_(normalize_radians(radians)) {}

  double radians() const { return value_; }

  friend auto operator<=>(const Angle&, const Angle&) = default;

private:
  double value_ = 0.0;
};

Angle normalize_angle(double x);

/// Shortest arc length between two angles, in [0, pi].
double circular_distance(Angle a, Angle b);

/// Observed angles theta_1..theta_N; never empty.
class AngleSample {
public:
  explicit AngleSample(std::vector<Angle> angles);

  static AngleSample from_radians(std::span<const double> radians);

  std::size_t size() const { return angles_.size(); }
  std::span<const Angle> angles() const { return angles_; }
  const Angle& operator[](std::size_t i) const { return angles_[i]; }

  /// Angles as plain radians, in sample order.
  std::vector<double> radians() const;

private:
  std::vector<Angle> angles_;
};

/// Strictly increasing evaluation points inside [-pi, pi).
class EvalGrid {
public:
  explicit EvalGrid(std::vector<Angle> points);

  /// M points -pi + 2*pi*k/M, k = 0..M-1. Requires M >= 2.
  static EvalGrid uniform(std::size_t m);

  std::size_t size() const { return points_.size(); }
  std::span<const Angle> points() const { return points_; }
  const Angle& operator[](std::size_t i) const { return points_[i]; }

  /// True when the grid was built by uniform() (or matches it exactly).
  bool is_uniform() const { return uniform_; }

private:
  EvalGrid(std::vector<Angle> points, bool uniform);

  std::vector<Angle> points_;
  bool uniform_ = false;
};

/// How a DensityEstimate was produced.
struct EstimateMeta {
  std::string estimator;
  std::optional<double> concentration;
  std::optional<std::size_t> n_star;
  std::size_t sample_size = 0;
  bool has_negative = false;
};

/// Density values (per radian) on an evaluation grid.
///
/// Kernel estimators produce strictly positive values. Truncated series
/// estimators may dip below zero; such values are kept as computed and
/// flagged through meta().has_negative.
class DensityEstimate {
public:
  DensityEstimate(EvalGrid grid, std::vector<double> values, EstimateMeta meta);

  const EvalGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  const EstimateMeta& meta() const { return meta_; }

private:
  EvalGrid grid_;
  std::vector<double> values_;
  EstimateMeta meta_;
};

/// Composite trapezoid of a 2*pi-periodic function sampled on `grid`,
/// including the wrap-around panel from the last point back to the first.
double periodic_trapezoid(const EvalGrid& grid, std::span<const double> values);

/// Same as above, for an estimate's own grid.
double integrate(const DensityEstimate& estimate);

}  // namespace circkde
