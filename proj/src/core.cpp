#include "circkde/core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace circkde {

double normalize_radians(double x) {
  if (!std::isfinite(x)) {
    throw DomainError("angle must be finite");
  }
  if (x >= -kPi && x < kPi) {
    return x;
  }
  double r = std::fmod(x + kPi, kTwoPi);
  if (r < 0.0) {
    r += kTwoPi;
  }
  double out = r - kPi;
  // r + 2pi can round up to exactly 2pi.
  if (out >= kPi) {
    out = -kPi;
  }
  return out;
}

Angle normalize_angle(double x) { return Angle(x); }

double circular_distance(Angle a, Angle b) {
  const double d = std::abs(a.radians() - b.radians());
  return std::min(d, kTwoPi - d);
}

AngleSample::AngleSample(std::vector<Angle> angles) : angles_(std::move(angles)) {
  if (angles_.empty()) {
    throw DomainError("sample must contain at least one angle");
  }
}

AngleSample AngleSample::from_radians(std::span<const double> radians) {
  std::vector<Angle> angles;
  angles.reserve(radians.size());
  for (double x : radians) {
    angles.emplace_back(x);
  }
  return AngleSample(std::move(angles));
}

std::vector<double> AngleSample::radians() const {
  std::vector<double> out;
  out.reserve(angles_.size());
  for (const Angle& a : angles_) {
    out.push_back(a.radians());
  }
  return out;
}

EvalGrid::EvalGrid(std::vector<Angle> points, bool uniform)
    : points_(std::move(points)), uniform_(uniform) {}

EvalGrid::EvalGrid(std::vector<Angle> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw DomainError("grid must contain at least one point");
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1] < points_[i])) {
      throw DomainError("grid points must be strictly increasing");
    }
  }
  uniform_ = points_.size() >= 2 && uniform(points_.size()).points_ == points_;
}

EvalGrid EvalGrid::uniform(std::size_t m) {
  if (m < 2) {
    throw DomainError("uniform grid needs at least 2 points");
  }
  std::vector<Angle> points;
  points.reserve(m);
  const double step = kTwoPi / static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) {
    points.emplace_back(-kPi + step * static_cast<double>(k));
  }
  return EvalGrid(std::move(points), true);
}

DensityEstimate::DensityEstimate(EvalGrid grid, std::vector<double> values, EstimateMeta meta)
    : grid_(std::move(grid)), values_(std::move(values)), meta_(std::move(meta)) {
  if (values_.size() != grid_.size()) {
    throw DomainError("density values must match grid size");
  }
}

double periodic_trapezoid(const EvalGrid& grid, std::span<const double> values) {
  if (values.size() != grid.size()) {
    throw DomainError("values must match grid size");
  }
  const std::size_t m = grid.size();
  if (grid.is_uniform()) {
    double sum = 0.0;
    for (double v : values) {
      sum += v;
    }
    return sum * (kTwoPi / static_cast<double>(m));
  }
  double total = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t next = (k + 1) % m;
    double width = grid[next].radians() - grid[k].radians();
    if (next == 0) {
      width += kTwoPi;
    }
    total += 0.5 * width * (values[k] + values[next]);
  }
  return total;
}

double integrate(const DensityEstimate& estimate) {
  return periodic_trapezoid(estimate.grid(), estimate.values());
}

}  // namespace circkde
