#include "circkde/estimators.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace circkde {
namespace {

void require_radius(double r) {
  if (!std::isfinite(r) || r < 0.0 || r > kMaxRadius) {
    throw DomainError("radius must lie in [0, 1 - 1e-8]");
  }
}

bool any_negative(const std::vector<double>& values) {
  for (double v : values) {
    if (v < 0.0) {
      return true;
    }
  }
  return false;
}

// (1/2pi)(1 + 2 sum_n weight_n Re(c_n e^{i n theta})) at every grid point.
std::vector<double> evaluate_moment_series(const TrigMomentVector& moments,
                                           const std::vector<double>& weights,
                                           const EvalGrid& grid) {
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double theta = grid[k].radians();
    double acc = 0.0;
    for (std::size_t n = 1; n <= moments.n_star(); ++n) {
      const Complex& c = moments.c(n);
      const double phase = static_cast<double>(n) * theta;
      acc += weights[n - 1] * (c.real() * std::cos(phase) - c.imag() * std::sin(phase));
    }
    values[k] = (1.0 + 2.0 * acc) / kTwoPi;
  }
  return values;
}

}  // namespace

DensityEstimate kernel_estimate(const AngleSample& sample, const KernelSpec& spec,
                                const EvalGrid& grid) {
  const auto n = static_cast<double>(sample.size());
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double theta = grid[k].radians();
    double sum = 0.0;
    for (const Angle& a : sample.angles()) {
      sum += spec(theta - a.radians());
    }
    values[k] = sum / n;
  }
  EstimateMeta meta{std::string(to_string(spec.kind())), spec.concentration(), std::nullopt,
                    sample.size(), false};
  return DensityEstimate(grid, std::move(values), std::move(meta));
}

DensityEstimate wc_estimate(const AngleSample& sample, double rho, const EvalGrid& grid) {
  require_radius(rho);
  return kernel_estimate(sample, KernelSpec::wrapped_cauchy(rho), grid);
}

CaratheodoryEval caratheodory_estimate(const AngleSample& sample, const DiskPoint& z) {
  require_radius(z.r());
  Complex sum(0.0, 0.0);
  for (const Angle& a : sample.angles()) {
    sum += complex_poisson(z, a);
  }
  const Complex value = sum / static_cast<double>(sample.size());
  return {z, value, value.real() / kTwoPi};
}

DensityEstimate opuc_density_estimate(const AngleSample& sample, double r, const EvalGrid& grid) {
  require_radius(r);
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    values[k] = caratheodory_estimate(sample, DiskPoint(r, grid[k])).density_part;
  }
  EstimateMeta meta{"opuc", r, std::nullopt, sample.size(), false};
  return DensityEstimate(grid, std::move(values), std::move(meta));
}

TrigMomentVector trig_moments(const AngleSample& sample, std::size_t n_star) {
  if (n_star < 1) {
    throw DomainError("number of moments must be at least 1");
  }
  const auto count = static_cast<double>(sample.size());
  TrigMomentVector out;
  out.moments.reserve(n_star);
  for (std::size_t n = 1; n <= n_star; ++n) {
    double re = 0.0;
    double im = 0.0;
    for (const Angle& a : sample.angles()) {
      const double phase = static_cast<double>(n) * a.radians();
      re += std::cos(phase);
      im -= std::sin(phase);
    }
    out.moments.emplace_back(re / count, im / count);
  }
  return out;
}

DensityEstimate series_estimate(const AngleSample& sample, std::size_t n_star,
                                const EvalGrid& grid) {
  std::vector<double> values;
  if (n_star == 0) {
    values.assign(grid.size(), 1.0 / kTwoPi);
  } else {
    values = evaluate_moment_series(trig_moments(sample, n_star),
                                    std::vector<double>(n_star, 1.0), grid);
  }
  const bool negative = any_negative(values);
  EstimateMeta meta{"series", std::nullopt, n_star, sample.size(), negative};
  return DensityEstimate(grid, std::move(values), std::move(meta));
}

DensityEstimate weighted_series_estimate(const AngleSample& sample, double r, std::size_t n_star,
                                         const EvalGrid& grid) {
  require_radius(r);
  std::vector<double> values;
  if (n_star == 0) {
    values.assign(grid.size(), 1.0 / kTwoPi);
  } else {
    std::vector<double> weights(n_star);
    double w = 1.0;
    for (std::size_t n = 0; n < n_star; ++n) {
      w *= r;
      weights[n] = w;
    }
    values = evaluate_moment_series(trig_moments(sample, n_star), weights, grid);
  }
  const bool negative = any_negative(values);
  EstimateMeta meta{"weighted-series", r, n_star, sample.size(), negative};
  return DensityEstimate(grid, std::move(values), std::move(meta));
}

}  // namespace circkde
