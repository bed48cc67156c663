#pragma once

#include <cstddef>
#include <vector>

#include "circkde/core.hpp"
#include "circkde/kernels.hpp"
#include "circkde/special.hpp"

namespace circkde {

/// Empirical Caratheodory function F_N(z) at one disk point.
struct CaratheodoryEval {
  DiskPoint z;
  Complex value;
  /// Re(value) / (2 pi): the density estimate at z.theta() with radius z.r().
  double density_part;
};

/// Empirical trigonometric moments c_1..c_{n*}, c_n = (1/N) sum_j e^{-i n theta_j}.
struct TrigMomentVector {
  std::vector<Complex> moments;

  std::size_t n_star() const { return moments.size(); }
  /// 1-based access, c(n) == moments[n - 1].
  const Complex& c(std::size_t n) const { return moments.at(n - 1); }
};

/// (1/N) sum_j k(theta - theta_j) at every grid point.
DensityEstimate kernel_estimate(const AngleSample& sample, const KernelSpec& spec,
                                const EvalGrid& grid);

/// Wrapped-Cauchy kernel estimate. Requires 0 <= rho <= 1 - 1e-8.
DensityEstimate wc_estimate(const AngleSample& sample, double rho, const EvalGrid& grid);

/// F_N(z) = (1/N) sum_j (e^{i theta_j} + z) / (e^{i theta_j} - z).
/// Requires z.r() <= 1 - 1e-8.
CaratheodoryEval caratheodory_estimate(const AngleSample& sample, const DiskPoint& z);

/// Re F_N(r e^{i theta}) / (2 pi) at every grid point, via complex arithmetic.
///
/// Computed independently of wc_estimate; the two agree to rounding error
/// for every r, which is the kernel/Caratheodory equivalence.
DensityEstimate opuc_density_estimate(const AngleSample& sample, double r, const EvalGrid& grid);

/// Requires n_star >= 1.
TrigMomentVector trig_moments(const AngleSample& sample, std::size_t n_star);

/// Truncated orthogonal series
///   1/(2 pi) + 1/(pi N) sum_j sum_{n=1}^{n*} cos n (theta - theta_j),
/// evaluated through the empirical moments. n_star == 0 gives the uniform
/// density. Negative values are kept and flagged in the metadata.
DensityEstimate series_estimate(const AngleSample& sample, std::size_t n_star,
                                const EvalGrid& grid);

/// Abel-weighted series (1/2pi)(1 + 2 sum_{n<=n*} r^n Re(c_n e^{i n theta})),
/// the truncation of Re F_N(r e^{i theta}) / (2 pi). Its distance to
/// opuc_density_estimate is at most r^{n*+1} / (pi (1 - r)).
DensityEstimate weighted_series_estimate(const AngleSample& sample, double r, std::size_t n_star,
                                         const EvalGrid& grid);

}  // namespace circkde
