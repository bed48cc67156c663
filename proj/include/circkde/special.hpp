#pragma once

#include <complex>

#include "circkde/core.hpp"

namespace circkde {

using Complex = std::complex<double>;

/// Modified Bessel function of the first kind, order zero.
///
/// Summed from the ascending series sum_k (x/2)^{2k} / (k!)^2, stopping once
/// the next term falls below 1e-17 of the running sum. There is no asymptotic
/// branch; the series is accurate to ~1e-14 relative for 0 <= x <= 100, which
/// covers every concentration the library admits.
double bessel_i0(double x);

/// Quotient a / b by the textbook formula, without Smith-style scaling.
/// Only used where |b| is bounded away from 0 and infinity.
Complex complex_divide(Complex a, Complex b);

/// A point r * exp(i * theta) of the open unit disk.
class DiskPoint {
public:
  /// Requires 0 <= r < 1.
  DiskPoint(double r, Angle theta);

  double r() const { return r_; }
  Angle theta() const { return theta_; }
  Complex value() const { return std::polar(r_, theta_.radians()); }

private:
  double r_;
  Angle theta_;
};

/// Complex Poisson kernel (w + z) / (w - z) with w = exp(i * omega).
/// Its real part is the real Poisson kernel P_r(theta, omega) > 0.
Complex complex_poisson(const DiskPoint& z, Angle omega);

}  // namespace circkde
