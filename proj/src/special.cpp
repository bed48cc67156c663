#include "circkde/special.hpp"

#include <cmath>

namespace circkde {

double bessel_i0(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError("bessel_i0 requires a finite, non-negative argument");
  }
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 1000; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
    if (term < 1e-17 * sum) {
      break;
    }
  }
  return sum;
}

Complex complex_divide(Complex a, Complex b) {
  const double denom = b.real() * b.real() + b.imag() * b.imag();
  return {(a.real() * b.real() + a.imag() * b.imag()) / denom,
          (a.imag() * b.real() - a.real() * b.imag()) / denom};
}

DiskPoint::DiskPoint(double r, Angle theta) : r_(r), theta_(theta) {
  if (!std::isfinite(r) || r < 0.0 || r >= 1.0) {
    throw DomainError("disk point radius must lie in [0, 1)");
  }
}

Complex complex_poisson(const DiskPoint& z, Angle omega) {
  // (w + z) / (w - z) == (1 + u) / (1 - u) with u = z * conj(w) = r e^{i delta}.
  // 1 - u is formed as (1 - r) + r (1 - e^{i delta}), and
  // 1 - e^{i delta} = 2 sin^2(delta / 2) - i sin(delta), so nothing cancels
  // when u approaches the boundary point 1.
  const double r = z.r();
  const double delta = z.theta().radians() - omega.radians();
  const double half_sin = std::sin(0.5 * delta);
  const double sin_d = std::sin(delta);
  const double cos_d = std::cos(delta);

  const Complex numerator(1.0 + r * cos_d, r * sin_d);
  const Complex denominator((1.0 - r) + r * (2.0 * half_sin * half_sin), -r * sin_d);
  return complex_divide(numerator, denominator);
}

}  // namespace circkde
