#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "circkde/core.hpp"

namespace circkde {

/// Upper bound on the von Mises concentration; bessel_i0 is only
/// certified up to here.
inline constexpr double kMaxVonMisesConcentration = 100.0;

struct WrappedCauchyParams {
  /// Requires 0 <= rho <= kMaxRadius.
  WrappedCauchyParams(Angle mu, double rho);

  Angle mu;
  double rho;
};

struct VonMisesParams {
  /// Requires 0 <= nu <= kMaxVonMisesConcentration.
  VonMisesParams(Angle mu, double nu);

  Angle mu;
  double nu;
};

enum class KernelKind { WrappedCauchy, VonMises };

std::string_view to_string(KernelKind kind);

/// Legal concentration range for a kernel kind, as a closed interval.
double max_concentration(KernelKind kind);

/// A circular kernel density centred at zero, k(delta).
class KernelSpec {
public:
  KernelSpec(KernelKind kind, double concentration);

  static KernelSpec wrapped_cauchy(double rho) { return {KernelKind::WrappedCauchy, rho}; }
  static KernelSpec von_mises(double nu) { return {KernelKind::VonMises, nu}; }

  KernelKind kind() const { return kind_; }
  double concentration() const { return concentration_; }

  /// Kernel density at angular offset delta (any real, 2*pi-periodic).
  double operator()(double delta) const;

private:
  KernelKind kind_;
  double concentration_;
  // Cached 1 / (2 pi I0(nu)) for the von Mises kind.
  double vm_scale_ = 0.0;
};

/// (1/2pi) (1 - rho^2) / (1 + rho^2 - 2 rho cos(theta - mu)).
double wrapped_cauchy_pdf(Angle theta, const WrappedCauchyParams& params);

/// exp(nu cos(theta - mu)) / (2 pi I0(nu)).
double von_mises_pdf(Angle theta, const VonMisesParams& params);

/// Real Poisson kernel (1 - r^2) / (1 + r^2 - 2 r cos(theta - phi)).
/// Throws DomainError unless 0 <= r < 1.
double poisson_kernel(double r, Angle theta, Angle phi);

// Offset-based forms used by the estimators' inner loops.
double wrapped_cauchy_kernel(double delta, double rho);
double poisson_kernel_at(double delta, double r);

/// Per-index diagnostics of a kernel family K_n = 2 pi * k_n.
struct ApproximateIdentityEntry {
  int index;
  double min_value;      // min of K_n over the quadrature grid
  double normalization;  // (1/2pi) * integral of K_n
  double tail_max;       // max of K_n over |theta| >= delta
  std::size_t quadrature_points;
};

struct ApproximateIdentityReport {
  double delta;
  std::vector<ApproximateIdentityEntry> entries;
  bool nonnegative = false;      // condition A
  bool normalized = false;       // condition B, |normalization - 1| <= 1e-8
  bool concentrating = false;    // finite proxy for condition C
};

/// Checks whether a kernel family behaves as an approximate identity.
///
/// Condition C (tail max -> 0) is a limit; it is reported as satisfied when
/// the tail maxima strictly decrease along `indices` and the last one is
/// below 1% of the first. Normalization starts from a 4096-point periodic
/// trapezoid and doubles the node count until successive estimates agree
/// to 1e-13 (at most 2^22 nodes), so sharply peaked members are resolved.
/// `indices` must be non-empty and strictly increasing; delta in (0, pi).
ApproximateIdentityReport check_approximate_identity(
    const std::function<KernelSpec(int)>& family, double delta, std::span<const int> indices);

}  // namespace circkde
