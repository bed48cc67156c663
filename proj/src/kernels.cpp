#include "circkde/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "circkde/special.hpp"

namespace circkde {
namespace {

void require_rho(double rho) {
  if (!std::isfinite(rho) || rho < 0.0 || rho > kMaxRadius) {
    throw DomainError("wrapped Cauchy concentration must lie in [0, 1 - 1e-8]");
  }
}

void require_nu(double nu) {
  if (!std::isfinite(nu) || nu < 0.0 || nu > kMaxVonMisesConcentration) {
    throw DomainError("von Mises concentration must lie in [0, 100]");
  }
}

// 1 + rho^2 - 2 rho cos(delta), written as (1 - rho)^2 + 4 rho sin^2(delta/2)
// so that it keeps full relative precision as rho -> 1 and delta -> 0.
double poisson_denominator(double delta, double rho) {
  const double s = std::sin(0.5 * delta);
  const double gap = 1.0 - rho;
  return gap * gap + 4.0 * rho * s * s;
}

}  // namespace

WrappedCauchyParams::WrappedCauchyParams(Angle mu_, double rho_) : mu(mu_), rho(rho_) {
  require_rho(rho);
}

VonMisesParams::VonMisesParams(Angle mu_, double nu_) : mu(mu_), nu(nu_) { require_nu(nu); }

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::WrappedCauchy:
      return "wc";
    case KernelKind::VonMises:
      return "vm";
  }
  return "?";
}

double max_concentration(KernelKind kind) {
  return kind == KernelKind::WrappedCauchy ? kMaxRadius : kMaxVonMisesConcentration;
}

KernelSpec::KernelSpec(KernelKind kind, double concentration)
    : kind_(kind), concentration_(concentration) {
  if (kind_ == KernelKind::WrappedCauchy) {
    require_rho(concentration_);
  } else {
    require_nu(concentration_);
    vm_scale_ = 1.0 / (kTwoPi * bessel_i0(concentration_));
  }
}

double KernelSpec::operator()(double delta) const {
  if (kind_ == KernelKind::WrappedCauchy) {
    return wrapped_cauchy_kernel(delta, concentration_);
  }
  return std::exp(concentration_ * std::cos(delta)) * vm_scale_;
}

double wrapped_cauchy_kernel(double delta, double rho) {
  return (1.0 - rho) * (1.0 + rho) / (kTwoPi * poisson_denominator(delta, rho));
}

double poisson_kernel_at(double delta, double r) {
  return (1.0 - r) * (1.0 + r) / poisson_denominator(delta, r);
}

double wrapped_cauchy_pdf(Angle theta, const WrappedCauchyParams& params) {
  return wrapped_cauchy_kernel(theta.radians() - params.mu.radians(), params.rho);
}

double von_mises_pdf(Angle theta, const VonMisesParams& params) {
  const double delta = theta.radians() - params.mu.radians();
  return std::exp(params.nu * std::cos(delta)) / (kTwoPi * bessel_i0(params.nu));
}

double poisson_kernel(double r, Angle theta, Angle phi) {
  if (!std::isfinite(r) || r < 0.0 || r >= 1.0) {
    throw DomainError("Poisson kernel radius must lie in [0, 1)");
  }
  return poisson_kernel_at(theta.radians() - phi.radians(), r);
}

ApproximateIdentityReport check_approximate_identity(
    const std::function<KernelSpec(int)>& family, double delta, std::span<const int> indices) {
  if (indices.empty()) {
    throw DomainError("approximate identity check needs at least one index");
  }
  if (!(delta > 0.0 && delta < kPi)) {
    throw DomainError("delta must lie in (0, pi)");
  }
  for (std::size_t i = 1; i < indices.size(); ++i) {
    if (indices[i] <= indices[i - 1]) {
      throw DomainError("indices must be strictly increasing");
    }
  }

  constexpr std::size_t kStartPoints = 4096;
  constexpr std::size_t kMaxPoints = std::size_t{1} << 22;
  constexpr double kConvergence = 1e-13;

  ApproximateIdentityReport report{delta, {}, true, true, false};
  for (int n : indices) {
    const KernelSpec kernel = family(n);
    const auto big_k = [&](double theta) { return kTwoPi * kernel(theta); };

    ApproximateIdentityEntry entry{n, std::numeric_limits<double>::infinity(), 0.0,
                                   std::max(big_k(delta), big_k(-delta)), kStartPoints};
    const auto visit = [&](double theta) {
      const double v = big_k(theta);
      entry.min_value = std::min(entry.min_value, v);
      if (std::abs(theta) >= delta) {
        entry.tail_max = std::max(entry.tail_max, v);
      }
      return v;
    };

    double sum = 0.0;
    std::size_t m = kStartPoints;
    for (std::size_t k = 0; k < m; ++k) {
      sum += visit(-kPi + kTwoPi * static_cast<double>(k) / static_cast<double>(m));
    }
    double estimate = sum / static_cast<double>(m);
    while (m < kMaxPoints) {
      // Refine with the midpoints of the current panels.
      for (std::size_t k = 0; k < m; ++k) {
        sum += visit(-kPi + kTwoPi * (static_cast<double>(k) + 0.5) / static_cast<double>(m));
      }
      m *= 2;
      const double refined = sum / static_cast<double>(m);
      const bool converged = std::abs(refined - estimate) <= kConvergence;
      estimate = refined;
      if (converged) {
        break;
      }
    }
    entry.normalization = estimate;
    entry.quadrature_points = m;

    report.nonnegative = report.nonnegative && entry.min_value >= 0.0;
    report.normalized = report.normalized && std::abs(entry.normalization - 1.0) <= 1e-8;
    report.entries.push_back(entry);
  }

  const auto& e = report.entries;
  bool decreasing = e.size() >= 2;
  for (std::size_t i = 1; i < e.size(); ++i) {
    decreasing = decreasing && e[i].tail_max < e[i - 1].tail_max;
  }
  report.concentrating = decreasing && e.back().tail_max < 0.01 * e.front().tail_max;
  return report;
}

}  // namespace circkde
