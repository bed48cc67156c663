#include "circkde/selection.hpp"

#include <algorithm>
#include <cmath>

#include "circkde/estimators.hpp"

namespace circkde {
namespace {

constexpr std::size_t kLscvQuadraturePoints = 4096;

std::vector<double> sorted_candidates(const AngleSample& sample, KernelKind kind,
                                      std::span<const double> candidates) {
  if (sample.size() < 2) {
    throw DomainError("cross-validation needs at least two observations");
  }
  if (candidates.empty()) {
    throw DomainError("cross-validation needs at least one candidate");
  }
  std::vector<double> out(candidates.begin(), candidates.end());
  for (double c : out) {
    static_cast<void>(KernelSpec(kind, c));  // range check
  }
  std::sort(out.begin(), out.end());
  return out;
}

// f_{-i}(theta_i) for every i: kernel sums with the diagonal removed.
std::vector<double> leave_one_out_densities(const AngleSample& sample, const KernelSpec& kernel) {
  const std::size_t n = sample.size();
  std::vector<double> sums(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double ti = sample[i].radians();
    for (std::size_t j = i + 1; j < n; ++j) {
      const double k = kernel(ti - sample[j].radians());
      sums[i] += k;
      sums[j] += k;
    }
  }
  const auto denom = static_cast<double>(n - 1);
  for (double& s : sums) {
    s /= denom;
  }
  return sums;
}

CvResult pick(std::vector<double> candidates, std::vector<double> scores, CvCriterion criterion) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    const bool better = criterion == CvCriterion::LooLogLik ? scores[i] > scores[best]
                                                            : scores[i] < scores[best];
    if (better) {
      best = i;
    }
  }
  const double best_value = candidates[best];
  return {std::move(candidates), std::move(scores), best_value, best, criterion};
}

}  // namespace

std::string_view to_string(CvCriterion criterion) {
  return criterion == CvCriterion::LooLogLik ? "loo-loglik" : "lscv";
}

CvResult loo_loglik_cv(const AngleSample& sample, KernelKind kind,
                       std::span<const double> candidates) {
  std::vector<double> grid = sorted_candidates(sample, kind, candidates);
  std::vector<double> scores;
  scores.reserve(grid.size());
  for (double c : grid) {
    double score = 0.0;
    for (double f : leave_one_out_densities(sample, KernelSpec(kind, c))) {
      score += std::log(f);
    }
    scores.push_back(score);
  }
  return pick(std::move(grid), std::move(scores), CvCriterion::LooLogLik);
}

CvResult lscv(const AngleSample& sample, KernelKind kind, std::span<const double> candidates) {
  std::vector<double> grid = sorted_candidates(sample, kind, candidates);
  const EvalGrid quadrature = EvalGrid::uniform(kLscvQuadraturePoints);
  const auto n = static_cast<double>(sample.size());
  std::vector<double> scores;
  scores.reserve(grid.size());
  for (double c : grid) {
    const KernelSpec kernel(kind, c);
    const DensityEstimate fit = kernel_estimate(sample, kernel, quadrature);
    std::vector<double> squared(fit.values().begin(), fit.values().end());
    for (double& v : squared) {
      v *= v;
    }
    double loo = 0.0;
    for (double f : leave_one_out_densities(sample, kernel)) {
      loo += f;
    }
    scores.push_back(periodic_trapezoid(quadrature, squared) - 2.0 * loo / n);
  }
  return pick(std::move(grid), std::move(scores), CvCriterion::Lscv);
}

CvResult cross_validate(const AngleSample& sample, KernelKind kind,
                        std::span<const double> candidates, CvCriterion criterion) {
  return criterion == CvCriterion::LooLogLik ? loo_loglik_cv(sample, kind, candidates)
                                             : lscv(sample, kind, candidates);
}

std::size_t select_n_star(double r, double tail_tol) {
  if (!std::isfinite(r) || r < 0.0 || r > kMaxRadius) {
    throw DomainError("radius must lie in [0, 1 - 1e-8]");
  }
  if (!(tail_tol > 0.0) || !std::isfinite(tail_tol)) {
    throw DomainError("tail tolerance must be positive");
  }
  if (r == 0.0) {
    return 0;
  }
  const double scale = kPi * (1.0 - r);
  const auto bound = [&](std::size_t n) {
    return std::exp(static_cast<double>(n + 1) * std::log(r)) / scale;
  };
  // Start near the root of r^{n+1} = tol * scale, then settle exactly.
  const double guess = std::log(tail_tol * scale) / std::log(r) - 1.0;
  std::size_t n = guess > 0.0 ? static_cast<std::size_t>(guess) : 0;
  while (bound(n) > tail_tol) {
    ++n;
  }
  while (n > 0 && bound(n - 1) <= tail_tol) {
    --n;
  }
  return n;
}

}  // namespace circkde
