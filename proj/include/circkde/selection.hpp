#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "circkde/core.hpp"
#include "circkde/kernels.hpp"

namespace circkde {

enum class CvCriterion { LooLogLik, Lscv };

std::string_view to_string(CvCriterion criterion);

/// Outcome of a grid-search cross-validation.
///
/// Candidates are stored in ascending order with one score each. `best` is
/// the first (i.e. least concentrated) candidate attaining the optimum, so
/// exact ties favour the smoother estimate.
struct CvResult {
  std::vector<double> candidates;
  std::vector<double> scores;
  double best;
  std::size_t best_index;
  CvCriterion criterion;
};

/// Leave-one-out log-likelihood: score(c) = sum_i log f_{-i}(theta_i; c), maximised.
/// Requires N >= 2 and a non-empty candidate list within the kind's range.
CvResult loo_loglik_cv(const AngleSample& sample, KernelKind kind,
                       std::span<const double> candidates);

/// Least-squares CV: score(c) = int f^2 - (2/N) sum_i f_{-i}(theta_i; c), minimised.
/// The integral uses a 4096-point periodic trapezoid.
CvResult lscv(const AngleSample& sample, KernelKind kind, std::span<const double> candidates);

CvResult cross_validate(const AngleSample& sample, KernelKind kind,
                        std::span<const double> candidates, CvCriterion criterion);

/// Smallest n* >= 0 with r^{n*+1} / (pi (1 - r)) <= tail_tol; 0 when r == 0.
/// Requires 0 <= r <= 1 - 1e-8 and tail_tol > 0.
std::size_t select_n_star(double r, double tail_tol);

}  // namespace circkde
