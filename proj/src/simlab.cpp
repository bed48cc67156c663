#include "circkde/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "circkde/estimators.hpp"
#include "circkde/special.hpp"

namespace circkde {
namespace {

constexpr std::size_t kSmoothingNodes = 8192;
constexpr std::size_t kSmoothingEvalPoints = 1024;
constexpr std::size_t kMinIseGrid = 256;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double draw_wrapped_cauchy(const WrappedCauchyParams& p, Rng& rng) {
  if (p.rho == 0.0) {
    return -kPi + kTwoPi * rng.uniform();
  }
  std::cauchy_distribution<double> cauchy(p.mu.radians(), -std::log(p.rho));
  return cauchy(rng.engine());
}

double draw_von_mises(const VonMisesParams& p, Rng& rng) {
  const double kappa = p.nu;
  if (kappa == 0.0) {
    return -kPi + kTwoPi * rng.uniform();
  }
  // Best & Fisher (1979). s = (tau - sqrt(2 tau)) / (2 kappa), rearranged so
  // that it stays accurate for small kappa.
  const double root = std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double tau = 1.0 + root;
  const double s = 2.0 * kappa * tau / ((root + 1.0) * (tau + std::sqrt(2.0 * tau)));
  const double r = (1.0 + s * s) / (2.0 * s);
  for (;;) {
    const double u1 = rng.uniform();
    double u2 = rng.uniform();
    const double u3 = rng.uniform();
    const double z = std::cos(kPi * u1);
    const double f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    const bool accept = c * (2.0 - c) - u2 > 0.0 ||
                        (u2 > 0.0 && std::log(c / u2) + 1.0 - c >= 0.0);
    if (accept) {
      const double offset = std::acos(std::clamp(f, -1.0, 1.0));
      return p.mu.radians() + (u3 > 0.5 ? offset : -offset);
    }
  }
}

double draw_wrapped_normal(const WrappedNormalParams& p, Rng& rng) {
  std::normal_distribution<double> normal(p.mu.radians(), p.sigma);
  return normal(rng.engine());
}

template <class Params>
AngleSample sample_law(const Params& params, std::size_t n, std::uint64_t seed) {
  if (n < 1) {
    throw DomainError("sample size must be at least 1");
  }
  Rng rng(seed);
  const CircularLaw law = params;
  std::vector<Angle> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(draw(law, rng));
  }
  return AngleSample(std::move(out));
}

std::vector<double> default_candidates(EstimatorKind kind) {
  std::vector<double> out;
  if (kind == EstimatorKind::VonMises) {
    for (double nu : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 100.0}) {
      out.push_back(nu);
    }
  } else {
    for (int i = 1; i <= 19; ++i) {
      out.push_back(0.05 * i);
    }
  }
  return out;
}

}  // namespace

WrappedNormalParams::WrappedNormalParams(Angle mu_, double sigma_) : mu(mu_), sigma(sigma_) {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw DomainError("wrapped normal sigma must be positive");
  }
}

double wrapped_normal_pdf(Angle theta, const WrappedNormalParams& params) {
  const double delta = normalize_radians(theta.radians() - params.mu.radians());
  const double scale = 1.0 / (params.sigma * std::sqrt(kTwoPi));
  const double inv_two_var = 0.5 / (params.sigma * params.sigma);
  const auto image = [&](int k) {
    const double x = delta + kTwoPi * k;
    return scale * std::exp(-x * x * inv_two_var);
  };
  double sum = image(0);
  for (int k = 1; k < 100000; ++k) {
    const double plus = image(k);
    const double minus = image(-k);
    sum += plus + minus;
    if (plus < 1e-16 && minus < 1e-16) {
      break;
    }
  }
  return sum;
}

double law_pdf(const CircularLaw& law, double theta) {
  return std::visit(
      Overloaded{
          [&](const WrappedCauchyParams& p) { return wrapped_cauchy_pdf(Angle(theta), p); },
          [&](const VonMisesParams& p) { return von_mises_pdf(Angle(theta), p); },
          [&](const WrappedNormalParams& p) { return wrapped_normal_pdf(Angle(theta), p); },
      },
      law);
}

TrueDensity::TrueDensity(Kind kind, std::vector<MixtureComponent> components)
    : kind_(kind), components_(std::move(components)) {}

TrueDensity::TrueDensity(CircularLaw law) : kind_(Kind::Mixture) {
  kind_ = std::visit(Overloaded{
                         [](const WrappedCauchyParams&) { return Kind::WrappedCauchy; },
                         [](const VonMisesParams&) { return Kind::VonMises; },
                         [](const WrappedNormalParams&) { return Kind::WrappedNormal; },
                     },
                     law);
  components_.push_back({1.0, std::move(law)});
}

TrueDensity TrueDensity::mixture(std::vector<MixtureComponent> components) {
  if (components.empty()) {
    throw DomainError("mixture needs at least one component");
  }
  double total = 0.0;
  for (const auto& c : components) {
    if (!(c.weight > 0.0) || !std::isfinite(c.weight)) {
      throw DomainError("mixture weights must be positive");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("mixture weights must sum to 1");
  }
  return TrueDensity(Kind::Mixture, std::move(components));
}

double TrueDensity::pdf(double theta) const {
  double sum = 0.0;
  for (const auto& c : components_) {
    sum += c.weight * law_pdf(c.law, theta);
  }
  return sum;
}

std::vector<NamedTruth> builtin_truths() {
  std::vector<NamedTruth> out;
  out.push_back({"wc(0,0.5)", TrueDensity(WrappedCauchyParams(Angle(0.0), 0.5))});
  out.push_back({"vm(0,2)", TrueDensity(VonMisesParams(Angle(0.0), 2.0))});
  out.push_back({"wn(0,0.7)", TrueDensity(WrappedNormalParams(Angle(0.0), 0.7))});
  out.push_back({"mix(0.6 vm(-pi/2,4) + 0.4 wc(pi/2,0.6))",
                 TrueDensity::mixture({{0.6, VonMisesParams(Angle(-kPi / 2), 4.0)},
                                       {0.4, WrappedCauchyParams(Angle(kPi / 2), 0.6)}})});
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : engine_(derive_seed(seed, 0)) {}

double Rng::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

double draw(const CircularLaw& law, Rng& rng) {
  return std::visit(
      Overloaded{
          [&](const WrappedCauchyParams& p) { return draw_wrapped_cauchy(p, rng); },
          [&](const VonMisesParams& p) { return draw_von_mises(p, rng); },
          [&](const WrappedNormalParams& p) { return draw_wrapped_normal(p, rng); },
      },
      law);
}

AngleSample sample_wrapped_cauchy(const WrappedCauchyParams& params, std::size_t n,
                                  std::uint64_t seed) {
  return sample_law(params, n, seed);
}

AngleSample sample_von_mises(const VonMisesParams& params, std::size_t n, std::uint64_t seed) {
  return sample_law(params, n, seed);
}

AngleSample sample_wrapped_normal(const WrappedNormalParams& params, std::size_t n,
                                  std::uint64_t seed) {
  return sample_law(params, n, seed);
}

LabeledSample sample_mixture_labeled(const TrueDensity& density, std::size_t n,
                                     std::uint64_t seed) {
  if (n < 1) {
    throw DomainError("sample size must be at least 1");
  }
  const auto components = density.components();
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& c : components) {
    acc += c.weight;
    cumulative.push_back(acc);
  }

  Rng rng(seed);
  std::vector<Angle> angles;
  std::vector<std::size_t> labels;
  angles.reserve(n);
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t pick = 0;
    if (components.size() > 1) {
      const double u = rng.uniform() * acc;
      pick = static_cast<std::size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      pick = std::min(pick, components.size() - 1);
    }
    labels.push_back(pick);
    angles.emplace_back(draw(components[pick].law, rng));
  }
  return {AngleSample(std::move(angles)), std::move(labels)};
}

AngleSample sample_mixture(const TrueDensity& density, std::size_t n, std::uint64_t seed) {
  return sample_mixture_labeled(density, n, seed).sample;
}

double ise(const DensityEstimate& estimate, const TrueDensity& truth) {
  const EvalGrid& grid = estimate.grid();
  if (!grid.is_uniform() || grid.size() < kMinIseGrid) {
    throw DomainError("ISE needs a uniform grid with at least 256 points");
  }
  std::vector<double> squared(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double d = estimate.values()[k] - truth.pdf(grid[k]);
    squared[k] = d * d;
  }
  return periodic_trapezoid(grid, squared);
}

FitResult fit_estimator(const AngleSample& sample, const EstimatorConfig& config,
                        const EvalGrid& grid) {
  switch (config.kind) {
    case EstimatorKind::Series:
      return {series_estimate(sample, config.n_star, grid), std::nullopt};
    case EstimatorKind::WeightedSeries:
    case EstimatorKind::WrappedCauchy:
    case EstimatorKind::VonMises:
    case EstimatorKind::Opuc:
      break;
  }

  const KernelKind kernel =
      config.kind == EstimatorKind::VonMises ? KernelKind::VonMises : KernelKind::WrappedCauchy;
  std::optional<CvResult> cv;
  double concentration = 0.0;
  if (config.concentration) {
    concentration = *config.concentration;
  } else {
    const std::vector<double> candidates =
        config.candidates.empty() ? default_candidates(config.kind) : config.candidates;
    cv = cross_validate(sample, kernel, candidates, config.criterion);
    concentration = cv->best;
  }

  switch (config.kind) {
    case EstimatorKind::Opuc:
      return {opuc_density_estimate(sample, concentration, grid), std::move(cv)};
    case EstimatorKind::WeightedSeries:
      return {weighted_series_estimate(sample, concentration, config.n_star, grid),
              std::move(cv)};
    default:
      return {kernel_estimate(sample, KernelSpec(kernel, concentration), grid), std::move(cv)};
  }
}

MiseReport mise_experiment(const TrueDensity& truth, const EstimatorConfig& config,
                           std::size_t n, std::size_t reps, std::uint64_t seed) {
  if (reps < 2) {
    throw DomainError("MISE experiment needs at least two replications");
  }
  const EvalGrid grid = EvalGrid::uniform(config.grid_size);
  MiseReport report{0.0, 0.0, {}, {}};
  report.ise.reserve(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    const AngleSample sample = sample_mixture(truth, n, derive_seed(seed, i));
    const FitResult fit = fit_estimator(sample, config, grid);
    report.ise.push_back(ise(fit.estimate, truth));
    report.concentration.push_back(fit.estimate.meta().concentration.value_or(0.0));
  }
  const auto count = static_cast<double>(reps);
  report.mean = std::accumulate(report.ise.begin(), report.ise.end(), 0.0) / count;
  double ss = 0.0;
  for (double v : report.ise) {
    ss += (v - report.mean) * (v - report.mean);
  }
  report.std_error = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
  return report;
}

std::vector<double> poisson_smoothed(const TrueDensity& truth, double r, const EvalGrid& grid) {
  if (!std::isfinite(r) || r < 0.0 || r > kMaxRadius) {
    throw DomainError("radius must lie in [0, 1 - 1e-8]");
  }
  const double step = kTwoPi / static_cast<double>(kSmoothingNodes);
  std::vector<double> nodes(kSmoothingNodes);
  std::vector<double> truth_at(kSmoothingNodes);
  for (std::size_t l = 0; l < kSmoothingNodes; ++l) {
    nodes[l] = -kPi + step * static_cast<double>(l);
    truth_at[l] = truth.pdf(nodes[l]);
  }
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double theta = grid[k].radians();
    double sum = 0.0;
    for (std::size_t l = 0; l < kSmoothingNodes; ++l) {
      sum += truth_at[l] * wrapped_cauchy_kernel(theta - nodes[l], r);
    }
    out[k] = sum * step;
  }
  return out;
}

double poisson_smoothing_error(const TrueDensity& truth, double r) {
  const EvalGrid grid = EvalGrid::uniform(kSmoothingEvalPoints);
  const std::vector<double> smoothed = poisson_smoothed(truth, r, grid);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    worst = std::max(worst, std::abs(smoothed[k] - truth.pdf(grid[k])));
  }
  return worst;
}

}  // namespace circkde
