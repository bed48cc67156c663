#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "circkde/core.hpp"
#include "circkde/kernels.hpp"
#include "circkde/selection.hpp"

namespace circkde {

struct WrappedNormalParams {
  /// Requires sigma > 0.
  WrappedNormalParams(Angle mu, double sigma);

  Angle mu;
  double sigma;
};

/// Density of a wrapped N(mu, sigma^2), summing images until they drop below 1e-16.
double wrapped_normal_pdf(Angle theta, const WrappedNormalParams& params);

using CircularLaw = std::variant<WrappedCauchyParams, VonMisesParams, WrappedNormalParams>;

double law_pdf(const CircularLaw& law, double theta);

struct MixtureComponent {
  double weight;
  CircularLaw law;
};

/// A known circular density used as ground truth in simulations.
class TrueDensity {
public:
  enum class Kind { WrappedCauchy, VonMises, WrappedNormal, Mixture };

  explicit TrueDensity(CircularLaw law);

  /// Weights must be positive and sum to 1 within 1e-12.
  static TrueDensity mixture(std::vector<MixtureComponent> components);

  Kind kind() const { return kind_; }
  std::span<const MixtureComponent> components() const { return components_; }

  double pdf(Angle theta) const { return pdf(theta.radians()); }
  double pdf(double theta) const;

private:
  TrueDensity(Kind kind, std::vector<MixtureComponent> components);

  Kind kind_;
  std::vector<MixtureComponent> components_;
};

/// The fixed set of truths used by the smoothing and MISE experiments.
struct NamedTruth {
  std::string name;
  TrueDensity density;
};
std::vector<NamedTruth> builtin_truths();

/// Per-stream generator. mt19937_64 seeded with a splitmix64-scrambled seed;
/// variates come from the standard <random> distributions.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  double uniform();  // [0, 1)
  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

/// splitmix64 finaliser applied to (master, index); used to give each
/// replication its own independent stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

double draw(const CircularLaw& law, Rng& rng);

/// Cauchy(mu, -ln rho) draws, wrapped onto the circle. rho == 0 is uniform.
AngleSample sample_wrapped_cauchy(const WrappedCauchyParams& params, std::size_t n,
                                  std::uint64_t seed);
/// Best-Fisher rejection sampler.
AngleSample sample_von_mises(const VonMisesParams& params, std::size_t n, std::uint64_t seed);
AngleSample sample_wrapped_normal(const WrappedNormalParams& params, std::size_t n,
                                  std::uint64_t seed);

struct LabeledSample {
  AngleSample sample;
  std::vector<std::size_t> component;  // mixture component of each draw
};

/// Picks a component by weight, then draws from it; one stream per call.
LabeledSample sample_mixture_labeled(const TrueDensity& density, std::size_t n,
                                     std::uint64_t seed);
AngleSample sample_mixture(const TrueDensity& density, std::size_t n, std::uint64_t seed);

/// Integrated squared error on the estimate's grid (uniform, M >= 256).
double ise(const DensityEstimate& estimate, const TrueDensity& truth);

enum class EstimatorKind { WrappedCauchy, VonMises, Opuc, Series, WeightedSeries };

/// What to fit in each replication. Without a fixed concentration the
/// kernel estimators pick one from `candidates` by cross-validation.
struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::WrappedCauchy;
  std::optional<double> concentration;
  std::vector<double> candidates;
  CvCriterion criterion = CvCriterion::LooLogLik;
  std::size_t n_star = 0;
  std::size_t grid_size = 512;
};

struct FitResult {
  DensityEstimate estimate;
  std::optional<CvResult> cv;
};

FitResult fit_estimator(const AngleSample& sample, const EstimatorConfig& config,
                        const EvalGrid& grid);

struct MiseReport {
  double mean;
  double std_error;
  std::vector<double> ise;
  std::vector<double> concentration;  // value used per replication (if any)
};

/// Requires reps >= 2. Replication i uses derive_seed(seed, i).
MiseReport mise_experiment(const TrueDensity& truth, const EstimatorConfig& config,
                           std::size_t n, std::size_t reps, std::uint64_t seed);

/// f*(theta) = int f(eta) f_WC(theta; eta, r) d eta on `grid`, by an
/// 8192-node periodic trapezoid in eta.
std::vector<double> poisson_smoothed(const TrueDensity& truth, double r, const EvalGrid& grid);

/// max |f* - f| over a 1024-point uniform grid.
double poisson_smoothing_error(const TrueDensity& truth, double r);

}  // namespace circkde
