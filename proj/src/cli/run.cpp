#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "circkde/cli.hpp"
#include "circkde/estimators.hpp"
#include "circkde/selection.hpp"
#include "circkde/simlab.hpp"

namespace circkde::cli {
namespace {

const std::vector<double>& default_wc_candidates() {
  static const std::vector<double> grid = [] {
    std::vector<double> g;
    for (int i = 1; i <= 19; ++i) {
      g.push_back(0.05 * i);
    }
    return g;
  }();
  return grid;
}

const std::vector<double>& default_vm_candidates() {
  static const std::vector<double> grid{0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 100.0};
  return grid;
}

KernelKind kernel_for(const std::string& estimator) {
  return estimator == "vm" ? KernelKind::VonMises : KernelKind::WrappedCauchy;
}

std::vector<double> candidates_for(const RunConfig& config) {
  if (!config.candidates.empty()) {
    return config.candidates;
  }
  return kernel_for(config.estimator) == KernelKind::VonMises ? default_vm_candidates()
                                                              : default_wc_candidates();
}

AngleSample load_sample(const RunConfig& config) {
  if (config.input) {
    return ingest(*config.input, config.unit);
  }
  if (config.truth) {
    if (config.n == 0) {
      throw ConfigError("--truth needs --n with a positive sample size");
    }
    return sample_mixture(parse_truth(*config.truth), config.n, config.seed);
  }
  throw ConfigError("either --input or --truth/--n is required");
}

std::string render_kv(const std::vector<std::pair<std::string, nlohmann::json>>& rows, bool json) {
  if (json) {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [key, value] : rows) {
      doc[key] = value;
    }
    return doc.dump() + "\n";
  }
  std::string out;
  for (const auto& [key, value] : rows) {
    out += key;
    out += ',';
    if (value.is_number_float()) {
      out += format_double(value.get<double>());
    } else if (value.is_string()) {
      out += value.get<std::string>();
    } else {
      out += value.dump();
    }
    out += '\n';
  }
  return out;
}

double resolve_concentration(const RunConfig& config, const AngleSample& sample) {
  if (config.concentration) {
    return *config.concentration;
  }
  return cross_validate(sample, kernel_for(config.estimator), candidates_for(config),
                        config.criterion)
      .best;
}

std::string run_density(const RunConfig& config, const std::string& estimator) {
  const AngleSample sample = load_sample(config);
  const EvalGrid grid = EvalGrid::uniform(config.grid);

  auto estimate = [&]() -> DensityEstimate {
    if (estimator == "series") {
      if (!config.concentration && !config.n_star) {
        throw ConfigError("--nstar auto needs a numeric --concentration radius");
      }
      if (!config.concentration) {
        return series_estimate(sample, *config.n_star, grid);
      }
      const double r = *config.concentration;
      const std::size_t n_star = config.n_star ? *config.n_star : select_n_star(r, config.tail_tol);
      return weighted_series_estimate(sample, r, n_star, grid);
    }
    const double c = resolve_concentration(config, sample);
    if (estimator == "opuc") {
      return opuc_density_estimate(sample, c, grid);
    }
    return kernel_estimate(sample, KernelSpec(kernel_for(estimator), c), grid);
  }();
  return config.json ? format_json(estimate) : format_csv(estimate);
}

std::string run_cv(const RunConfig& config) {
  const AngleSample sample = load_sample(config);
  const CvResult cv = cross_validate(sample, kernel_for(config.estimator), candidates_for(config),
                                     config.criterion);
  if (config.json) {
    nlohmann::json doc;
    doc["criterion"] = std::string(to_string(cv.criterion));
    doc["kernel"] = std::string(to_string(kernel_for(config.estimator)));
    doc["n"] = sample.size();
    doc["candidates"] = cv.candidates;
    doc["scores"] = cv.scores;
    doc["best"] = cv.best;
    return doc.dump() + "\n";
  }
  std::string out = "candidate,score\n";
  for (std::size_t i = 0; i < cv.candidates.size(); ++i) {
    out += format_double(cv.candidates[i]) + "," + format_double(cv.scores[i]) + "\n";
  }
  out += "# criterion=" + std::string(to_string(cv.criterion)) +
         " best=" + format_double(cv.best) + "\n";
  return out;
}

std::string run_equivalence(const RunConfig& config) {
  const AngleSample sample = load_sample(config);
  const EvalGrid grid = EvalGrid::uniform(config.grid);
  const double r = resolve_concentration(config, sample);
  const DensityEstimate kernel = wc_estimate(sample, r, grid);
  const DensityEstimate disk = opuc_density_estimate(sample, r, grid);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    worst = std::max(worst, std::abs(kernel.values()[k] - disk.values()[k]));
  }
  return render_kv({{"rho", r},
                    {"n", sample.size()},
                    {"m", grid.size()},
                    {"max_abs_difference", worst}},
                   config.json);
}

std::string run_simulate(const RunConfig& config) {
  if (!config.truth || config.n == 0) {
    throw ConfigError("simulate needs --truth and a positive --n");
  }
  const TrueDensity truth = parse_truth(*config.truth);
  if (config.reps == 0) {
    const AngleSample sample = sample_mixture(truth, config.n, config.seed);
    const double scale = config.unit == AngleUnit::Degrees ? 180.0 / kPi : 1.0;
    std::string out = "# truth=" + *config.truth + " n=" + std::to_string(config.n) +
                      " seed=" + std::to_string(config.seed) + "\n";
    for (const Angle& a : sample.angles()) {
      out += format_double(a.radians() * scale) + "\n";
    }
    return out;
  }

  EstimatorConfig est;
  if (config.estimator == "vm") {
    est.kind = EstimatorKind::VonMises;
  } else if (config.estimator == "opuc") {
    est.kind = EstimatorKind::Opuc;
  } else if (config.estimator == "series") {
    if (!config.n_star) {
      throw ConfigError("simulate with --estimator series needs a numeric --nstar");
    }
    est.kind = EstimatorKind::Series;
    est.n_star = *config.n_star;
  }
  est.concentration = config.concentration;
  est.candidates = candidates_for(config);
  est.criterion = config.criterion;
  est.grid_size = config.grid;
  const MiseReport report = mise_experiment(truth, est, config.n, config.reps, config.seed);
  return render_kv({{"truth", *config.truth},
                    {"estimator", config.estimator},
                    {"n", config.n},
                    {"reps", config.reps},
                    {"mise", report.mean},
                    {"std_error", report.std_error}},
                   config.json);
}

}  // namespace

RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"Circular density estimation"};
  RunConfig config;

  std::string command = "estimate";
  std::string unit = "rad";
  std::string concentration;
  std::string n_star = "auto";
  std::string format = "csv";
  std::string criterion = "loo";
  std::string input;
  std::string output;
  std::string truth;

  app.add_option("--command", command, "estimate | cv | series | equivalence | simulate")
      ->check(CLI::IsMember({"estimate", "cv", "series", "equivalence", "simulate"}));
  app.add_option("--input", input, "angle file, one value per line");
  app.add_option("--truth", truth, "synthetic law, e.g. wc:0,0.8");
  app.add_option("--n", config.n, "synthetic sample size");
  app.add_option("--reps", config.reps, "replications for simulate (MISE)");
  app.add_option("--unit", unit, "rad | deg")->check(CLI::IsMember({"rad", "deg"}));
  app.add_option("--estimator", config.estimator, "wc | vm | series | opuc")
      ->check(CLI::IsMember({"wc", "vm", "series", "opuc"}));
  app.add_option("--concentration", concentration, "rho / nu / r, or 'cv'");
  app.add_option("--candidates", config.candidates, "comma-separated CV grid")->delimiter(',');
  app.add_option("--criterion", criterion, "loo | lscv")->check(CLI::IsMember({"loo", "lscv"}));
  app.add_option("--nstar", n_star, "series truncation, or 'auto'");
  app.add_option("--tail-tol", config.tail_tol, "tail bound used by --nstar auto");
  app.add_option("--grid", config.grid, "number of evaluation points");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", config.seed, "RNG seed");
  app.add_option("--output", output, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::Error& e) {
    throw ConfigError(e.what());
  }

  if (command == "estimate") {
    config.command = Command::Estimate;
  } else if (command == "cv") {
    config.command = Command::Cv;
  } else if (command == "series") {
    config.command = Command::Series;
  } else if (command == "equivalence") {
    config.command = Command::Equivalence;
  } else {
    config.command = Command::Simulate;
  }
  config.unit = unit == "deg" ? AngleUnit::Degrees : AngleUnit::Radians;
  config.json = format == "json";
  config.criterion = criterion == "lscv" ? CvCriterion::Lscv : CvCriterion::LooLogLik;
  if (!input.empty()) {
    config.input = input;
  }
  if (!output.empty()) {
    config.output = output;
  }
  if (!truth.empty()) {
    config.truth = truth;
  }

  if (!concentration.empty() && concentration != "cv") {
    try {
      std::size_t used = 0;
      config.concentration = std::stod(concentration, &used);
      if (used != concentration.size()) {
        throw std::invalid_argument("trailing characters");
      }
    } catch (const std::exception&) {
      throw ConfigError("--concentration must be a number or 'cv'");
    }
  }
  if (n_star != "auto") {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(n_star, &used);
      if (used != n_star.size() || v < 0) {
        throw std::invalid_argument("bad count");
      }
      config.n_star = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw ConfigError("--nstar must be a non-negative integer or 'auto'");
    }
  }
  if (!(config.tail_tol > 0.0)) {
    throw ConfigError("--tail-tol must be positive");
  }
  return config;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = parse_args(argc, argv);
    std::string result;
    switch (config.command) {
      case Command::Estimate:
        result = run_density(config, config.estimator);
        break;
      case Command::Series:
        result = run_density(config, "series");
        break;
      case Command::Cv:
        result = run_cv(config);
        break;
      case Command::Equivalence:
        result = run_equivalence(config);
        break;
      case Command::Simulate:
        result = run_simulate(config);
        break;
    }
    if (config.output) {
      std::ofstream file(*config.output, std::ios::binary);
      if (!file) {
        err << "error: cannot write '" << config.output->string() << "'\n";
        return kExitData;
      }
      file << result;
    } else {
      out << result;
    }
    return kExitOk;
  } catch (const HelpRequested& e) {
    out << e.what();
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace circkde::cli
