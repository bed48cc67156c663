#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "circkde/core.hpp"
#include "circkde/selection.hpp"
#include "circkde/simlab.hpp"

namespace circkde::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitData = 3,
  kExitNumeric = 4,
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_args for --help; what() is the usage text.
class HelpRequested : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class AngleUnit { Radians, Degrees };

/// One decimal angle per line; blank lines and lines starting with '#'
/// are skipped. Degrees are converted to radians, then everything is
/// normalised to [-pi, pi). Throws DataError naming the offending line.
AngleSample parse_angles(std::istream& in, AngleUnit unit);
AngleSample ingest(const std::filesystem::path& path, AngleUnit unit);

/// "%.17g" rendering; reading it back yields the same double.
std::string format_double(double x);

/// `theta,density` header, then one LF-terminated row per grid point.
std::string format_csv(const DensityEstimate& estimate);
std::string format_json(const DensityEstimate& estimate);

/// Reads back the (theta, density) rows written by format_csv.
std::vector<std::pair<double, double>> parse_density_csv(std::string_view text);

/// Parses a truth description:
///   wc:MU,RHO | vm:MU,NU | wn:MU,SIGMA | uniform
/// or a mixture of those joined by '+', each prefixed with WEIGHT@,
/// e.g. "0.5@vm:-1.5708,5+0.5@vm:1.5708,5". Angles in radians.
TrueDensity parse_truth(std::string_view text);

enum class Command { Estimate, Cv, Series, Equivalence, Simulate };

struct RunConfig {
  Command command = Command::Estimate;
  std::optional<std::filesystem::path> input;
  std::optional<std::string> truth;
  std::size_t n = 0;
  std::size_t reps = 0;
  AngleUnit unit = AngleUnit::Radians;
  std::string estimator = "wc";
  std::optional<double> concentration;  // empty means "cv"
  std::vector<double> candidates;
  CvCriterion criterion = CvCriterion::LooLogLik;
  std::optional<std::size_t> n_star;  // empty means "auto"
  double tail_tol = 1e-8;
  std::size_t grid = 512;
  bool json = false;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> output;
};

/// Parses argv into a RunConfig. Throws ConfigError on bad flags.
RunConfig parse_args(int argc, const char* const* argv);

/// Executes one command, writing results to `out` (or --output) and
/// diagnostics to `err`. Returns one of the ExitCode values.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace circkde::cli
