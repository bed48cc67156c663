#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "circkde/cli.hpp"

namespace circkde::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_real(std::string_view text) {
  const std::string buf(trim(text));
  if (buf.empty()) {
    return std::nullopt;
  }
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || errno == ERANGE || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) {
      return parts;
    }
    start = pos + 1;
  }
}

std::pair<double, double> parse_pair(std::string_view args, std::string_view what) {
  const auto parts = split(args, ',');
  if (parts.size() != 2) {
    throw ConfigError("truth '" + std::string(what) + "' needs two comma-separated numbers");
  }
  const auto a = parse_real(parts[0]);
  const auto b = parse_real(parts[1]);
  if (!a || !b) {
    throw ConfigError("truth '" + std::string(what) + "' has a non-numeric parameter");
  }
  return {*a, *b};
}

CircularLaw parse_law(std::string_view text) {
  text = trim(text);
  if (text == "uniform") {
    return WrappedCauchyParams(Angle(0.0), 0.0);
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("unrecognised truth '" + std::string(text) + "'");
  }
  const std::string_view family = text.substr(0, colon);
  const auto [mu, k] = parse_pair(text.substr(colon + 1), text);
  if (family == "wc") {
    return WrappedCauchyParams(Angle(mu), k);
  }
  if (family == "vm") {
    return VonMisesParams(Angle(mu), k);
  }
  if (family == "wn") {
    return WrappedNormalParams(Angle(mu), k);
  }
  throw ConfigError("unknown truth family '" + std::string(family) + "'");
}

}  // namespace

AngleSample parse_angles(std::istream& in, AngleUnit unit) {
  std::vector<Angle> angles;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') {
      continue;
    }
    const auto value = parse_real(body);
    if (!value) {
      throw DataError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(body) +
                      "' as an angle");
    }
    const double radians = unit == AngleUnit::Degrees ? *value * (kPi / 180.0) : *value;
    angles.emplace_back(radians);
  }
  if (angles.empty()) {
    throw DataError("input contains no angles");
  }
  return AngleSample(std::move(angles));
}

AngleSample ingest(const std::filesystem::path& path, AngleUnit unit) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open input file '" + path.string() + "'");
  }
  return parse_angles(in, unit);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_csv(const DensityEstimate& estimate) {
  std::string out = "theta,density\n";
  const auto values = estimate.values();
  for (std::size_t k = 0; k < values.size(); ++k) {
    out += format_double(estimate.grid()[k].radians());
    out += ',';
    out += format_double(values[k]);
    out += '\n';
  }
  return out;
}

std::string format_json(const DensityEstimate& estimate) {
  const EstimateMeta& meta = estimate.meta();
  nlohmann::json doc;
  doc["meta"]["estimator"] = meta.estimator;
  doc["meta"]["concentration"] =
      meta.concentration ? nlohmann::json(*meta.concentration) : nlohmann::json(nullptr);
  doc["meta"]["n"] = meta.sample_size;
  doc["meta"]["m"] = estimate.grid().size();
  if (meta.n_star) {
    doc["meta"]["n_star"] = *meta.n_star;
    doc["meta"]["has_negative"] = meta.has_negative;
  }
  auto& grid = doc["grid"] = nlohmann::json::array();
  for (const Angle& a : estimate.grid().points()) {
    grid.push_back(a.radians());
  }
  doc["values"] = std::vector<double>(estimate.values().begin(), estimate.values().end());
  return doc.dump() + "\n";
}

std::vector<std::pair<double, double>> parse_density_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "theta,density") {
    throw DataError("missing 'theta,density' header");
  }
  std::vector<std::pair<double, double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comma = line.find(',');
    const auto theta = parse_real(std::string_view(line).substr(0, comma));
    const auto density = comma == std::string::npos
                             ? std::nullopt
                             : parse_real(std::string_view(line).substr(comma + 1));
    if (!theta || !density) {
      throw DataError("line " + std::to_string(line_no) + ": malformed density row");
    }
    rows.emplace_back(*theta, *density);
  }
  return rows;
}

TrueDensity parse_truth(std::string_view text) {
  if (text.find('@') == std::string_view::npos) {
    return TrueDensity(parse_law(text));
  }
  std::vector<MixtureComponent> components;
  for (std::string_view part : split(text, '+')) {
    const auto at = part.find('@');
    if (at == std::string_view::npos) {
      throw ConfigError("mixture component '" + std::string(part) + "' lacks WEIGHT@");
    }
    const auto weight = parse_real(part.substr(0, at));
    if (!weight) {
      throw ConfigError("mixture weight in '" + std::string(part) + "' is not a number");
    }
    components.push_back({*weight, parse_law(part.substr(at + 1))});
  }
  return TrueDensity::mixture(std::move(components));
}

}  // namespace circkde::cli
