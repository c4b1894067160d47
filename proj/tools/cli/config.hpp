#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fractarc/rational.hpp"

namespace fractarc::cli {

enum ExitCode : int { kPass = 0, kVerificationFailed = 1, kConfigError = 2, kConstructionFailed = 3 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double c = 0.0;
  std::string c_text = "1+ln(2)/ln(3)";
  std::string ratios = "dyadic";
  int depth = 2;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::string scales;
  std::vector<Rational> clearance;
  int generation_budget = 20;

  std::string model;
  std::string preset;
  std::string csv;
  std::string epsilon_text;
  std::string r_text = "1/3";
  int copies = 2;
  int generation = 0;

  std::size_t samples = 1000;
  int verify_depth = 16;
};

/// "1.5", "ln(2)/ln(3)", "1+ln(2)/ln(3)", "koch" (= ln(3)/ln(4)).
double parse_real_expression(const std::string& text);

/// Applies one key=value setting; throws ConfigError on unknown keys or bad values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Plain-text key=value lines; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Defaults, then the FRACTARC_GENERATION_BUDGET environment variable, then
/// the config file, then command-line overrides (in that order).
RunConfig resolve_config(const std::optional<std::filesystem::path>& file,
                         const std::map<std::string, std::string>& overrides);

/// Scales from "a:b" (dyadic exponents a..b) or a comma list of values.
std::vector<double> parse_scales(const std::string& text);

}  // namespace fractarc::cli
