#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fractarc/dimension.hpp"

namespace fractarc::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(value)) throw ConfigError("not a number: '" + text + "'");
  return value;
}

double parse_term(const std::string& raw) {
  const std::string term = trim(raw);
  if (term == "koch") return std::log(3.0) / std::log(4.0);
  if (term.rfind("ln(", 0) == 0) {
    const auto close = term.find(')');
    const auto slash = term.find('/', close);
    if (close == std::string::npos || slash == std::string::npos) throw ConfigError("bad expression: '" + term + "'");
    const std::string den = trim(term.substr(slash + 1));
    if (den.rfind("ln(", 0) != 0 || den.back() != ')') throw ConfigError("bad expression: '" + term + "'");
    const double a = parse_number(term.substr(3, close - 3));
    const double b = parse_number(den.substr(3, den.size() - 4));
    if (!(a > 0.0 && b > 0.0 && b != 1.0)) throw ConfigError("bad logarithm ratio: '" + term + "'");
    return std::log(a) / std::log(b);
  }
  if (term.find('/') != std::string::npos) {
    try {
      return parse_rational(term).get_d();
    } catch (const std::exception&) {
      throw ConfigError("bad fraction: '" + term + "'");
    }
  }
  return parse_number(term);
}

int parse_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an integer: '" + value + "'");
  }
  if (used != value.size() || v < 0 || v > 1'000'000) throw ConfigError(key + ": out of range: '" + value + "'");
  return static_cast<int>(v);
}

}  // namespace

double parse_real_expression(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty expression");
  double sum = 0.0;
  std::size_t start = 0;
  while (true) {
    const auto plus = t.find('+', start);
    sum += parse_term(t.substr(start, plus == std::string::npos ? std::string::npos : plus - start));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return sum;
}

std::vector<double> parse_scales(const std::string& text) {
  std::vector<double> scales;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    const int a = parse_int("scales", trim(text.substr(0, colon)));
    const int b = parse_int("scales", trim(text.substr(colon + 1)));
    if (b < a || b > 60) throw ConfigError("scales: bad exponent range '" + text + "'");
    return dyadic_scales(a, b);
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const double v = parse_real_expression(item);
    if (!(v > 0.0)) throw ConfigError("scales must be positive");
    scales.push_back(v);
  }
  if (scales.empty()) throw ConfigError("scales: empty list");
  return scales;
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "c") {
    config.c_text = value;
    config.c = parse_real_expression(value);
    if (!(config.c >= 1.0)) throw ConfigError("c must be at least 1");
  } else if (key == "ratios") {
    config.ratios = value;
  } else if (key == "depth") {
    config.depth = parse_int(key, value);
  } else if (key == "seed") {
    try {
      std::size_t used = 0;
      config.seed = std::stoull(value, &used);
      if (used != value.size()) throw ConfigError("");
    } catch (const std::exception&) {
      throw ConfigError("seed: not an unsigned integer: '" + value + "'");
    }
  } else if (key == "out") {
    config.out = value;
  } else if (key == "format") {
    if (value != "json" && value != "svg" && value != "csv") throw ConfigError("format must be json, svg or csv");
    config.format = value;
  } else if (key == "scales") {
    (void)parse_scales(value);
    config.scales = value;
  } else if (key == "clearance") {
    config.clearance.clear();
    std::stringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
      Rational q;
      try {
        q = parse_rational(trim(item));
      } catch (const std::exception&) {
        throw ConfigError("clearance: bad fraction '" + item + "'");
      }
      if (q <= 0 || q >= 1) throw ConfigError("clearance fractions must lie in (0, 1)");
      config.clearance.push_back(q);
    }
  } else if (key == "generation_budget") {
    config.generation_budget = parse_int(key, value);
  } else if (key == "model") {
    config.model = value;
  } else if (key == "preset") {
    config.preset = value;
  } else if (key == "csv") {
    config.csv = value;
  } else if (key == "epsilon") {
    const double eps = parse_real_expression(value);
    if (!(eps > 0.0 && eps <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
    config.epsilon_text = value;
  } else if (key == "r") {
    config.r_text = value;
  } else if (key == "copies") {
    config.copies = parse_int(key, value);
    if (config.copies < 1) throw ConfigError("copies must be at least 1");
  } else if (key == "generation") {
    config.generation = parse_int(key, value);
  } else if (key == "samples") {
    config.samples = static_cast<std::size_t>(parse_int(key, value));
  } else if (key == "verify_depth") {
    config.verify_depth = parse_int(key, value);
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::map<std::string, std::string> settings;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(number) + ": expected key=value");
    }
    settings[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return settings;
}

RunConfig resolve_config(const std::optional<std::filesystem::path>& file,
                         const std::map<std::string, std::string>& overrides) {
  RunConfig config;
  config.c = parse_real_expression(config.c_text);
  if (const char* env = std::getenv("FRACTARC_GENERATION_BUDGET"); env != nullptr && *env != '\0') {
    config.generation_budget = parse_int("FRACTARC_GENERATION_BUDGET", env);
  }
  if (file) {
    for (const auto& [key, value] : read_config_file(*file)) apply_setting(config, key, value);
  }
  for (const auto& [key, value] : overrides) apply_setting(config, key, value);
  return config;
}

}  // namespace fractarc::cli
