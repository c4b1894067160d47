#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

using namespace fractarc::cli;

namespace {

struct Flags {
  std::string config_file;
  std::map<std::string, std::string> values;
};

void add_flag(CLI::App* app, Flags& flags, const std::string& name, const std::string& help) {
  app->add_option_function<std::string>(
      "--" + name, [&flags, name](const std::string& v) { flags.values[name] = v; }, help);
}

void add_common(CLI::App* app, Flags& flags) {
  app->add_option("--config", flags.config_file, "key=value configuration file");
  add_flag(app, flags, "c", "target conformal dimension c >= 1, e.g. 1+ln(2)/ln(3)");
  add_flag(app, flags, "depth", "arc generation depth");
  add_flag(app, flags, "ratios", "ratio family: dyadic, harmonic or geometric:q");
  add_flag(app, flags, "seed", "random seed");
  add_flag(app, flags, "out", "output path (stdout when omitted)");
  add_flag(app, flags, "scales", "scales as a:b dyadic exponents or a comma list");
  add_flag(app, flags, "model", "model JSON file");
  add_flag(app, flags, "generation_budget", "largest generation materialized");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cantor-product Jordan arcs with a target conformal dimension: build, verify, estimate, export"};
  app.set_version_flag("--version", "fractarc 0.3.0");
  app.require_subcommand(1);
  Flags flags;

  auto* build = app.add_subcommand("build", "construct an arc model and write it as JSON");
  add_common(build, flags);
  add_flag(build, flags, "clearance", "comma list of detour fractions in (0, 1)");

  auto* verify = app.add_subcommand("verify", "run every certificate on a model");
  add_common(verify, flags);
  add_flag(verify, flags, "samples", "samples per randomized check");
  add_flag(verify, flags, "verify_depth", "Cantor generation used by the measure checks");

  auto* estimate = app.add_subcommand("estimate", "estimate a dimension and compare to its expected value");
  add_common(estimate, flags);
  add_flag(estimate, flags, "preset", "cantor, product, snowflake, rug or arc");
  add_flag(estimate, flags, "epsilon", "snowflake exponent, e.g. 1/2 or koch");
  add_flag(estimate, flags, "r", "self-similar scaling ratio");
  add_flag(estimate, flags, "copies", "factors in the product preset");
  add_flag(estimate, flags, "generation", "sample generation");
  add_flag(estimate, flags, "csv", "write the count series as CSV");

  auto* exporter = app.add_subcommand("export", "write a model as svg, json or csv");
  add_common(exporter, flags);
  add_flag(exporter, flags, "format", "svg (n = 1 only), json or csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  RunConfig config;
  try {
    std::optional<std::filesystem::path> file;
    if (!flags.config_file.empty()) file = flags.config_file;
    config = resolve_config(file, flags.values);
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  }

  if (build->parsed()) return cmd_build(config, std::cout, std::cerr);
  if (verify->parsed()) return cmd_verify(config, std::cout, std::cerr);
  if (estimate->parsed()) return cmd_estimate(config, std::cout, std::cerr);
  return cmd_export(config, std::cout, std::cerr);
}
