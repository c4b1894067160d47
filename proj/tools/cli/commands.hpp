#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "config.hpp"
#include "fractarc/dimension.hpp"

namespace fractarc::cli {

/// Each command returns an ExitCode and never throws for expected failures.
int cmd_build(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_estimate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_export(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Header "scale,count,log_inverse_scale,log_count", one row per scale.
std::string series_csv(const BoxCountSeries& series);

struct EstimateResult {
  std::string preset;
  BoxCountSeries series;
  DimensionEstimate estimate;
  double expected = 0.0;
  nlohmann::json parameters;
};

/// The estimate behind cmd_estimate, without any file output.
EstimateResult run_estimate(const RunConfig& config);
nlohmann::json estimate_report(const EstimateResult& result);

}  // namespace fractarc::cli
