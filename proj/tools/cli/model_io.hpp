#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "config.hpp"
#include "fractarc/arc.hpp"

namespace fractarc::cli {

inline constexpr int kSchemaVersion = 1;

/// A built arc, or the unit interval when c = 1.
struct Model {
  std::string c_text;
  double c = 1.0;
  std::string ratios = "dyadic";
  int generation_budget = kDefaultGenerationBudget;
  std::uint64_t seed = 1;
  std::optional<ArcApproximation> arc;

  bool degenerate() const { return !arc.has_value(); }
  int depth() const { return arc ? arc->depth() : 0; }
};

/// E from the ratio family, Y = K_{c-1} as a product of N copies, arc to the
/// configured depth. Throws BudgetExceeded or RoutingFailed.
Model build_model(const RunConfig& config);

nlohmann::json model_to_json(const Model& model);
Model model_from_json(const nlohmann::json& json);

Model load_model(const std::filesystem::path& path);
/// indent < 0 gives the compact form used for model files.
std::string dump_json(const nlohmann::json& json, int indent = 2);

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace fractarc::cli
