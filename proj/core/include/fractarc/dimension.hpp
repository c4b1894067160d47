#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fractarc/cantor.hpp"
#include "fractarc/metric.hpp"

namespace fractarc {

class ArcApproximation;

enum class EstimatorKind { box, ball_net };

/// Counts N at scales delta (box side, or net radius).
struct BoxCountSeries {
  EstimatorKind kind = EstimatorKind::box;
  std::vector<double> scales;
  std::vector<std::size_t> counts;
  /// Finest scale the sample resolves; 0 when unknown.
  double resolution = 0.0;
};

struct DimensionEstimate {
  EstimatorKind kind = EstimatorKind::box;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
  double scale_min = 0.0;
  double scale_max = 0.0;
  std::size_t scales_used = 0;
};

/// Number of grid boxes of side delta meeting the cloud. Coordinates are
/// snapped up by a relative 1e-9 before flooring, so points on a box
/// boundary land in the upper box; the last box is closed.
std::size_t box_count(const PointCloud& points, double delta);

/// 2^{-e} for e = first..last.
std::vector<double> dyadic_scales(int first, int last);

/// Default window for a generation-g sample: 2^{-3} .. 2^{-(g-1)}, cut at the
/// sample resolution. Throws InsufficientDepth when fewer than 3 scales remain.
std::vector<double> dyadic_window(int generation, double resolution);

/// Radii 2^{-3}, 2^{-4}, ... while at least twice the sample resolution
/// (measured in the metric). Throws InsufficientDepth below 3 radii.
std::vector<double> net_window(double resolution);

BoxCountSeries box_count_series(const PointCloud& points, const std::vector<double>& scales, double resolution = 0.0);

/// Least squares of log N against log(1/delta). Needs 3 scales and refuses
/// scales below the series resolution.
DimensionEstimate estimate_dimension(const BoxCountSeries& series);

/// Greedy r-net size in sample order.
std::size_t ball_net_count(const Metric& metric, const PointCloud& points, double r);

BoxCountSeries ball_net_series(const Metric& metric, const PointCloud& points, const std::vector<double>& radii,
                               double resolution = 0.0);

// ----------------------------------------------------------------- samples

/// Left endpoints of the generation-g intervals.
PointCloud self_similar_sample(const SelfSimilarCantor& set, int generation,
                               std::size_t budget = kDefaultSampleBudget);
/// Min corners of the generation-g cells of K_b^N.
PointCloud product_sample(const ProductCantor& set, int generation, std::size_t budget = kDefaultSampleBudget);
/// The 2^g points j / 2^g, j < 2^g.
PointCloud interval_sample(int generation, std::size_t budget = kDefaultSampleBudget);
/// Connector vertices and cell corners of the deepest built generation.
PointCloud arc_sample(const ArcApproximation& arc);
/// 1..floor(log2(1 / largest cell side)) for the deepest built generation.
std::vector<double> arc_window(const ArcApproximation& arc);

// ---------------------------------------------------------- expected values

struct ExpectedDimensions {
  double c = 1.0;
  /// d = c - 1
  double d = 0.0;
  double hausdorff = 1.0;
  double conformal = 1.0;
  /// dim_H(E x Y) = 1 + d
  double product = 1.0;
  bool unit_interval = true;
};

ExpectedDimensions expected_dimensions(double c);
double expected_self_similar_dimension(double ratio);
double expected_snowflake_dimension(double epsilon);
double expected_rug_dimension(double epsilon);

/// Box dimensions stand in for Hausdorff dimensions.
std::string box_dimension_caveat();

}  // namespace fractarc
