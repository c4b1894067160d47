#include "fractarc/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "fractarc/arc.hpp"
#include "fractarc/errors.hpp"

namespace fractarc {

namespace {

constexpr double kSnap = 1e-9;

std::int64_t box_index(double x, double delta, std::int64_t last) {
  const auto i = static_cast<std::int64_t>(std::floor(x * (1.0 + kSnap) / delta));
  return std::clamp<std::int64_t>(i, 0, last);
}

void check_budget(std::size_t points, std::size_t budget) {
  if (points > budget) {
    throw BudgetExceeded("sample exceeds the point budget", static_cast<int>(std::min<std::size_t>(points, 1u << 30)),
                         static_cast<int>(std::min<std::size_t>(budget, 1u << 30)));
  }
}

}  // namespace

std::size_t box_count(const PointCloud& points, double delta) {
  if (points.empty()) throw std::invalid_argument("box count of an empty sample");
  if (!(delta > 0.0)) throw std::invalid_argument("box side must be positive");
  const std::size_t m = points.dimension;
  const auto last = std::max<std::int64_t>(static_cast<std::int64_t>(std::ceil(1.0 / delta - kSnap)) - 1, 0);
  int bits = 1;
  while (bits < 62 && (std::int64_t{1} << bits) <= last) ++bits;
  if (static_cast<std::size_t>(bits) * m <= 64) {
    std::vector<std::uint64_t> keys(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
      std::uint64_t key = 0;
      for (double x : points.point(p)) key = (key << bits) | static_cast<std::uint64_t>(box_index(x, delta, last));
      keys[p] = key;
    }
    std::sort(keys.begin(), keys.end());
    return static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
  }
  std::set<std::vector<std::int64_t>> boxes;
  for (std::size_t p = 0; p < points.size(); ++p) {
    std::vector<std::int64_t> key;
    key.reserve(m);
    for (double x : points.point(p)) key.push_back(box_index(x, delta, last));
    boxes.insert(std::move(key));
  }
  return boxes.size();
}

std::vector<double> dyadic_scales(int first, int last) {
  std::vector<double> scales;
  for (int e = first; e <= last; ++e) scales.push_back(std::ldexp(1.0, -e));
  return scales;
}

std::vector<double> dyadic_window(int generation, double resolution) {
  int last = generation - 1;
  while (last >= 3 && resolution > 0.0 && std::ldexp(1.0, -last) < resolution) --last;
  if (last - 3 + 1 < 3) {
    throw InsufficientDepth("generation " + std::to_string(generation) + " sample supports fewer than 3 dyadic scales");
  }
  return dyadic_scales(3, last);
}

std::vector<double> net_window(double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("sample resolution must be positive");
  int last = 2;
  while (last < 60 && std::ldexp(1.0, -(last + 1)) >= 2.0 * resolution) ++last;
  if (last - 3 + 1 < 3) throw InsufficientDepth("sample resolution supports fewer than 3 net radii");
  return dyadic_scales(3, last);
}

BoxCountSeries box_count_series(const PointCloud& points, const std::vector<double>& scales, double resolution) {
  BoxCountSeries series;
  series.kind = EstimatorKind::box;
  series.scales = scales;
  series.resolution = resolution;
  for (double delta : scales) series.counts.push_back(box_count(points, delta));
  return series;
}

DimensionEstimate estimate_dimension(const BoxCountSeries& series) {
  if (series.scales.size() != series.counts.size()) throw std::invalid_argument("scales and counts differ in length");
  if (series.scales.size() < 3) throw std::invalid_argument("dimension estimate needs at least 3 scales");
  for (double delta : series.scales) {
    if (!(delta > 0.0)) throw std::invalid_argument("scales must be positive");
    if (delta < series.resolution) {
      throw InsufficientDepth("scale " + std::to_string(delta) + " is finer than the sample resolution " +
                              std::to_string(series.resolution));
    }
  }
  const std::size_t n = series.scales.size();
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (series.counts[i] == 0) throw std::invalid_argument("counts must be positive");
    xs[i] = std::log(1.0 / series.scales[i]);
    ys[i] = std::log(static_cast<double>(series.counts[i]));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("degenerate series: all scales coincide");
  DimensionEstimate est;
  est.kind = series.kind;
  est.slope = sxy / sxx;
  est.intercept = my - est.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ys[i] - (est.intercept + est.slope * xs[i]);
    ss_res += e * e;
  }
  est.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  est.scale_min = *std::min_element(series.scales.begin(), series.scales.end());
  est.scale_max = *std::max_element(series.scales.begin(), series.scales.end());
  est.scales_used = n;
  return est;
}

std::size_t ball_net_count(const Metric& metric, const PointCloud& points, double r) {
  if (points.empty()) throw std::invalid_argument("net count of an empty sample");
  if (!(r > 0.0)) throw std::invalid_argument("net radius must be positive");
  if (points.dimension != metric.dimension()) throw std::invalid_argument("metric and sample dimensions differ");
  const std::size_t m = points.dimension;
  const auto w = metric.window(r);
  std::vector<double> width(m);
  for (std::size_t i = 0; i < m; ++i) width[i] = std::max(w[i], 1e-300);

  struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& key) const {
      std::size_t h = 1469598103934665603ULL;
      for (auto v : key) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
      return h;
    }
  };
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, KeyHash> grid;
  std::vector<std::size_t> centers;
  std::vector<std::int64_t> cell(m), probe(m);

  std::size_t neighbours = 1;
  for (std::size_t i = 0; i < m; ++i) neighbours *= 3;

  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto x = points.point(p);
    for (std::size_t i = 0; i < m; ++i) cell[i] = static_cast<std::int64_t>(std::floor(x[i] / width[i]));
    bool covered = false;
    for (std::size_t code = 0; code < neighbours && !covered; ++code) {
      std::size_t rest = code;
      for (std::size_t i = 0; i < m; ++i) {
        probe[i] = cell[i] + static_cast<std::int64_t>(rest % 3) - 1;
        rest /= 3;
      }
      auto it = grid.find(probe);
      if (it == grid.end()) continue;
      for (std::size_t c : it->second) {
        if (metric.distance(x, points.point(c)) < r) {
          covered = true;
          break;
        }
      }
    }
    if (!covered) {
      centers.push_back(p);
      grid[cell].push_back(p);
    }
  }
  return centers.size();
}

BoxCountSeries ball_net_series(const Metric& metric, const PointCloud& points, const std::vector<double>& radii,
                               double resolution) {
  BoxCountSeries series;
  series.kind = EstimatorKind::ball_net;
  series.scales = radii;
  series.resolution = resolution;
  for (double r : radii) series.counts.push_back(ball_net_count(metric, points, r));
  return series;
}

// ----------------------------------------------------------------- samples

PointCloud self_similar_sample(const SelfSimilarCantor& set, int generation, std::size_t budget) {
  if (generation < 0) throw std::invalid_argument("generation must be non-negative");
  check_budget(std::size_t{1} << std::min(generation, 62), budget);
  SelfSimilarCantor copy = set;
  copy.build_through(generation);
  PointCloud cloud(1);
  for (const auto& x : copy.left_endpoints(generation)) cloud.coords.push_back(x.get_d());
  return cloud;
}

PointCloud product_sample(const ProductCantor& set, int generation, std::size_t budget) {
  if (set.copies < 1) throw std::invalid_argument("product needs at least one factor");
  const int exponent = generation * set.copies;
  if (exponent > 62) check_budget(std::numeric_limits<std::size_t>::max(), budget);
  check_budget(std::size_t{1} << exponent, budget);
  const PointCloud factor = self_similar_sample(set.factor, generation, budget);
  const std::size_t m = static_cast<std::size_t>(set.copies);
  const std::size_t total = std::size_t{1} << exponent;
  PointCloud cloud(m);
  cloud.coords.resize(total * m);
  const std::size_t f = factor.size();
  for (std::size_t p = 0; p < total; ++p) {
    std::size_t rest = p;
    for (std::size_t i = 0; i < m; ++i) {
      cloud.coords[p * m + i] = factor.coords[rest % f];
      rest /= f;
    }
  }
  return cloud;
}

PointCloud interval_sample(int generation, std::size_t budget) {
  if (generation < 1) throw std::invalid_argument("generation must be at least 1");
  check_budget(std::size_t{1} << std::min(generation, 62), budget);
  const std::size_t count = std::size_t{1} << generation;
  PointCloud cloud(1);
  cloud.coords.resize(count);
  for (std::size_t j = 0; j < count; ++j) cloud.coords[j] = std::ldexp(static_cast<double>(j), -generation);
  return cloud;
}

PointCloud arc_sample(const ArcApproximation& arc) {
  PointCloud cloud(arc.ambient_dimension());
  for (const auto& v : arc.vertex_cloud(arc.depth())) cloud.push(v);
  return cloud;
}

std::vector<double> arc_window(const ArcApproximation& arc) {
  const auto sides = arc.cell_sides(arc.depth());
  const double largest = std::max_element(sides.begin(), sides.end())->get_d();
  const int last = static_cast<int>(std::floor(std::log2(1.0 / largest)));
  if (last < 3) {
    throw InsufficientDepth("arc depth " + std::to_string(arc.depth()) + " supports fewer than 3 dyadic scales");
  }
  return dyadic_scales(1, last);
}

// ---------------------------------------------------------- expected values

ExpectedDimensions expected_dimensions(double c) {
  if (!(c >= 1.0)) throw std::invalid_argument("target dimension c must be at least 1");
  ExpectedDimensions e;
  e.c = c;
  e.d = c - 1.0;
  e.hausdorff = 1.0 + e.d;
  e.conformal = c;
  e.product = 1.0 + e.d;
  e.unit_interval = c == 1.0;
  return e;
}

double expected_self_similar_dimension(double ratio) {
  if (!(ratio > 0.0 && ratio < 0.5)) throw std::invalid_argument("scaling ratio must lie in (0, 1/2)");
  return std::log(2.0) / std::log(1.0 / ratio);
}

double expected_snowflake_dimension(double epsilon) {
  (void)SnowflakeMetric(epsilon);
  return 1.0 / epsilon;
}

double expected_rug_dimension(double epsilon) { return 1.0 + expected_snowflake_dimension(epsilon); }

std::string box_dimension_caveat() {
  return "box-counting estimate; equals the Hausdorff dimension for sets whose Hausdorff and upper box "
         "dimensions coincide";
}

}  // namespace fractarc
