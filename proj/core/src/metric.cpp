#include "fractarc/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fractarc/arc.hpp"
#include "fractarc/errors.hpp"

namespace fractarc {

double EuclideanMetric::distance(std::span<const double> a, std::span<const double> b) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < dimension_; ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum);
}

double snowflake_distance(double epsilon, double x, double y) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("snowflake exponent must lie in (0, 1]");
  const double gap = std::abs(x - y);
  return gap == 0.0 ? 0.0 : std::pow(gap, epsilon);
}

SnowflakeMetric::SnowflakeMetric(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("snowflake exponent must lie in (0, 1]");
}

double SnowflakeMetric::distance(std::span<const double> a, std::span<const double> b) const {
  return snowflake_distance(epsilon_, a[0], b[0]);
}

std::vector<double> SnowflakeMetric::window(double r) const { return {std::pow(r, 1.0 / epsilon_)}; }

double von_koch_exponent() { return std::log(3.0) / std::log(4.0); }

RugSpace::RugSpace(RugFactor factor, double epsilon, std::size_t first_dimension)
    : factor_(factor), epsilon_(epsilon), first_dimension_(first_dimension) {}

RugSpace RugSpace::snowflake(double epsilon) {
  (void)SnowflakeMetric(epsilon);
  return RugSpace(RugFactor::snowflake, epsilon, 1);
}

RugSpace RugSpace::arc(std::size_t first_dimension) {
  if (first_dimension == 0) throw std::invalid_argument("arc factor needs a positive dimension");
  return RugSpace(RugFactor::arc, 1.0, first_dimension);
}

double RugSpace::first_distance(std::span<const double> a, std::span<const double> b) const {
  if (factor_ == RugFactor::snowflake) return snowflake_distance(epsilon_, a[0], b[0]);
  double sum = 0.0;
  for (std::size_t i = 0; i < first_dimension_; ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum);
}

double RugSpace::second_distance(std::span<const double> a, std::span<const double> b) const {
  return std::abs(a[first_dimension_] - b[first_dimension_]);
}

double RugSpace::distance(std::span<const double> a, std::span<const double> b) const {
  return std::max(first_distance(a, b), second_distance(a, b));
}

std::vector<double> RugSpace::window(double r) const {
  std::vector<double> w(dimension(), r);
  if (factor_ == RugFactor::snowflake) w[0] = std::pow(r, 1.0 / epsilon_);
  return w;
}

double rug_distance(const RugSpace& space, std::span<const double> p, std::span<const double> q) {
  return space.distance(p, q);
}

namespace {

std::vector<double> grid(int resolution) {
  std::vector<double> g(static_cast<std::size_t>(resolution) + 1);
  for (int j = 0; j <= resolution; ++j) g[static_cast<std::size_t>(j)] = static_cast<double>(j) / resolution;
  return g;
}

void check_budget(std::size_t points, std::size_t budget) {
  if (points > budget) {
    throw BudgetExceeded("rug sample exceeds the point budget", static_cast<int>(std::min<std::size_t>(points, 1u << 30)),
                         static_cast<int>(std::min<std::size_t>(budget, 1u << 30)));
  }
}

}  // namespace

PointCloud sample_rug(const RugSpace& space, int resolution, std::size_t budget) {
  return sample_rug(space, resolution, resolution, budget);
}

PointCloud sample_rug(const RugSpace& space, int first_resolution, int second_resolution, std::size_t budget) {
  if (space.factor() != RugFactor::snowflake) throw std::invalid_argument("arc rugs are sampled from an arc model");
  if (first_resolution < 1 || second_resolution < 1) throw std::invalid_argument("resolution must be at least 1");
  const auto xs = grid(first_resolution);
  const auto ys = grid(second_resolution);
  check_budget(xs.size() * ys.size(), budget);
  PointCloud cloud(2);
  cloud.reserve(xs.size() * ys.size());
  for (double x : xs) {
    for (double y : ys) cloud.coords.insert(cloud.coords.end(), {x, y});
  }
  return cloud;
}

PointCloud sample_rug(const RugSpace& space, const ArcApproximation& arc, int resolution, std::size_t budget) {
  if (space.factor() != RugFactor::arc || space.first_dimension() != arc.ambient_dimension()) {
    throw std::invalid_argument("rug space does not match the arc model");
  }
  if (resolution < 1) throw std::invalid_argument("resolution must be at least 1");
  const auto vertices = arc.vertex_cloud(resolution);
  const auto ys = grid(resolution);
  check_budget(vertices.size() * ys.size(), budget);
  PointCloud cloud(space.dimension());
  cloud.reserve(vertices.size() * ys.size());
  for (const auto& v : vertices) {
    for (double y : ys) {
      cloud.push(v);
      cloud.coords.push_back(y);
    }
  }
  return cloud;
}

}  // namespace fractarc
