#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fractarc {

class ArcApproximation;

/// Flat storage for a finite sample of points in R^m.
struct PointCloud {
  std::size_t dimension = 0;
  std::vector<double> coords;

  PointCloud() = default;
  explicit PointCloud(std::size_t dim) : dimension(dim) {}

  std::size_t size() const { return dimension == 0 ? 0 : coords.size() / dimension; }
  bool empty() const { return size() == 0; }
  std::span<const double> point(std::size_t i) const { return {coords.data() + i * dimension, dimension}; }
  void push(std::span<const double> p) { coords.insert(coords.end(), p.begin(), p.end()); }
  void reserve(std::size_t points) { coords.reserve(points * dimension); }
};

/// A metric on points of a fixed coordinate dimension.
class Metric {
 public:
  virtual ~Metric() = default;
  virtual std::size_t dimension() const = 0;
  virtual double distance(std::span<const double> a, std::span<const double> b) const = 0;
  /// Per-coordinate half-widths w with d(a, b) < r implying |a_i - b_i| <= w_i.
  virtual std::vector<double> window(double r) const = 0;
};

class EuclideanMetric final : public Metric {
 public:
  explicit EuclideanMetric(std::size_t dimension) : dimension_(dimension) {}
  std::size_t dimension() const override { return dimension_; }
  double distance(std::span<const double> a, std::span<const double> b) const override;
  std::vector<double> window(double r) const override { return std::vector<double>(dimension_, r); }

 private:
  std::size_t dimension_;
};

/// |x - y|^eps on [0, 1].
double snowflake_distance(double epsilon, double x, double y);

class SnowflakeMetric final : public Metric {
 public:
  /// 0 < epsilon <= 1.
  explicit SnowflakeMetric(double epsilon);
  double epsilon() const { return epsilon_; }
  std::size_t dimension() const override { return 1; }
  double distance(std::span<const double> a, std::span<const double> b) const override;
  std::vector<double> window(double r) const override;

 private:
  double epsilon_;
};

/// Exponent of the von Koch snowflake, ln 3 / ln 4.
double von_koch_exponent();

enum class RugFactor { snowflake, arc };

/// V x [0, 1] with the max metric. Points store the first factor's
/// coordinates followed by the second factor.
class RugSpace final : public Metric {
 public:
  /// Rickman's rug: snowflaked interval times [0, 1].
  static RugSpace snowflake(double epsilon);
  /// Fractal rug: an arc model in R^{first_dimension} (Euclidean) times [0, 1].
  static RugSpace arc(std::size_t first_dimension);

  RugFactor factor() const { return factor_; }
  double epsilon() const { return epsilon_; }
  std::size_t first_dimension() const { return first_dimension_; }

  std::size_t dimension() const override { return first_dimension_ + 1; }
  double distance(std::span<const double> a, std::span<const double> b) const override;
  std::vector<double> window(double r) const override;
  double first_distance(std::span<const double> a, std::span<const double> b) const;
  double second_distance(std::span<const double> a, std::span<const double> b) const;

 private:
  RugSpace(RugFactor factor, double epsilon, std::size_t first_dimension);

  RugFactor factor_;
  double epsilon_;
  std::size_t first_dimension_;
};

double rug_distance(const RugSpace& space, std::span<const double> p, std::span<const double> q);

inline constexpr std::size_t kDefaultSampleBudget = std::size_t{1} << 24;

/// Grid j/k, j = 0..k, in each factor (resolution 1 gives the 2 x 2 corners).
/// Snowflake rugs only.
PointCloud sample_rug(const RugSpace& space, int resolution, std::size_t budget = kDefaultSampleBudget);
/// Separate resolutions for the first and second factor. Snowflake rugs only.
PointCloud sample_rug(const RugSpace& space, int first_resolution, int second_resolution,
                      std::size_t budget = kDefaultSampleBudget);
/// Vertex cloud of Gamma_k times the grid j/k, j = 0..k.
PointCloud sample_rug(const RugSpace& space, const ArcApproximation& arc, int resolution,
                      std::size_t budget = kDefaultSampleBudget);

}  // namespace fractarc
