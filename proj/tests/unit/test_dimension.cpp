#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fractarc/arc.hpp"
#include "fractarc/dimension.hpp"
#include "fractarc/errors.hpp"
#include "oracles.hpp"

using namespace fractarc;

namespace {

const double kLog2Log3 = std::log(2.0) / std::log(3.0);

PointCloud one_point(std::vector<double> p) {
  PointCloud cloud(p.size());
  cloud.push(p);
  return cloud;
}

std::vector<std::vector<oracle::Q>> triadic_points(int g) {
  std::vector<oracle::Q> c(static_cast<std::size_t>(g), oracle::Q(1, 3));
  std::vector<std::vector<oracle::Q>> out;
  for (const auto& [a, b] : oracle::cantor_intervals(c, g)) out.push_back({a});
  return out;
}

double fitted(const BoxCountSeries& s) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < s.scales.size(); ++i) {
    x.push_back(std::log(1.0 / s.scales[i]));
    y.push_back(std::log(static_cast<double>(s.counts[i])));
  }
  return oracle::slope(x, y);
}

}  // namespace

TEST(BoxCount, SinglePoint) {
  const auto cloud = one_point({0.3, 0.7});
  for (double d : dyadic_scales(0, 20)) EXPECT_EQ(box_count(cloud, d), 1u);
  EXPECT_THROW(box_count(PointCloud(2), 0.5), std::invalid_argument);
}

TEST(BoxCount, MiddleThirdsMatchesExactOracle) {
  const int g = 7;
  const auto exact = triadic_points(g);
  const auto cloud = self_similar_sample(SelfSimilarCantor(make_rational(1, 3)), g);
  ASSERT_EQ(cloud.size(), exact.size());
  for (int j = 0; j <= g; ++j) {
    const oracle::Q delta(1, static_cast<unsigned long>(std::pow(3, j)));
    const std::size_t expected = oracle::exact_box_count(exact, delta);
    EXPECT_EQ(expected, std::size_t{1} << j);
    EXPECT_EQ(box_count(cloud, delta.get_d()), expected) << j;
  }
}

TEST(BoxCount, DenseInterval) {
  const auto cloud = interval_sample(12);
  for (int i = 0; i <= 12; ++i) EXPECT_EQ(box_count(cloud, std::ldexp(1.0, -i)), std::size_t{1} << i);
}

TEST(BoxCount, ScaleHalvingBound) {
  const auto y = product_for_dimension(1.2);
  const auto cloud = product_sample(y, 6);
  const std::size_t m = cloud.dimension;
  for (int i = 0; i < 12; ++i) {
    const auto coarse = box_count(cloud, std::ldexp(1.0, -i));
    const auto fine = box_count(cloud, std::ldexp(1.0, -i - 1));
    EXPECT_GE(fine, coarse);
    EXPECT_LE(fine, (std::size_t{1} << m) * coarse);
  }
}

TEST(Estimate, SinglePointHasSlopeZero) {
  const auto cloud = one_point({0.5});
  const auto e = estimate_dimension(box_count_series(cloud, dyadic_scales(1, 6)));
  EXPECT_EQ(e.slope, 0.0);
  EXPECT_EQ(e.r_squared, 1.0);
}

TEST(Estimate, RejectsDegenerateInput) {
  BoxCountSeries two{EstimatorKind::box, {0.5, 0.25}, {2, 4}, 0.0};
  EXPECT_THROW(estimate_dimension(two), std::invalid_argument);
  BoxCountSeries flat{EstimatorKind::box, {0.5, 0.5, 0.5}, {2, 2, 2}, 0.0};
  EXPECT_THROW(estimate_dimension(flat), std::invalid_argument);
}

TEST(Estimate, MiddleThirdsWithinTolerance) {
  const int g = 12;
  const auto cloud = self_similar_sample(SelfSimilarCantor(make_rational(1, 3)), g);
  const double res = std::pow(3.0, -g);
  const auto series = box_count_series(cloud, dyadic_window(g, res), res);
  const auto e = estimate_dimension(series);
  EXPECT_NEAR(e.slope, fitted(series), 1e-12);
  EXPECT_NEAR(e.slope, kLog2Log3, 0.05);
  EXPECT_GE(e.r_squared, 0.0);
  EXPECT_LE(e.r_squared, 1.0);
}

TEST(Estimate, ProductWithinTolerance) {
  const int g = 12;
  const ProductCantor p{SelfSimilarCantor(make_rational(1, 3)), 2, 2 * kLog2Log3};
  const auto cloud = product_sample(p, g);
  const double res = std::pow(3.0, -g);
  const auto series = box_count_series(cloud, dyadic_window(g, res), res);
  EXPECT_NEAR(estimate_dimension(series).slope, fitted(series), 1e-12);
  EXPECT_NEAR(estimate_dimension(series).slope, 2 * kLog2Log3, 0.1);
}

TEST(Estimate, NestedWindowsTrendTowardTarget) {
  const int g = 14;
  const auto cloud = self_similar_sample(SelfSimilarCantor(make_rational(1, 4)), g);
  const double target = expected_self_similar_dimension(0.25);
  EXPECT_DOUBLE_EQ(target, 0.5);
  double previous_gap = INFINITY;
  for (int last = 8; last <= 26; last += 6) {
    const auto e = estimate_dimension(box_count_series(cloud, dyadic_scales(2, last), std::pow(4.0, -g)));
    const double gap = std::abs(e.slope - target);
    EXPECT_LE(gap, previous_gap + 1e-12) << last;
    previous_gap = gap;
  }
  EXPECT_LT(previous_gap, 0.03);
}

TEST(Estimate, RefusesScalesBelowResolution) {
  const int g = 6;
  const auto cloud = self_similar_sample(SelfSimilarCantor(make_rational(1, 3)), g);
  const double res = std::pow(3.0, -g);
  EXPECT_THROW(estimate_dimension(box_count_series(cloud, dyadic_scales(3, 14), res)), InsufficientDepth);
  EXPECT_THROW(dyadic_window(4, 1e-6), InsufficientDepth);
  EXPECT_THROW(net_window(0.05), InsufficientDepth);
  EXPECT_NO_THROW(estimate_dimension(box_count_series(cloud, dyadic_window(g, res), res)));
}

TEST(BallNet, WholeSpaceAtLargeRadius) {
  SnowflakeMetric m(0.5);
  const auto cloud = interval_sample(8);
  EXPECT_EQ(ball_net_count(m, cloud, 1.01), 1u);
  EXPECT_THROW(ball_net_count(m, PointCloud(1), 0.5), std::invalid_argument);
}

TEST(BallNet, MatchesGreedyOracle) {
  const auto space = RugSpace::snowflake(von_koch_exponent());
  const auto cloud = sample_rug(space, 24, 8);
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < cloud.size(); ++i) pts.emplace_back(cloud.point(i).begin(), cloud.point(i).end());
  auto d = [&](const std::vector<double>& a, const std::vector<double>& b) { return space.distance(a, b); };
  for (double r : {0.5, 0.3, 0.2, 0.12, 0.07}) EXPECT_EQ(ball_net_count(space, cloud, r), oracle::greedy_net(pts, r, d)) << r;
}

TEST(BallNet, SnowflakeCountNearPowerLaw) {
  for (double eps : {0.5, von_koch_exponent()}) {
    SnowflakeMetric m(eps);
    const auto cloud = interval_sample(12);
    for (double r : {0.4, 0.2, 0.1, 0.05}) {
      const double count = static_cast<double>(ball_net_count(m, cloud, r));
      const double law = std::pow(r, -1.0 / eps);
      EXPECT_LE(count, 4 * law) << eps << " " << r;
      EXPECT_GE(count, law / 4) << eps << " " << r;
    }
  }
}

TEST(BallNet, SandwichWithBoxCount) {
  const auto y = product_for_dimension(1.3);
  const auto cloud = product_sample(y, 5);
  EuclideanMetric e(cloud.dimension);
  const double bound = std::pow(2.0, static_cast<double>(cloud.dimension));
  for (int i = 2; i <= 6; ++i) {
    const double r = std::ldexp(1.0, -i);
    const double net = static_cast<double>(ball_net_count(e, cloud, r));
    const double box = static_cast<double>(box_count(cloud, r));
    EXPECT_LE(net, bound * box) << r;
    EXPECT_LE(box, bound * net) << r;
  }
}

TEST(BallNet, SnowflakeExponent) {
  for (double eps : {0.5, von_koch_exponent()}) {
    const int g = 12;
    SnowflakeMetric m(eps);
    const auto cloud = interval_sample(g);
    const double res = std::pow(std::ldexp(1.0, -g), eps);
    const auto e = estimate_dimension(ball_net_series(m, cloud, net_window(res), res));
    EXPECT_NEAR(e.slope, expected_snowflake_dimension(eps), 0.1) << eps;
    EXPECT_EQ(e.kind, EstimatorKind::ball_net);
  }
}

TEST(Expected, Values) {
  const auto unit = expected_dimensions(1.0);
  EXPECT_TRUE(unit.unit_interval);
  EXPECT_EQ(unit.hausdorff, 1.0);
  const auto fig = expected_dimensions(1.0 + kLog2Log3);
  EXPECT_FALSE(fig.unit_interval);
  EXPECT_NEAR(fig.hausdorff, 1.6309, 1e-4);
  EXPECT_NEAR(fig.product, 1 + kLog2Log3, 1e-15);
  EXPECT_NEAR(fig.conformal, 1 + kLog2Log3, 1e-15);
  EXPECT_NEAR(fig.d, kLog2Log3, 1e-15);
  EXPECT_NEAR(expected_rug_dimension(von_koch_exponent()), 2.2619, 1e-4);
  EXPECT_NEAR(expected_self_similar_dimension(1.0 / 3.0), kLog2Log3, 1e-15);
  EXPECT_THROW(expected_dimensions(0.5), std::invalid_argument);
  EXPECT_FALSE(box_dimension_caveat().empty());
}

TEST(Expected, UnitIntervalEstimate) {
  const int g = 12;
  const auto cloud = interval_sample(g);
  const double res = std::ldexp(1.0, -g);
  const auto e = estimate_dimension(box_count_series(cloud, dyadic_window(g, res), res));
  EXPECT_NEAR(e.slope, expected_dimensions(1.0).hausdorff, 0.05);
}

TEST(ArcEstimate, WindowAndRange) {
  ArcApproximation arc(RatioCantorSet(RatioSequence::dyadic()), SelfSimilarCantor(make_rational(1, 3)), 1);
  arc.build_through(3);
  const auto window = arc_window(arc);
  ASSERT_GE(window.size(), 3u);
  EXPECT_EQ(window.front(), 0.5);
  const auto e = estimate_dimension(box_count_series(arc_sample(arc), window));
  EXPECT_GE(e.slope, 1.0);
  EXPECT_LE(e.slope, 1 + kLog2Log3 + 0.15);
}
