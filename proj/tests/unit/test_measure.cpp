#include <gtest/gtest.h>

#include <cmath>

#include "fractarc/measure.hpp"
#include "oracles.hpp"

using namespace fractarc;

namespace {

struct Built {
  RatioCantorSet set{RatioSequence::dyadic()};
  explicit Built(int k) { set.build_through(k); }
};

/// a_k evaluated straight from its definition with long double products.
double a_oracle(double eps, int k) {
  long double prod = 1.0L;
  for (int i = 1; i <= k; ++i) prod *= 1.0L - std::ldexp(1.0L, -i);
  return static_cast<double>(6.0L * std::pow(2.0L, -k * static_cast<long double>(eps)) /
                             std::pow(prod, 1.0L - static_cast<long double>(eps)));
}

}  // namespace

TEST(NaturalMeasure, IntervalMasses) {
  Built b(5);
  NaturalMeasure mu(b.set, 5);
  EXPECT_EQ(mu.interval_mass(0, 1), 1);
  for (std::size_t j = 1; j <= 8; ++j) EXPECT_EQ(mu.interval_mass(3, j), make_rational(1, 8));
  Rational total = 0;
  for (std::size_t j = 1; j <= 32; ++j) total += mu.interval_mass(5, j);
  EXPECT_EQ(total, 1);
  EXPECT_THROW(mu.interval_mass(3, 9), std::out_of_range);
  EXPECT_THROW(mu.interval_mass(6, 1), std::out_of_range);
}

TEST(NaturalMeasure, RequiresBuiltDepth) {
  RatioCantorSet e(RatioSequence::dyadic());
  EXPECT_THROW(NaturalMeasure(e, 3), std::invalid_argument);
}

TEST(BallMass, SpecExamples) {
  Built b(4);
  NaturalMeasure mu(b.set, 4);
  const auto whole = mu.ball_mass(make_rational(1, 2), Rational(2), 4);
  EXPECT_EQ(whole.lower, 1);
  EXPECT_EQ(whole.upper, 1);
  const auto first = mu.ball_mass(Rational(0), make_rational(1, 4) + make_rational(1, 1000000), 1);
  EXPECT_EQ(first.lower, make_rational(1, 2));
  EXPECT_EQ(first.upper, make_rational(1, 2));
  const Rational s2 = b.set.length(2);
  const auto small = mu.ball_mass(Rational(0), s2, 4);
  const auto intervals = oracle::cantor_intervals(oracle::dyadic_ratios(4), 4);
  const auto [inside, meeting] = oracle::ball_counts(intervals, Rational(0), s2);
  EXPECT_EQ(small.lower, make_rational(static_cast<long>(inside), 16));
  EXPECT_EQ(small.upper, make_rational(static_cast<long>(meeting), 16));
  EXPECT_GE(small.lower, s2 / 2);
}

TEST(BallMass, MatchesBruteForceAndWidthBound) {
  Built b(10);
  NaturalMeasure mu(b.set, 10);
  Sampler sampler(5);
  const auto samples = sample_endpoint_radii(b.set, 10, 200, sampler, b.set.length(10).get_d(), 1.0);
  for (int k : {3, 6, 10}) {
    const auto intervals = oracle::cantor_intervals(oracle::dyadic_ratios(k), k);
    const Rational unit = dyadic(static_cast<unsigned>(k));
    for (const auto& s : samples) {
      const auto bracket = mu.ball_mass(s.x, s.r, k);
      const auto [inside, meeting] = oracle::ball_counts(intervals, s.x, s.r);
      EXPECT_EQ(bracket.lower, unit * static_cast<unsigned long>(inside));
      EXPECT_EQ(bracket.upper, unit * static_cast<unsigned long>(meeting));
      EXPECT_LE(bracket.lower, bracket.upper);
      EXPECT_LE(bracket.width(), 2 * unit);
    }
  }
}

TEST(BallMass, MonotoneRefinement) {
  Built b(12);
  NaturalMeasure mu(b.set, 12);
  Sampler sampler(17);
  const auto samples = sample_endpoint_radii(b.set, 12, 100, sampler, 1e-4, 1.0);
  for (const auto& s : samples) {
    auto previous = mu.ball_mass(s.x, s.r, 0);
    for (int k = 1; k <= 12; ++k) {
      const auto next = mu.ball_mass(s.x, s.r, k);
      EXPECT_GE(next.lower, previous.lower);
      EXPECT_LE(next.upper, previous.upper);
      previous = next;
    }
  }
}

TEST(ASequence, ValuesAndRatios) {
  RatioCantorSet e(RatioSequence::dyadic());
  const auto seq = a_sequence(e, 0.5, 40);
  EXPECT_DOUBLE_EQ(seq.values[0], 6.0);
  EXPECT_NEAR(seq.values[1], 6.0, 1e-12);
  for (double eps : {0.5, 0.25, 0.1}) {
    const auto s = a_sequence(e, eps, 40);
    for (int k = 0; k <= 40; ++k) EXPECT_NEAR(s.values[k], a_oracle(eps, k), 1e-12 * a_oracle(eps, k));
    for (int k = 0; k < 40; ++k) {
      EXPECT_NEAR(s.ratios[k], s.values[k + 1] / s.values[k], 1e-12);
      if (k > 0) {
        EXPECT_LE(s.ratios[k], s.ratios[k - 1] + 1e-15);
      }
    }
    EXPECT_NEAR(s.ratios.back(), std::exp2(-eps), 1e-6);
    EXPECT_LT(s.values.back(), s.values.front());
  }
}

TEST(ASequence, SupremumAndConstant) {
  RatioCantorSet e(RatioSequence::dyadic());
  for (double eps : {0.5, 0.25, 0.1}) {
    double brute = 0.0;
    for (int k = 0; k <= 200; ++k) brute = std::max(brute, a_oracle(eps, k));
    EXPECT_NEAR(a_sequence_supremum(e, eps), brute, 1e-12 * brute);
    EXPECT_DOUBLE_EQ(mass_bound_constant(e, eps), std::max(2.0, a_sequence_supremum(e, eps)));
  }
  EXPECT_THROW(a_sequence(e, 0.0, 5), std::invalid_argument);
  EXPECT_THROW(a_sequence(e, 1.0, 5), std::invalid_argument);
}

TEST(MassBounds, CertificateAtResolution16) {
  Built b(16);
  NaturalMeasure mu(b.set, 16);
  Sampler sampler(2024);
  const auto samples = sample_endpoint_radii(b.set, 16, 1000, sampler, b.set.length(16).get_d(), 1.0);
  const auto cert = verify_mass_bounds(mu, 0.1, samples, 16);
  EXPECT_TRUE(cert.valid()) << cert.failure;
  EXPECT_EQ(cert.samples, 1000u);
  EXPECT_GE(cert.worst_lower_margin, 1.0);
  EXPECT_GE(cert.worst_upper_margin, 1.0);
}

TEST(MassBounds, WholeSetAndLowerBound) {
  Built b(8);
  NaturalMeasure mu(b.set, 8);
  std::vector<BallSample> whole{{Rational(0), make_rational(999, 1000)}};
  const auto cert = verify_mass_bounds(mu, 0.5, whole, 8);
  EXPECT_TRUE(cert.valid());
  Sampler sampler(3);
  for (const auto& s : sample_endpoint_radii(b.set, 8, 200, sampler, 0.01, 1.0)) {
    // One generation-k interval with s_k < r sits inside the ball around its own endpoint.
    const auto scale = radius_scale(b.set, s.x, s.r);
    if (scale.k > 8) continue;
    const auto bracket = mu.ball_mass(s.x, s.r, 8);
    EXPECT_GE(bracket.lower.get_d(), s.r.get_d() / 2.0 * (1 - 1e-12)) << s.x.get_str() << " " << s.r.get_str();
  }
}

TEST(MassBounds, RejectsBadInput) {
  Built b(6);
  NaturalMeasure mu(b.set, 6);
  std::vector<BallSample> too_big{{Rational(0), Rational(1)}};
  EXPECT_THROW(verify_mass_bounds(mu, 0.5, too_big, 6), std::invalid_argument);
  std::vector<BallSample> fine{{Rational(0), make_rational(1, 2)}};
  EXPECT_THROW(verify_mass_bounds(mu, 1.5, fine, 6), std::invalid_argument);
}

TEST(RadiusScale, DoublingAndThreeIntervals) {
  Built b(18);
  Sampler sampler(8);
  const auto samples = sample_endpoint_radii(b.set, 16, 1000, sampler, b.set.length(16).get_d(), 1.0);
  std::vector<std::vector<std::pair<oracle::Q, oracle::Q>>> coarse;
  for (int k = 0; k <= 10; ++k) coarse.push_back(oracle::cantor_intervals(oracle::dyadic_ratios(k), k));
  std::size_t compared = 0;
  for (const auto& s : samples) {
    const auto scale = radius_scale(b.set, s.x, s.r);
    EXPECT_LT(b.set.length(scale.k), s.r);
    EXPECT_GE(b.set.length(scale.k - 1), s.r);
    EXPECT_TRUE(scale.doubling_bound_holds);
    EXPECT_LE(scale.coarse_intervals_meeting, 3u);
    if (scale.k - 1 <= 10) {
      EXPECT_EQ(scale.coarse_intervals_meeting, oracle::ball_counts(coarse[scale.k - 1], s.x, s.r).second);
      ++compared;
    }
  }
  EXPECT_GT(compared, 100u);
}
