#include "fractarc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fractarc {

namespace {

/// Indices [first, last) of generation-k intervals meeting the open ball, and
/// [inner_first, inner_last) of those contained in it.
struct BallRange {
  std::size_t first = 0, last = 0;
  std::size_t inner_first = 0, inner_last = 0;
};

BallRange ball_range(const std::vector<Rational>& lefts, const Rational& len, const Rational& x,
                     const Rational& r) {
  BallRange range;
  const Rational lo = x - r;
  const Rational hi = x + r;
  // Meets: left < x + r and left + len > x - r.
  const Rational meet_floor = lo - len;
  range.first = static_cast<std::size_t>(
      std::upper_bound(lefts.begin(), lefts.end(), meet_floor) - lefts.begin());
  range.last = static_cast<std::size_t>(std::lower_bound(lefts.begin(), lefts.end(), hi) - lefts.begin());
  // Inside: left > x - r and left + len < x + r.
  const Rational inside_ceiling = hi - len;
  range.inner_first = static_cast<std::size_t>(
      std::upper_bound(lefts.begin(), lefts.end(), lo) - lefts.begin());
  range.inner_last = static_cast<std::size_t>(
      std::lower_bound(lefts.begin(), lefts.end(), inside_ceiling) - lefts.begin());
  if (range.inner_last < range.inner_first) range.inner_last = range.inner_first;
  if (range.last < range.first) range.last = range.first;
  return range;
}

}  // namespace

NaturalMeasure::NaturalMeasure(const RatioCantorSet& set, int depth) : set_(&set), depth_(depth) {
  if (depth < 0) throw std::invalid_argument("measure depth must be non-negative");
  if (set.built_generation() < depth) throw std::invalid_argument("Cantor set not built to the measure depth");
}

Rational NaturalMeasure::interval_mass(int k, std::size_t j) const {
  if (k < 0 || k > depth_) throw std::out_of_range("generation outside the measure depth");
  const std::size_t count = std::size_t{1} << k;
  if (j < 1 || j > count) throw std::out_of_range("unknown interval");
  return dyadic(static_cast<unsigned>(k));
}

BallMassBracket NaturalMeasure::ball_mass(const Rational& x, const Rational& r, int k) const {
  if (r <= 0) throw std::invalid_argument("ball radius must be positive");
  if (k < 0 || k > depth_) throw std::out_of_range("resolution outside the measure depth");
  const auto& lefts = set_->left_endpoints(k);
  const BallRange range = ball_range(lefts, set_->length(k), x, r);
  const Rational unit = dyadic(static_cast<unsigned>(k));
  BallMassBracket bracket;
  bracket.center = x;
  bracket.radius = r;
  bracket.resolution = k;
  bracket.lower = unit * static_cast<unsigned long>(range.inner_last - range.inner_first);
  bracket.upper = unit * static_cast<unsigned long>(range.last - range.first);
  return bracket;
}

ASequence a_sequence(const RatioCantorSet& set, double epsilon, int k_max) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (k_max < 0) throw std::invalid_argument("k_max must be non-negative");
  ASequence seq;
  seq.epsilon = epsilon;
  const double ln2 = std::log(2.0);
  double log_prod = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) log_prod += std::log1p(-set.ratios().at_double(k));
    const double value = std::exp(std::log(6.0) - k * epsilon * ln2 - (1.0 - epsilon) * log_prod);
    seq.values.push_back(value);
    if (value > seq.maximum) {
      seq.maximum = value;
      seq.argmax = k;
    }
  }
  for (int k = 0; k < k_max; ++k) {
    const double c = set.ratios().at_double(k + 1);
    seq.ratios.push_back(std::exp2(-epsilon) / std::pow(1.0 - c, 1.0 - epsilon));
  }
  return seq;
}

double a_sequence_supremum(const RatioCantorSet& set, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  constexpr int kScanLimit = 1 << 22;
  const double ln2 = std::log(2.0);
  double log_prod = 0.0;
  double best = 6.0;
  for (int k = 0; k < kScanLimit; ++k) {
    const double c = set.ratios().at_double(k + 1);
    const double ratio = std::exp2(-epsilon) / std::pow(1.0 - c, 1.0 - epsilon);
    log_prod += std::log1p(-c);
    const double next = std::exp(std::log(6.0) - (k + 1) * epsilon * ln2 - (1.0 - epsilon) * log_prod);
    best = std::max(best, next);
    if (ratio < 1.0) return best;
  }
  throw std::runtime_error("a_k did not start decreasing within the scan limit");
}

double mass_bound_constant(const RatioCantorSet& set, double epsilon) {
  return std::max(2.0, a_sequence_supremum(set, epsilon));
}

MassBoundCertificate verify_mass_bounds(const NaturalMeasure& measure, double epsilon,
                                        std::span<const BallSample> samples, int k) {
  MassBoundCertificate cert;
  cert.epsilon = epsilon;
  cert.constant = mass_bound_constant(measure.set(), epsilon);
  cert.resolution = k;
  cert.samples = samples.size();
  cert.worst_lower_margin = std::numeric_limits<double>::infinity();
  cert.worst_upper_margin = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (s.r <= 0 || s.r >= 1) throw std::invalid_argument("mass-bound radius must lie in (0, diam E)");
    const BallMassBracket bracket = measure.ball_mass(s.x, s.r, k);
    const double r = s.r.get_d();
    const double lower = bracket.lower.get_d();
    const double upper = bracket.upper.get_d();
    const double floor_bound = std::pow(r, 1.0 + epsilon) / cert.constant;
    const double ceiling_bound = cert.constant * std::pow(r, 1.0 - epsilon);

    cert.worst_lower_margin = std::min(cert.worst_lower_margin, lower / floor_bound);
    cert.worst_upper_margin = std::min(cert.worst_upper_margin,
                                       upper > 0.0 ? ceiling_bound / upper
                                                   : std::numeric_limits<double>::infinity());

    const bool lower_ok = lower >= floor_bound;
    const bool lower_broken = upper < floor_bound;
    const bool upper_ok = upper <= ceiling_bound;
    const bool upper_broken = lower > ceiling_bound;

    if (lower_broken || upper_broken) {
      ++cert.failed;
      if (!cert.offending) {
        cert.offending = i;
        cert.failure = std::string(lower_broken ? "lower" : "upper") + " mass bound violated at x=" +
                       s.x.get_str() + " r=" + std::to_string(r) + " bracket=[" +
                       std::to_string(lower) + ", " + std::to_string(upper) + "]";
      }
    } else if (lower_ok && upper_ok) {
      ++cert.passed;
    } else {
      ++cert.inconclusive;
      if (!cert.offending) {
        cert.offending = i;
        cert.failure = "bracket too wide to decide at x=" + s.x.get_str() + " r=" + std::to_string(r) +
                       "; deepen the resolution";
      }
    }
  }
  return cert;
}

RadiusScale radius_scale(const RatioCantorSet& set, const Rational& x, const Rational& r) {
  if (r <= 0 || r > 1) throw std::invalid_argument("radius must lie in (0, 1]");
  RadiusScale scale;
  int k = 1;
  while (!(set.length(k) < r)) ++k;
  scale.k = k;

  Rational product = 1;
  for (int i = 1; i < k; ++i) product *= 1 - set.ratios().at(i);
  const Rational ratio = product / set.length(k - 1);
  const Rational power_of_two = power(Rational(2), static_cast<unsigned>(k - 1));
  scale.doubling_bound_holds = (ratio == power_of_two) && (power_of_two <= 1 / r);

  const auto& lefts = set.left_endpoints(k - 1);
  const BallRange range = ball_range(lefts, set.length(k - 1), x, r);
  scale.coarse_intervals_meeting = range.last - range.first;
  return scale;
}

}  // namespace fractarc
