#include "fractarc/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fractarc/errors.hpp"

namespace fractarc {

// ---------------------------------------------------------------- Address

bool Address::consistent() const {
  return std::all_of(words.begin(), words.end(),
                     [&](const BranchWord& w) { return w.size() == depth(); });
}

std::string Address::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out.push_back(',');
    for (auto bit : words[i]) out.push_back(bit ? '1' : '0');
  }
  return out;
}

Address Address::parse(std::string_view text) {
  Address address;
  address.words.emplace_back();
  for (char ch : text) {
    if (ch == ',') {
      address.words.emplace_back();
    } else if (ch == '0' || ch == '1') {
      address.words.back().push_back(static_cast<std::uint8_t>(ch - '0'));
    } else {
      throw std::invalid_argument("address characters must be 0, 1 or ','");
    }
  }
  if (!address.consistent()) throw std::invalid_argument("address words differ in length");
  return address;
}

Address Address::truncated(std::size_t depth) const {
  Address out = *this;
  for (auto& w : out.words) w.resize(std::min(depth, w.size()));
  return out;
}

Address Address::zeros(std::size_t dimension, std::size_t depth) {
  return Address{std::vector<BranchWord>(dimension, BranchWord(depth, 0))};
}

Address Address::ones(std::size_t dimension, std::size_t depth) {
  return Address{std::vector<BranchWord>(dimension, BranchWord(depth, 1))};
}

Address Address::random(std::size_t dimension, std::size_t depth, Sampler& sampler) {
  Address address = zeros(dimension, depth);
  for (auto& w : address.words) {
    for (auto& bit : w) bit = sampler.coin() ? 1 : 0;
  }
  return address;
}

// ---------------------------------------------------------- RatioSequence

RatioSequence RatioSequence::dyadic() { return RatioSequence(RatioFamily::dyadic, make_rational(1, 2)); }

RatioSequence RatioSequence::geometric(const Rational& q) {
  if (q <= 0 || q >= 1) throw std::invalid_argument("geometric ratio q must lie in (0, 1)");
  return RatioSequence(RatioFamily::geometric, q);
}

RatioSequence RatioSequence::harmonic() { return RatioSequence(RatioFamily::harmonic, Rational(0)); }

RatioSequence RatioSequence::parse(std::string_view spec) {
  if (spec == "dyadic") return dyadic();
  if (spec == "harmonic") return harmonic();
  constexpr std::string_view prefix = "geometric:";
  if (spec.substr(0, prefix.size()) == prefix) return geometric(parse_rational(spec.substr(prefix.size())));
  throw std::invalid_argument("unknown ratio family '" + std::string(spec) +
                              "' (expected dyadic, harmonic or geometric:<q>)");
}

std::string RatioSequence::spec() const {
  switch (family_) {
    case RatioFamily::dyadic:
      return "dyadic";
    case RatioFamily::harmonic:
      return "harmonic";
    case RatioFamily::geometric:
      return "geometric:" + parameter_.get_str();
  }
  return "dyadic";
}

Rational RatioSequence::at(int i) const {
  if (i < 1) throw std::out_of_range("ratio index starts at 1");
  switch (family_) {
    case RatioFamily::dyadic:
      return fractarc::dyadic(static_cast<unsigned>(i));
    case RatioFamily::geometric:
      return power(parameter_, static_cast<unsigned>(i));
    case RatioFamily::harmonic:
      return make_rational(1, i + 1);
  }
  return Rational(0);
}

double RatioSequence::at_double(int i) const {
  if (i < 1) throw std::out_of_range("ratio index starts at 1");
  switch (family_) {
    case RatioFamily::dyadic:
      return std::ldexp(1.0, -i);
    case RatioFamily::geometric:
      return std::pow(parameter_.get_d(), i);
    case RatioFamily::harmonic:
      return 1.0 / (i + 1.0);
  }
  return 0.0;
}

void RatioSequence::validate(int prefix, double tolerance) const {
  if (prefix < 1) throw std::invalid_argument("validation prefix must be positive");
  Rational c1 = at(1);
  if (c1 <= 0 || c1 >= 1) throw std::invalid_argument("c_1 must lie in (0, 1)");
  double previous = at_double(1);
  for (int i = 2; i <= prefix; ++i) {
    double c = at_double(i);
    // Geometric families underflow to 0 in double far out; that still means c_i -> 0.
    if (c < 0.0 || c >= 1.0) throw std::invalid_argument("ratio c_i outside [0, 1)");
    if (c > previous) throw std::invalid_argument("ratio sequence is not non-increasing");
    previous = c;
  }
  if (!(previous < tolerance)) {
    throw std::invalid_argument("ratio sequence does not approach 0 within the checked prefix");
  }
}

// ------------------------------------------------------------ BinaryCantor

namespace detail {

BinaryCantor::BinaryCantor(std::vector<Rational> lengths, int budget)
    : lengths_(std::move(lengths)), budget_(budget) {
  if (budget_ < 0) throw std::invalid_argument("generation budget must be non-negative");
  lefts_.push_back({Rational(0)});
}

const Rational& BinaryCantor::length(int k) const {
  if (k < 0 || k > length_horizon()) throw std::out_of_range("generation outside the length table");
  return lengths_[static_cast<std::size_t>(k)];
}

void BinaryCantor::build_through(int k) {
  if (k < 0) throw std::out_of_range("negative generation");
  if (k > budget_) throw BudgetExceeded("Cantor generation budget exceeded", k, budget_);
  if (k > length_horizon()) throw std::out_of_range("generation outside the length table");
  Rational shift;
  for (int g = built_generation() + 1; g <= k; ++g) {
    const auto& parents = lefts_.back();
    shift = lengths_[g - 1] - lengths_[g];
    std::vector<Rational> children;
    children.reserve(parents.size() * 2);
    for (const auto& left : parents) {
      children.push_back(left);
      children.emplace_back(left + shift);
    }
    lefts_.push_back(std::move(children));
  }
}

const std::vector<Rational>& BinaryCantor::left_endpoints(int k) const {
  if (k < 0 || k > built_generation()) throw std::out_of_range("generation not built");
  return lefts_[static_cast<std::size_t>(k)];
}

CantorInterval BinaryCantor::interval(int k, std::size_t j) const {
  const auto& lefts = left_endpoints(k);
  if (j < 1 || j > lefts.size()) throw std::out_of_range("interval index outside 1..2^k");
  return CantorInterval{k, j, lefts[j - 1], lefts[j - 1] + length(k)};
}

std::vector<CantorInterval> BinaryCantor::intervals(int k) const {
  const auto& lefts = left_endpoints(k);
  const Rational& len = length(k);
  std::vector<CantorInterval> out;
  out.reserve(lefts.size());
  for (std::size_t j = 0; j < lefts.size(); ++j) {
    out.push_back(CantorInterval{k, j + 1, lefts[j], lefts[j] + len});
  }
  return out;
}

std::vector<Rational> BinaryCantor::endpoints(int k) const {
  const auto& lefts = left_endpoints(k);
  const Rational& len = length(k);
  std::vector<Rational> out;
  out.reserve(lefts.size() * 2);
  for (const auto& left : lefts) {
    out.push_back(left);
    out.emplace_back(left + len);
  }
  return out;
}

Rational BinaryCantor::point(const BranchWord& word) const {
  if (static_cast<int>(word.size()) > length_horizon()) throw std::out_of_range("address deeper than length table");
  Rational x = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i]) x += lengths_[i] - lengths_[i + 1];
  }
  return x;
}

}  // namespace detail

// ---------------------------------------------------------- RatioCantorSet

namespace {

constexpr int kMinimumLengthHorizon = 64;

std::vector<Rational> ratio_lengths(const RatioSequence& ratios, int horizon) {
  std::vector<Rational> lengths{Rational(1)};
  lengths.reserve(static_cast<std::size_t>(horizon) + 1);
  for (int k = 1; k <= horizon; ++k) {
    lengths.emplace_back(lengths.back() * (1 - ratios.at(k)) / 2);
  }
  return lengths;
}

std::vector<Rational> geometric_lengths(const Rational& r, int horizon) {
  std::vector<Rational> lengths{Rational(1)};
  for (int k = 1; k <= horizon; ++k) lengths.emplace_back(lengths.back() * r);
  return lengths;
}

}  // namespace

RatioCantorSet::RatioCantorSet(RatioSequence ratios, int generation_budget)
    : ratios_((ratios.validate(), std::move(ratios))),
      cantor_(ratio_lengths(ratios_, std::max(generation_budget, kMinimumLengthHorizon)), generation_budget) {}

Rational RatioCantorSet::length(int k) const {
  if (k >= 0 && k <= cantor_.length_horizon()) return cantor_.length(k);
  if (k < 0) throw std::out_of_range("negative generation");
  Rational s = cantor_.length(cantor_.length_horizon());
  for (int i = cantor_.length_horizon() + 1; i <= k; ++i) s = s * (1 - ratios_.at(i)) / 2;
  return s;
}

double RatioCantorSet::finite_dimension_exponent(int k) const {
  if (k <= 0) return 0.0;
  // ln s_k = sum ln(1 - c_i) - k ln 2, accumulated in double to avoid underflow.
  double log_product = 0.0;
  for (int i = 1; i <= k; ++i) log_product += std::log1p(-ratios_.at_double(i));
  const double log_inverse_length = k * std::log(2.0) - log_product;
  return k * std::log(2.0) / log_inverse_length;
}

std::vector<CantorInterval> generation_intervals(RatioCantorSet& set, int k) {
  set.build_through(k);
  return set.intervals(k);
}

// ------------------------------------------------------- SelfSimilarCantor

SelfSimilarCantor::SelfSimilarCantor(Rational ratio, int generation_budget)
    : ratio_(std::move(ratio)),
      cantor_((ratio_ > 0 && ratio_ * 2 < 1)
                  ? geometric_lengths(ratio_, std::max(generation_budget, kMinimumLengthHorizon))
                  : throw std::invalid_argument("self-similar ratio must lie in (0, 1/2)"),
              generation_budget) {}

double SelfSimilarCantor::dimension() const { return std::log(2.0) / -std::log(ratio_.get_d()); }

Rational SelfSimilarCantor::length(int k) const {
  if (k < 0) throw std::out_of_range("negative generation");
  if (k <= cantor_.length_horizon()) return cantor_.length(k);
  return power(ratio_, static_cast<unsigned>(k));
}

SelfSimilarCantor scaling_for_dimension(double b, int generation_budget) {
  if (!std::isfinite(b) || b <= 0.0 || b >= 1.0) {
    throw std::invalid_argument("self-similar dimension must lie in (0, 1)");
  }
  const double target = std::exp2(-1.0 / b);
  auto reproduces = [b](const Rational& r) {
    if (r <= 0 || r * 2 >= 1) return false;
    const double dim = std::log(2.0) / -std::log(r.get_d());
    return std::abs(dim - b) <= 1e-13;
  };
  return SelfSimilarCantor(rationalize(target, reproduces), generation_budget);
}

ProductCantor product_for_dimension(double a, int generation_budget) {
  if (!std::isfinite(a) || a <= 0.0) {
    throw std::invalid_argument("product dimension must be positive and finite");
  }
  // Least positive N with a / N < 1.
  int copies = static_cast<int>(std::floor(a)) + 1;
  while (copies > 1 && a / (copies - 1) < 1.0) --copies;
  while (!(a / copies < 1.0)) ++copies;
  return ProductCantor{scaling_for_dimension(a / copies, generation_budget), copies, a};
}

// ------------------------------------------------------ uniform perfectness

Rational uniform_perfectness_constant(const RatioCantorSet& set) {
  Rational k = 2 / (1 - set.ratios().sup());
  k.canonicalize();
  return k;
}

PerfectnessReport verify_uniform_perfectness(const RatioCantorSet& set,
                                             std::span<const BallSample> samples, int depth) {
  PerfectnessReport report;
  report.constant = uniform_perfectness_constant(set);
  report.depth = depth;
  const std::vector<Rational> points = set.endpoints(depth);
  const Rational four_k = 4 * report.constant;

  Rational inner, upper, lower;
  for (const auto& sample : samples) {
    if (sample.r <= 0) throw std::invalid_argument("perfectness radius must be positive");
    if (!std::binary_search(points.begin(), points.end(), sample.x)) {
      throw std::invalid_argument("perfectness center is not an endpoint of the given generation");
    }
    PerfectnessWitness result;
    const Rational& x = sample.x;
    const Rational& r = sample.r;
    if (r > x && r > 1 - x) {
      result.status = WitnessStatus::vacuous;
      report.results.push_back(std::move(result));
      ++report.vacuous;
      continue;
    }
    inner = r / four_k;
    upper = x + r;
    lower = x - r;
    // Farthest endpoint still inside the open ball, on either side of x.
    auto right = std::lower_bound(points.begin(), points.end(), upper);
    auto left = std::upper_bound(points.begin(), points.end(), lower);
    Rational best_distance = -1;
    Rational best_point;
    if (right != points.begin()) {
      const Rational& a = *std::prev(right);
      Rational d = a - x;
      if (d > best_distance) {
        best_distance = d;
        best_point = a;
      }
    }
    if (left != points.end()) {
      const Rational& a = *left;
      Rational d = x - a;
      if (d > best_distance) {
        best_distance = d;
        best_point = a;
      }
    }
    if (best_distance >= inner) {
      result.status = WitnessStatus::witness;
      result.point = best_point;
      result.distance = best_distance;
      ++report.witnessed;
    } else {
      ++report.inconclusive;
    }
    report.results.push_back(std::move(result));
  }
  return report;
}

std::vector<BallSample> sample_endpoint_radii(const RatioCantorSet& set, int depth,
                                                     std::size_t count, Sampler& sampler,
                                                     double r_min, double r_max) {
  const auto& lefts = set.left_endpoints(depth);
  const Rational& len = set.length(depth);
  std::vector<BallSample> samples;
  samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Rational& left = lefts[sampler.below(lefts.size())];
    Rational x = sampler.coin() ? Rational(left + len) : left;
    samples.push_back({std::move(x), rational_from_double(sampler.log_uniform(r_min, r_max))});
  }
  return samples;
}

}  // namespace fractarc
