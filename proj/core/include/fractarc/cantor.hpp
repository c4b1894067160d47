#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fractarc/rational.hpp"
#include "fractarc/sampling.hpp"

namespace fractarc {

/// Largest generation a Cantor set will materialize unless told otherwise.
/// Interval counts double per generation.
inline constexpr int kDefaultGenerationBudget = 20;

/// A branch word: bit 0 picks the left child, bit 1 the right child.
using BranchWord = std::vector<std::uint8_t>;

/// Canonical name of a generation-k cell in a product of binary Cantor sets:
/// one branch word per coordinate, all of length k.
struct Address {
  std::vector<BranchWord> words;

  std::size_t dimension() const { return words.size(); }
  std::size_t depth() const { return words.empty() ? 0 : words.front().size(); }
  /// Word lengths agree across coordinates.
  bool consistent() const;
  /// "0110,1001"
  std::string to_string() const;
  static Address parse(std::string_view text);
  /// Prefix of every word, truncated to `depth`.
  Address truncated(std::size_t depth) const;

  static Address zeros(std::size_t dimension, std::size_t depth);
  static Address ones(std::size_t dimension, std::size_t depth);
  static Address random(std::size_t dimension, std::size_t depth, Sampler& sampler);

  friend bool operator==(const Address&, const Address&) = default;
};

enum class RatioFamily { dyadic, geometric, harmonic };

/// The removal ratios c_1, c_2, ... of a middle-interval Cantor set.
///
/// Each c_i lies in (0, 1), the sequence is non-increasing and tends to zero.
/// Families are chosen so every c_i is an exact rational:
///   dyadic      c_i = 2^{-i}
///   geometric   c_i = q^i, q rational in (0, 1)
///   harmonic    c_i = 1 / (i + 1)
class RatioSequence {
 public:
  static RatioSequence dyadic();
  static RatioSequence geometric(const Rational& q);
  static RatioSequence harmonic();
  /// Accepts "dyadic", "harmonic" or "geometric:<q>".
  static RatioSequence parse(std::string_view spec);

  RatioFamily family() const { return family_; }
  const Rational& parameter() const { return parameter_; }
  /// Inverse of parse().
  std::string spec() const;

  /// c_i for i >= 1.
  Rational at(int i) const;
  double at_double(int i) const;
  /// sup_i c_i, which is c_1 for a non-increasing sequence.
  Rational sup() const { return at(1); }

  /// Checks the invariants on the prefix 1..prefix: each c_i in (0,1),
  /// c_{i+1} <= c_i, and c_prefix < tolerance. Throws std::invalid_argument.
  void validate(int prefix = 4096, double tolerance = 1e-3) const;

 private:
  RatioSequence(RatioFamily family, Rational parameter)
      : family_(family), parameter_(std::move(parameter)) {}

  RatioFamily family_;
  Rational parameter_;
};

/// Closed interval [a, b] of generation k; `index` is the 1-based j of I_{k,j}.
struct CantorInterval {
  int generation = 0;
  std::size_t index = 1;
  Rational a;
  Rational b;

  Rational length() const { return b - a; }
};

namespace detail {

/// Shared machinery of two-branch Cantor constructions: every generation-k
/// interval has length lengths[k], and the two children of a parent sit flush
/// against its endpoints.
class BinaryCantor {
 public:
  BinaryCantor(std::vector<Rational> lengths, int budget);

  int budget() const { return budget_; }
  int built_generation() const { return static_cast<int>(lefts_.size()) - 1; }
  const Rational& length(int k) const;
  int length_horizon() const { return static_cast<int>(lengths_.size()) - 1; }

  void build_through(int k);
  const std::vector<Rational>& left_endpoints(int k) const;
  CantorInterval interval(int k, std::size_t j) const;
  std::vector<CantorInterval> intervals(int k) const;
  /// Every endpoint of generation k in increasing order (2^{k+1} values).
  std::vector<Rational> endpoints(int k) const;
  /// Left endpoint of the interval named by `word` (generation = word length).
  Rational point(const BranchWord& word) const;

 private:
  std::vector<Rational> lengths_;
  std::vector<std::vector<Rational>> lefts_;
  int budget_;
};

}  // namespace detail

/// The set E built from a ratio sequence: generation-k intervals I_{k,j} have
/// length s_k = prod_{i<=k}(1 - c_i) / 2^k and E = intersection of the E_k.
class RatioCantorSet {
 public:
  explicit RatioCantorSet(RatioSequence ratios, int generation_budget = kDefaultGenerationBudget);

  const RatioSequence& ratios() const { return ratios_; }
  int generation_budget() const { return cantor_.budget(); }
  int built_generation() const { return cantor_.built_generation(); }

  /// s_k, exact. Lengths are precomputed well past the generation budget.
  Rational length(int k) const;

  /// Materializes generations up to k. Throws BudgetExceeded past the budget.
  void build_through(int k) { cantor_.build_through(k); }
  const std::vector<Rational>& left_endpoints(int k) const { return cantor_.left_endpoints(k); }
  CantorInterval interval(int k, std::size_t j) const { return cantor_.interval(k, j); }
  std::vector<CantorInterval> intervals(int k) const { return cantor_.intervals(k); }
  std::vector<Rational> endpoints(int k) const { return cantor_.endpoints(k); }
  Rational point(const BranchWord& word) const { return cantor_.point(word); }

  /// k ln 2 / ln(1/s_k): the exponent a generation-k cover suggests.
  double finite_dimension_exponent(int k) const;

 private:
  RatioSequence ratios_;
  detail::BinaryCantor cantor_;
};

/// Generation-k intervals in increasing order, building (and caching) as needed.
std::vector<CantorInterval> generation_intervals(RatioCantorSet& set, int k);

/// Two-branch self-similar Cantor set K_b with scaling ratio r in (0, 1/2);
/// generation-k intervals have length r^k and dim_H = ln 2 / ln(1/r).
class SelfSimilarCantor {
 public:
  explicit SelfSimilarCantor(Rational ratio, int generation_budget = kDefaultGenerationBudget);

  const Rational& ratio() const { return ratio_; }
  double dimension() const;
  int generation_budget() const { return cantor_.budget(); }
  int built_generation() const { return cantor_.built_generation(); }

  Rational length(int k) const;
  void build_through(int k) { cantor_.build_through(k); }
  const std::vector<Rational>& left_endpoints(int k) const { return cantor_.left_endpoints(k); }
  CantorInterval interval(int k, std::size_t j) const { return cantor_.interval(k, j); }
  std::vector<CantorInterval> intervals(int k) const { return cantor_.intervals(k); }
  std::vector<Rational> endpoints(int k) const { return cantor_.endpoints(k); }
  Rational point(const BranchWord& word) const { return cantor_.point(word); }

 private:
  Rational ratio_;
  detail::BinaryCantor cantor_;
};

/// Self-similar set of dimension b: r = 2^{-1/b}, rationalized so that
/// ln 2 / ln(1/r) reproduces b within 1e-12. Requires 0 < b < 1.
SelfSimilarCantor scaling_for_dimension(double b, int generation_budget = kDefaultGenerationBudget);

/// K_a as the N-fold product of one self-similar factor.
struct ProductCantor {
  SelfSimilarCantor factor;
  int copies = 1;
  double target = 0.0;

  double dimension() const { return copies * factor.dimension(); }
};

/// N = least positive integer with a/N < 1, factor = scaling_for_dimension(a/N).
/// Requires a finite and positive.
ProductCantor product_for_dimension(double a, int generation_budget = kDefaultGenerationBudget);

/// K = 2 / (1 - sup_i c_i).
Rational uniform_perfectness_constant(const RatioCantorSet& set);

/// A center x in E and a radius r > 0: the ball B(x, r).
struct BallSample {
  Rational x;
  Rational r;
};

enum class WitnessStatus { witness, vacuous, inconclusive };

struct PerfectnessWitness {
  WitnessStatus status = WitnessStatus::inconclusive;
  Rational point;     ///< the witness a, when status == witness
  Rational distance;  ///< |x - a|
};

struct PerfectnessReport {
  Rational constant;  ///< K
  int depth = 0;
  std::vector<PerfectnessWitness> results;
  std::size_t witnessed = 0;
  std::size_t vacuous = 0;
  std::size_t inconclusive = 0;

  bool all_conclusive() const { return inconclusive == 0; }
};

/// For each (x, r) looks for an endpoint a of generation `depth` with
/// r/(4K) <= |x - a| < r, or notes that B(x, r) swallows [0, 1].
/// Each x must itself be a generation-`depth` endpoint.
PerfectnessReport verify_uniform_perfectness(const RatioCantorSet& set,
                                             std::span<const BallSample> samples, int depth);

/// Centers are random generation-`depth` endpoints; radii are log-uniform in [r_min, r_max).
std::vector<BallSample> sample_endpoint_radii(const RatioCantorSet& set, int depth,
                                                     std::size_t count, Sampler& sampler,
                                                     double r_min, double r_max);

}  // namespace fractarc
