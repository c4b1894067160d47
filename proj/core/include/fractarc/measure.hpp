#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fractarc/cantor.hpp"
#include "fractarc/rational.hpp"

namespace fractarc {

/// Rigorous bracket for mu(B(x, r)) at resolution k: `lower` counts the
/// generation-k intervals inside the open ball, `upper` those meeting it.
struct BallMassBracket {
  Rational center;
  Rational radius;
  Rational lower;
  Rational upper;
  int resolution = 0;

  Rational width() const { return upper - lower; }
};

/// The probability measure on E giving every generation-k interval mass 2^{-k}.
/// Holds a reference to a set that must outlive it and be built through `depth`.
class NaturalMeasure {
 public:
  NaturalMeasure(const RatioCantorSet& set, int depth);

  const RatioCantorSet& set() const { return *set_; }
  int depth() const { return depth_; }

  /// mu(I_{k,j}) = 2^{-k}; j is 1-based.
  Rational interval_mass(int k, std::size_t j) const;
  BallMassBracket ball_mass(const Rational& x, const Rational& r, int k) const;

 private:
  const RatioCantorSet* set_;
  int depth_;
};

/// a_k = 6 * 2^{-k eps} / (prod_{i<=k} (1 - c_i))^{1 - eps} for k = 0..k_max.
struct ASequence {
  double epsilon = 0.0;
  std::vector<double> values;  ///< a_0 .. a_{k_max}
  std::vector<double> ratios;  ///< a_{k+1} / a_k, k = 0 .. k_max - 1
  double maximum = 0.0;
  int argmax = 0;
};

ASequence a_sequence(const RatioCantorSet& set, double epsilon, int k_max);

/// sup_k a_k. The ratios are non-increasing because c_i is, so the scan stops
/// at the first ratio below one and the running maximum is the supremum.
double a_sequence_supremum(const RatioCantorSet& set, double epsilon);

/// C' = max(2, sup_k a_k): the constant in r^{1+eps}/C' <= mu(B) <= C' r^{1-eps}.
double mass_bound_constant(const RatioCantorSet& set, double epsilon);

struct MassBoundCertificate {
  double epsilon = 0.0;
  double constant = 0.0;
  int resolution = 0;
  std::size_t samples = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t inconclusive = 0;
  /// min over samples of lower / (r^{1+eps} / C'); at least 1 when valid.
  double worst_lower_margin = 0.0;
  /// min over samples of C' r^{1-eps} / upper; at least 1 when valid.
  double worst_upper_margin = 0.0;
  std::optional<std::size_t> offending;
  std::string failure;

  bool valid() const { return samples > 0 && failed == 0 && inconclusive == 0; }
};

/// Checks both power-law mass bounds on every sample using brackets at resolution k.
/// A sample fails only when the whole bracket violates a bound; when the
/// bracket straddles the bound it is counted as inconclusive.
MassBoundCertificate verify_mass_bounds(const NaturalMeasure& measure, double epsilon,
                                        std::span<const BallSample> samples, int k);

/// Scale bookkeeping for one ball: k is the least generation with s_k < r.
struct RadiusScale {
  int k = 0;
  /// 2^{k-1} = prod_{i<k}(1 - c_i) / s_{k-1} <= 1/r, checked exactly.
  bool doubling_bound_holds = false;
  /// Generation-(k-1) intervals meeting B(x, r); the mass bound needs <= 3.
  std::size_t coarse_intervals_meeting = 0;
};

/// Requires 0 < r <= 1 and generation k - 1 built.
RadiusScale radius_scale(const RatioCantorSet& set, const Rational& x, const Rational& r);

}  // namespace fractarc
