#pragma once

#include <cstdint>
#include <random>

namespace fractarc {

/// Seeded source for every randomized check. A fixed seed reproduces a run.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// log-uniform in [lo, hi); requires 0 < lo < hi.
  double log_uniform(double lo, double hi);
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  bool coin() { return below(2) == 1; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fractarc
