#include "fractarc/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace fractarc {

double Sampler::uniform() {
  // 53 random mantissa bits; independent of the standard library's distribution code.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Sampler::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Sampler::log_uniform(double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log_uniform needs 0 < lo < hi");
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

std::uint64_t Sampler::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Sampler::below(0)");
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

}  // namespace fractarc
