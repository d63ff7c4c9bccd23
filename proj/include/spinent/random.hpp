#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace spinent {

/*!
 * Portable seeded sampler for the validation workflow.
 *
 * State update x <- 6364136223846793005 x + 1442695040888963407 (mod 2^64);
 * a uniform double in [0, 1) is (x >> 11) * 2^-53 of the freshly updated
 * state. Both steps are fully specified, so any language reproduces the
 * same draws from the same seed.
 */
class SampleStream {
 public:
  using Engine = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL,
                                                 1442695040888963407ULL, 0ULL>;

  explicit SampleStream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  /// Integer in [lo, hi].
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * double(hi - lo + 1)); }

 private:
  Engine engine_;
};

}  // namespace spinent
