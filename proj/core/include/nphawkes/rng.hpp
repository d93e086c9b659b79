#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace nphawkes {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seeded generator with the handful of samplers the library needs.
//
// The standard <random> distributions are implementation-defined, so all
// sampling goes through these methods instead; given a seed, every draw is
// reproducible run to run. Named child streams (derive) stay reproducible
// no matter how many draws other streams consume.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  static Rng derive(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(seed) ^ splitmix64(stream + 0x6A09E667F3BCC909ull));
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double exponential(double rate) {
    return -std::log1p(-uniform01()) / rate;
  }

  // Exact inverse-CDF Poisson draw. Means above 500 are split into chunks so
  // the sequential search never underflows. For a fixed chunk, the count is a
  // monotone function of the consumed uniform (the coupling the super-thinning
  // monotonicity property relies on).
  std::uint64_t poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    std::uint64_t total = 0;
    while (mean > 500.0) {
      total += poisson_quantile(uniform01(), 500.0);
      mean -= 500.0;
    }
    return total + poisson_quantile(uniform01(), mean);
  }

 private:
  static std::uint64_t poisson_quantile(double u, double mean) {
    double pmf = std::exp(-mean);
    double cdf = pmf;
    std::uint64_t k = 0;
    const std::uint64_t cap =
        static_cast<std::uint64_t>(mean + 40.0 * std::sqrt(mean + 1.0) + 60.0);
    while (u > cdf && k < cap) {
      ++k;
      pmf *= mean / static_cast<double>(k);
      cdf += pmf;
    }
    return k;
  }

  std::mt19937_64 gen_;
};

}  // namespace nphawkes
