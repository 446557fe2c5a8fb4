#pragma once

// Platform-independent Gaussian draws: std::normal_distribution is
// implementation-defined, so reports would differ across standard libraries.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace basic_hodge {

class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  /// Box–Muller, cosine branch; u1 ∈ (0, 1].
  double operator()() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace basic_hodge
