#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace dpc {

/// Portable random stream. The engine is MT19937-64 (std::mt19937_64, whose
/// output sequence is fixed by the C++ standard). Real draws are derived here
/// rather than through <random> distributions, which differ between standard
/// library implementations:
///   uniform()  = (next() >> 11) * 2^-53            in [0, 1)
///   normal()   = Box-Muller on two uniforms, cosine branch only
///   below(m)   = next() % m                        (modulo bias accepted)
/// Stream version: "mt19937_64/v1".
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal(double mean = 0.0, double sd = 1.0) {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) *
                      std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t below(std::uint64_t m) { return next() % m; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dpc
