#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dpc/dataset.hpp"

namespace dpc {

/// Named numeric generator parameters; missing keys take generator defaults.
class SynthParams {
 public:
  SynthParams() = default;
  SynthParams(std::initializer_list<std::pair<const std::string, double>> init) : values_(init) {}

  void set(const std::string& key, double value) { values_[key] = value; }
  double get(const std::string& key, double fallback) const;
  /// Parses "key=value".
  void parse_assignment(const std::string& kv);
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

/// Generators:
///   two_moons          n, noise
///   donut3             n (per donut), inner, outer
///   gauss2_unbalanced  n1, n2, ratio (density contrast), spread, separation
///   blobs              k, n (per blob), spread, radius
/// Stand-ins shaped like public benchmark sets (used when the real files are
/// not available locally):
///   jain, 3-spiral, cassini, dartboard1, shapes, r15
/// Gold labels are the generating component. Throws std::invalid_argument on
/// unknown kinds or impossible geometry.
Dataset synth_generate(const std::string& kind, const SynthParams& params, std::uint64_t seed);

std::vector<std::string> synth_kinds();

}  // namespace dpc
