#pragma once

#include <string>
#include <vector>

#include "dpc/density.hpp"

namespace dpc {

/// How the spread in the gamma and theta thresholds is measured.
enum class SpreadMode { std_dev, variance };

std::string to_string(SpreadMode mode);
SpreadMode parse_spread_mode(const std::string& s);

struct CenterThresholds {
  double candidate_z = 1.65;
  double center_z = 1.96;
};

struct CenterSelection {
  std::vector<std::size_t> candidates;  // ascending index
  std::vector<std::size_t> centers;     // ascending index
  double gamma_mean = 0.0;
  double gamma_spread = 0.0;
  double theta_mean = 0.0;
  double theta_spread = 0.0;
  SpreadMode spread_mode = SpreadMode::std_dev;
  bool fallback = false;
};

/// Points whose gamma exceeds mean + z * spread (population statistics).
std::vector<std::size_t> select_candidates(const DensityProfile& profile, SpreadMode mode,
                                           double z = CenterThresholds{}.candidate_z,
                                           double* mean_out = nullptr,
                                           double* spread_out = nullptr);

/// Keeps candidates whose theta lies within center_z spreads of the
/// candidates' mean theta. Infinite theta is never kept. Falls back to the
/// argmax-gamma point when nothing survives.
CenterSelection select_centers(const DensityProfile& profile,
                               const std::vector<std::size_t>& candidates, SpreadMode mode,
                               const CenterThresholds& thresholds = {});

/// Both stages.
CenterSelection choose_centers(const DensityProfile& profile, SpreadMode mode,
                               const CenterThresholds& thresholds = {});

std::string selection_json(const DensityProfile& profile, const CenterSelection& sel);

}  // namespace dpc
