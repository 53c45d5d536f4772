#include "dpc/centers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace dpc {

namespace {

struct Moments {
  double mean = 0.0;
  double spread = 0.0;
};

Moments moments(const std::vector<double>& xs, SpreadMode mode) {
  Moments m;
  if (xs.empty()) return m;
  const double count = static_cast<double>(xs.size());
  for (double x : xs) m.mean += x;
  m.mean /= count;
  double var = 0.0;
  for (double x : xs) var += (x - m.mean) * (x - m.mean);
  var /= count;
  m.spread = mode == SpreadMode::std_dev ? std::sqrt(var) : var;
  return m;
}

}  // namespace

std::string to_string(SpreadMode mode) {
  return mode == SpreadMode::std_dev ? "std" : "var";
}

SpreadMode parse_spread_mode(const std::string& s) {
  if (s == "std" || s == "std_dev") return SpreadMode::std_dev;
  if (s == "var" || s == "variance") return SpreadMode::variance;
  throw std::invalid_argument("unknown spread mode '" + s + "' (expected std|var)");
}

std::vector<std::size_t> select_candidates(const DensityProfile& profile, SpreadMode mode,
                                           double z, double* mean_out, double* spread_out) {
  std::vector<double> finite;
  finite.reserve(profile.size());
  for (double g : profile.gamma)
    if (std::isfinite(g)) finite.push_back(g);
  const Moments m = moments(finite, mode);
  if (mean_out) *mean_out = m.mean;
  if (spread_out) *spread_out = m.spread;

  const double threshold = m.mean + z * m.spread;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < profile.size(); ++i)
    if (std::isfinite(profile.gamma[i]) && profile.gamma[i] > threshold) out.push_back(i);
  return out;
}

CenterSelection select_centers(const DensityProfile& profile,
                               const std::vector<std::size_t>& candidates, SpreadMode mode,
                               const CenterThresholds& thresholds) {
  CenterSelection sel;
  sel.spread_mode = mode;
  sel.candidates = candidates;
  std::sort(sel.candidates.begin(), sel.candidates.end());

  std::vector<double> finite;
  for (auto i : sel.candidates)
    if (std::isfinite(profile.theta[i])) finite.push_back(profile.theta[i]);
  const Moments m = moments(finite, mode);
  sel.theta_mean = m.mean;
  sel.theta_spread = m.spread;

  const double bound = thresholds.center_z * m.spread;
  for (auto i : sel.candidates) {
    const double theta = profile.theta[i];
    if (!std::isfinite(theta)) continue;
    const double dev = std::abs(theta - m.mean);
    // A zero deviation is kept even when the spread is zero (single or
    // identical candidates).
    if (dev < bound || dev == 0.0) sel.centers.push_back(i);
  }

  if (sel.centers.empty()) {
    sel.fallback = true;
    std::size_t best = 0;
    for (std::size_t i = 1; i < profile.size(); ++i)
      if (profile.gamma[i] > profile.gamma[best]) best = i;
    sel.centers.push_back(best);
  }
  return sel;
}

CenterSelection choose_centers(const DensityProfile& profile, SpreadMode mode,
                               const CenterThresholds& thresholds) {
  double mean = 0.0, spread = 0.0;
  auto cands = select_candidates(profile, mode, thresholds.candidate_z, &mean, &spread);
  CenterSelection sel = select_centers(profile, cands, mode, thresholds);
  sel.gamma_mean = mean;
  sel.gamma_spread = spread;
  return sel;
}

std::string selection_json(const DensityProfile& profile, const CenterSelection& sel) {
  nlohmann::json j;
  j["spread_mode"] = to_string(sel.spread_mode);
  j["gamma_mean"] = sel.gamma_mean;
  j["gamma_spread"] = sel.gamma_spread;
  j["theta_mean"] = sel.theta_mean;
  j["theta_spread"] = sel.theta_spread;
  j["fallback"] = sel.fallback;
  j["centers"] = sel.centers;
  auto& rows = j["candidates"] = nlohmann::json::array();
  for (auto i : sel.candidates) {
    const bool kept = std::binary_search(sel.centers.begin(), sel.centers.end(), i);
    nlohmann::json row{{"index", i}, {"gamma", profile.gamma[i]}, {"kept", kept}};
    if (std::isfinite(profile.theta[i])) row["theta"] = profile.theta[i];
    else row["theta"] = "inf";
    rows.push_back(std::move(row));
  }
  return j.dump(2);
}

}  // namespace dpc
