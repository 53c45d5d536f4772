#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dpc/dataset.hpp"
#include "dpc/neighborhood.hpp"

namespace dpc {

inline constexpr double kInfiniteTheta = std::numeric_limits<double>::infinity();
inline constexpr std::int64_t kNoHigher = -1;

/// Strict total order on points by density: higher rho is denser, equal rho
/// makes the higher index denser.
inline bool denser(const std::vector<double>& rho, std::size_t a, std::size_t b) {
  return rho[a] > rho[b] || (rho[a] == rho[b] && a > b);
}

struct DensityProfile {
  std::vector<double> rho;
  std::vector<double> delta;
  std::vector<double> gamma;
  std::vector<double> theta;
  /// Nearest strictly denser point, kNoHigher for the density peak.
  std::vector<std::int64_t> nhd;
  /// Largest distance to an NNN member (NNN density only).
  std::vector<double> sigma;
  std::vector<std::string> warnings;

  std::size_t size() const { return rho.size(); }
  /// Point indices sorted by descending gamma, ties by ascending index.
  std::vector<std::size_t> gamma_order() const;
};

struct NnnDensityOptions {
  /// Points with an empty NNN use their lambda nearest neighbors instead of
  /// getting zero density.
  bool empty_fallback_to_knn = false;
};

struct RhoResult {
  std::vector<double> rho;
  std::vector<double> sigma;
  std::vector<std::string> warnings;
};

/// Gaussian kernel over each point's NNN, bandwidth = farthest NNN member.
RhoResult rho_nnn(const DistanceMatrix& dm, const NeighborhoodIndex& idx,
                  const NnnDensityOptions& options = {});

/// Count of points strictly closer than d_c.
std::vector<double> rho_cutoff(const DistanceMatrix& dm, double d_c);

/// sum_j exp(-(d_ij / d_c)^2) over j != i.
std::vector<double> rho_gaussian(const DistanceMatrix& dm, double d_c);

struct DeltaResult {
  std::vector<double> delta;
  std::vector<std::int64_t> nhd;
};

DeltaResult delta_and_nhd(const DistanceMatrix& dm, const std::vector<double>& rho);

/// Fills gamma = rho * delta and theta = rho / delta (kInfiniteTheta if delta == 0).
void gamma_theta(DensityProfile& profile);

/// rho, delta, nhd, gamma and theta in one pass.
DensityProfile make_profile(const DistanceMatrix& dm, std::vector<double> rho);

/// Full NNN-density profile (rho_nnn + delta_and_nhd + gamma_theta).
DensityProfile nnn_profile(const DistanceMatrix& dm, const NeighborhoodIndex& idx,
                           const NnnDensityOptions& options = {});

/// CSV rows: index,rho,delta,gamma,theta,nhd
std::string profile_csv(const DensityProfile& profile);

}  // namespace dpc
