#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpc/assignment.hpp"
#include "dpc/centers.hpp"
#include "dpc/density.hpp"
#include "dpc/neighborhood.hpp"

namespace dpc {

struct PropagationConfig {
  /// Scale on the summed rank probabilities.
  double c = 0.6;
  /// Number of checks at the start of each round that get boost_factor.
  /// Unset means lambda.
  std::optional<std::size_t> boost_checks;
  double boost_factor = 1.5;
  std::uint64_t seed = 0;
  std::size_t runs = 1;
  /// Test hook: every infection succeeds.
  bool force_infection = false;

  /// Throws std::invalid_argument on c <= 0, boost_factor < 1 or runs == 0.
  void validate() const;
};

struct RankProbabilities {
  double infected_rank = 0.0;  // p'
  double frontier_rank = 0.0;  // p''
};

/// Ascending-density rank of y (1-based, strict order) within `infected` ∪ {y}
/// and within `frontier` ∪ {y}, each divided by the list length.
RankProbabilities rank_probabilities(const std::vector<double>& rho, std::size_t y,
                                     std::span<const std::uint32_t> infected,
                                     std::span<const std::uint32_t> frontier);

/// min(1, gain * c * (p' + p'')).
double infection_probability(const std::vector<double>& rho, std::size_t y,
                             std::span<const std::uint32_t> infected,
                             std::span<const std::uint32_t> frontier, double gain, double c);

/// One seeded propagation run followed by final_assign.
ClusterAssignment propagate(const NeighborhoodIndex& idx, const DensityProfile& profile,
                            const CenterSelection& cens, const PropagationConfig& cfg);

/// Labels every unlabeled point (label < 0) with the cluster holding the
/// largest rho sum inside its NNN. Repeats until a pass assigns nothing; the
/// rest become kNoise.
ClusterAssignment final_assign(const NeighborhoodIndex& idx, const DensityProfile& profile,
                               ClusterAssignment partial);

struct RunSummary {
  std::uint64_t seed = 0;
  double score = 0.0;
  std::size_t clusters = 0;
  std::size_t noise = 0;
  std::vector<int> labels;
};

struct EnsembleResult {
  ClusterAssignment best;
  std::size_t best_run = 0;
  /// "ari" when gold labels were supplied, "nnn_agreement" otherwise.
  std::string criterion;
  std::vector<RunSummary> runs;
};

/// Fraction of NNN pairs whose endpoints share a non-noise label.
double nnn_agreement(const NeighborhoodIndex& idx, const std::vector<int>& labels);

/// cfg.runs independent runs with seeds seed, seed+1, ...; the best is the
/// highest ARI against `gold`, or the highest nnn_agreement without it.
/// Earliest run wins ties.
EnsembleResult run_ensemble(const NeighborhoodIndex& idx, const DensityProfile& profile,
                            const CenterSelection& cens, const PropagationConfig& cfg,
                            const std::vector<int>* gold = nullptr);

/// Everything the propagation needs that does not depend on the RNG.
struct PpnnnModel {
  NeighborhoodIndex index;
  DensityProfile profile;
  CenterSelection selection;
};

struct PpnnnOptions {
  NnnMode nnn_mode = NnnMode::exact;
  SpreadMode spread_mode = SpreadMode::std_dev;
  NnnDensityOptions density;
  CenterThresholds thresholds;
};

PpnnnModel prepare_ppnnn(const DistanceMatrix& dm, const PpnnnOptions& options = {});

}  // namespace dpc
