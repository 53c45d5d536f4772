#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpc/assignment.hpp"
#include "dpc/dataset.hpp"

namespace dpc {

enum class DpcKernel { cutoff, gaussian };

struct DpcParams {
  /// d_c is this percentile of all pairwise distances.
  double d_c_percentile = 2.0;
  std::size_t k = 1;
  DpcKernel kernel = DpcKernel::gaussian;

  void validate() const;
};

/// Classic density peaks: top-k gamma points are centers, everything else
/// follows its nearest denser neighbor. No halo step.
ClusterAssignment dpc_cluster(const DistanceMatrix& dm, const DpcParams& params);

struct KmeansParams {
  std::size_t k = 2;
  std::size_t max_iters = 300;
  std::uint64_t seed = 0;

  void validate() const;
};

struct KmeansResult {
  ClusterAssignment assignment;
  std::vector<double> centroids;  // k * dim
  double inertia = 0.0;
  /// Inertia after each assignment step.
  std::vector<double> inertia_history;
  std::size_t iterations = 0;
};

/// Lloyd iterations from k distinct random points. An emptied cluster is
/// moved onto the point farthest from its assigned centroid.
KmeansResult kmeans_cluster(const Dataset& ds, const KmeansParams& params);

struct DbscanParams {
  double eps = 0.1;
  std::size_t min_pts = 4;

  void validate() const;
};

/// Core points have at least min_pts points (self included) within eps.
/// Clusters grow in index order; unreachable points are kNoise.
ClusterAssignment dbscan_cluster(const DistanceMatrix& dm, const DbscanParams& params);

}  // namespace dpc
