#include "dpc/baselines.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dpc/density.hpp"
#include "dpc/rng.hpp"

namespace dpc {

void DpcParams::validate() const {
  if (!(d_c_percentile > 0.0 && d_c_percentile < 100.0))
    throw std::invalid_argument("d_c percentile must lie in (0, 100)");
  if (k == 0) throw std::invalid_argument("k must be >= 1");
}

ClusterAssignment dpc_cluster(const DistanceMatrix& dm, const DpcParams& params) {
  params.validate();
  const std::size_t n = dm.size();
  if (params.k > n) throw std::invalid_argument("k exceeds the number of points");

  const double d_c = distance_percentile(dm, params.d_c_percentile);
  if (!(d_c > 0.0)) throw std::invalid_argument("d_c percentile selects a zero distance");
  auto rho = params.kernel == DpcKernel::gaussian ? rho_gaussian(dm, d_c) : rho_cutoff(dm, d_c);
  const DensityProfile p = make_profile(dm, std::move(rho));

  auto by_gamma = p.gamma_order();
  std::vector<std::size_t> centers(by_gamma.begin(), by_gamma.begin() + params.k);
  // The density peak has no denser neighbor to follow, so it must lead a cluster.
  const auto peak = static_cast<std::size_t>(
      std::find(p.nhd.begin(), p.nhd.end(), kNoHigher) - p.nhd.begin());
  if (std::find(centers.begin(), centers.end(), peak) == centers.end()) centers.back() = peak;

  ClusterAssignment asg;
  asg.labels.assign(n, kNoise);
  for (std::size_t c = 0; c < centers.size(); ++c) asg.labels[centers[c]] = static_cast<int>(c);
  asg.centers_used = centers;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return denser(p.rho, a, b); });
  for (auto i : order)
    if (asg.labels[i] == kNoise) asg.labels[i] = asg.labels[static_cast<std::size_t>(p.nhd[i])];
  return asg;
}

void KmeansParams::validate() const {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  if (max_iters == 0) throw std::invalid_argument("max_iters must be >= 1");
}

KmeansResult kmeans_cluster(const Dataset& ds, const KmeansParams& params) {
  params.validate();
  const std::size_t n = ds.size(), d = ds.dim, k = params.k;
  if (k > n) throw std::invalid_argument("k exceeds the number of points");

  Rng rng(params.seed);
  std::vector<std::size_t> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  for (std::size_t c = 0; c < k; ++c) std::swap(pick[c], pick[c + rng.below(n - c)]);

  KmeansResult res;
  res.centroids.resize(k * d);
  for (std::size_t c = 0; c < k; ++c)
    std::copy_n(ds.row(pick[c]).begin(), d, res.centroids.begin() + c * d);

  auto sq_dist = [&](std::size_t i, std::size_t c) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double t = ds.at(i, j) - res.centroids[c * d + j];
      s += t * t;
    }
    return s;
  };

  std::vector<int> labels(n, -1);
  std::vector<double> dist(n, 0.0);
  std::vector<std::size_t> sizes(k);
  for (std::size_t it = 0; it < params.max_iters; ++it) {
    bool changed = false;
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = sq_dist(i, 0);
      for (std::size_t c = 1; c < k; ++c) {
        const double dc = sq_dist(i, c);
        if (dc < best_d) {
          best_d = dc;
          best = c;
        }
      }
      if (labels[i] != static_cast<int>(best)) changed = true;
      labels[i] = static_cast<int>(best);
      dist[i] = best_d;
      inertia += best_d;
    }
    res.inertia_history.push_back(inertia);
    res.iterations = it + 1;
    if (!changed && it > 0) break;

    std::fill(res.centroids.begin(), res.centroids.end(), 0.0);
    std::fill(sizes.begin(), sizes.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(labels[i]);
      ++sizes[c];
      for (std::size_t j = 0; j < d; ++j) res.centroids[c * d + j] += ds.at(i, j);
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] == 0) {
        const auto far = static_cast<std::size_t>(
            std::max_element(dist.begin(), dist.end()) - dist.begin());
        std::copy_n(ds.row(far).begin(), d, res.centroids.begin() + c * d);
        dist[far] = 0.0;
        continue;
      }
      for (std::size_t j = 0; j < d; ++j)
        res.centroids[c * d + j] /= static_cast<double>(sizes[c]);
    }
  }

  res.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) res.inertia += sq_dist(i, static_cast<std::size_t>(labels[i]));
  res.assignment.labels = std::move(labels);
  return res;
}

void DbscanParams::validate() const {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (min_pts == 0) throw std::invalid_argument("min_pts must be >= 1");
}

ClusterAssignment dbscan_cluster(const DistanceMatrix& dm, const DbscanParams& params) {
  params.validate();
  const std::size_t n = dm.size();
  std::vector<std::vector<std::uint32_t>> nbrs(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (dm(i, j) <= params.eps) nbrs[i].push_back(static_cast<std::uint32_t>(j));

  std::vector<char> core(n);
  for (std::size_t i = 0; i < n; ++i) core[i] = nbrs[i].size() >= params.min_pts;

  ClusterAssignment asg;
  asg.labels.assign(n, kNoise);
  int cluster = 0;
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i] || asg.labels[i] != kNoise) continue;
    asg.labels[i] = cluster;
    asg.centers_used.push_back(i);
    stack.assign(1, i);
    for (std::size_t head = 0; head < stack.size(); ++head) {
      const std::size_t p = stack[head];
      if (!core[p]) continue;
      for (auto q : nbrs[p]) {
        if (asg.labels[q] != kNoise) continue;
        asg.labels[q] = cluster;
        stack.push_back(q);
      }
    }
    ++cluster;
  }
  return asg;
}

}  // namespace dpc
