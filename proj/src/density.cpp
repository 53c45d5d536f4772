#include "dpc/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dpc {

std::vector<std::size_t> DensityProfile::gamma_order() const {
  std::vector<std::size_t> order(gamma.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return gamma[a] > gamma[b]; });
  return order;
}

RhoResult rho_nnn(const DistanceMatrix& dm, const NeighborhoodIndex& idx,
                  const NnnDensityOptions& options) {
  const std::size_t n = dm.size();
  if (idx.size() != n) throw std::invalid_argument("rho_nnn: index built on a different dataset");

  RhoResult out;
  out.rho.assign(n, 0.0);
  out.sigma.assign(n, 0.0);
  std::size_t degenerate = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& members =
        (idx.nnn[i].empty() && options.empty_fallback_to_knn) ? idx.nn[i] : idx.nnn[i];
    if (members.empty()) continue;
    double sigma = 0.0;
    for (auto j : members) sigma = std::max(sigma, dm(i, j));
    out.sigma[i] = sigma;
    if (sigma == 0.0) {
      // Every member coincides with i: each exp(-(0/0)^2) term is taken as 1.
      out.rho[i] = static_cast<double>(members.size());
      ++degenerate;
      continue;
    }
    double rho = 0.0;
    for (auto j : members) {
      const double t = dm(i, j) / sigma;
      rho += std::exp(-t * t);
    }
    out.rho[i] = rho;
  }
  if (degenerate)
    out.warnings.push_back(std::to_string(degenerate) +
                           " point(s) have zero NNN bandwidth; kernel terms taken as 1");
  return out;
}

std::vector<double> rho_cutoff(const DistanceMatrix& dm, double d_c) {
  if (!(d_c > 0.0)) throw std::invalid_argument("cutoff distance must be positive");
  const std::size_t n = dm.size();
  std::vector<double> rho(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dm(i, j) < d_c) {
        rho[i] += 1.0;
        rho[j] += 1.0;
      }
  return rho;
}

std::vector<double> rho_gaussian(const DistanceMatrix& dm, double d_c) {
  if (!(d_c > 0.0)) throw std::invalid_argument("cutoff distance must be positive");
  const std::size_t n = dm.size();
  std::vector<double> rho(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double t = dm(i, j) / d_c;
      s += std::exp(-t * t);
    }
    rho[i] = s;
  }
  return rho;
}

DeltaResult delta_and_nhd(const DistanceMatrix& dm, const std::vector<double>& rho) {
  const std::size_t n = dm.size();
  if (rho.size() != n) throw std::invalid_argument("delta_and_nhd: rho size mismatch");

  // Walk points from densest down; each point only looks at those already seen.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return denser(rho, a, b); });

  DeltaResult out;
  out.delta.assign(n, 0.0);
  out.nhd.assign(n, kNoHigher);
  const std::size_t peak = order.front();
  out.delta[peak] = *std::max_element(dm.row(peak).begin(), dm.row(peak).end());

  for (std::size_t pos = 1; pos < n; ++pos) {
    const std::size_t i = order[pos];
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = order[0];
    for (std::size_t q = 0; q < pos; ++q) {
      const std::size_t j = order[q];
      const double d = dm(i, j);
      if (d < best || (d == best && j < arg)) {
        best = d;
        arg = j;
      }
    }
    out.delta[i] = best;
    out.nhd[i] = static_cast<std::int64_t>(arg);
  }
  return out;
}

void gamma_theta(DensityProfile& p) {
  const std::size_t n = p.rho.size();
  p.gamma.assign(n, 0.0);
  p.theta.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    p.gamma[i] = p.rho[i] * p.delta[i];
    p.theta[i] = p.delta[i] > 0.0 ? p.rho[i] / p.delta[i] : kInfiniteTheta;
  }
}

DensityProfile make_profile(const DistanceMatrix& dm, std::vector<double> rho) {
  DensityProfile p;
  auto d = delta_and_nhd(dm, rho);
  p.rho = std::move(rho);
  p.delta = std::move(d.delta);
  p.nhd = std::move(d.nhd);
  gamma_theta(p);
  return p;
}

DensityProfile nnn_profile(const DistanceMatrix& dm, const NeighborhoodIndex& idx,
                           const NnnDensityOptions& options) {
  auto r = rho_nnn(dm, idx, options);
  DensityProfile p = make_profile(dm, std::move(r.rho));
  p.sigma = std::move(r.sigma);
  p.warnings = std::move(r.warnings);
  return p;
}

std::string profile_csv(const DensityProfile& p) {
  std::ostringstream out;
  out.precision(17);
  out << "index,rho,delta,gamma,theta,nhd\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    out << i << ',' << p.rho[i] << ',' << p.delta[i] << ',' << p.gamma[i] << ',';
    if (std::isinf(p.theta[i])) out << "inf";
    else out << p.theta[i];
    out << ',';
    if (p.nhd[i] != kNoHigher) out << p.nhd[i];
    out << '\n';
  }
  return out.str();
}

}  // namespace dpc
