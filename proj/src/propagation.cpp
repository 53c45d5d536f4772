#include "dpc/propagation.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dpc/metrics.hpp"
#include "dpc/rng.hpp"

namespace dpc {

namespace {

constexpr int kUnlabeled = -2;

}  // namespace

void PropagationConfig::validate() const {
  if (!(c > 0.0)) throw std::invalid_argument("propagation constant C must be positive");
  if (!(boost_factor >= 1.0)) throw std::invalid_argument("boost factor must be >= 1");
  if (runs == 0) throw std::invalid_argument("runs must be >= 1");
}

RankProbabilities rank_probabilities(const std::vector<double>& rho, std::size_t y,
                                     std::span<const std::uint32_t> infected,
                                     std::span<const std::uint32_t> frontier) {
  auto rank = [&](std::span<const std::uint32_t> list) {
    std::size_t below = 0, len = 1;
    for (auto z : list) {
      if (z == y) continue;
      ++len;
      if (denser(rho, y, z)) ++below;
    }
    return static_cast<double>(below + 1) / static_cast<double>(len);
  };
  return {rank(infected), rank(frontier)};
}

double infection_probability(const std::vector<double>& rho, std::size_t y,
                             std::span<const std::uint32_t> infected,
                             std::span<const std::uint32_t> frontier, double gain, double c) {
  const auto r = rank_probabilities(rho, y, infected, frontier);
  return std::min(1.0, gain * c * (r.infected_rank + r.frontier_rank));
}

ClusterAssignment propagate(const NeighborhoodIndex& idx, const DensityProfile& profile,
                            const CenterSelection& cens, const PropagationConfig& cfg) {
  cfg.validate();
  const std::size_t n = idx.size();
  if (profile.size() != n) throw std::invalid_argument("propagate: profile size mismatch");
  if (cens.centers.empty()) throw std::invalid_argument("propagate: no centers");

  const auto& rho = profile.rho;
  const std::size_t boost_checks = cfg.boost_checks.value_or(idx.lambda);

  std::vector<std::size_t> seeds(cens.centers.begin(), cens.centers.end());
  std::sort(seeds.begin(), seeds.end(),
            [&](std::size_t a, std::size_t b) { return denser(rho, a, b); });

  ClusterAssignment asg;
  asg.labels.assign(n, kUnlabeled);
  std::vector<char> immune(n, 0), queued(n, 0);
  std::vector<std::uint32_t> infected, queue;
  Rng rng(cfg.seed);

  auto enqueue_neighbors = [&](std::size_t x) {
    for (auto z : idx.nnn[x]) {
      if (asg.labels[z] != kUnlabeled || immune[z] || queued[z]) continue;
      queued[z] = 1;
      queue.push_back(z);
    }
  };

  int round = 0;
  for (std::size_t next_seed = 0;;) {
    // Densest remaining center that is neither labeled nor immune.
    while (next_seed < seeds.size() &&
           (asg.labels[seeds[next_seed]] != kUnlabeled || immune[seeds[next_seed]]))
      ++next_seed;
    if (next_seed == seeds.size()) break;
    const std::size_t zero = seeds[next_seed++];

    RoundTrace trace;
    trace.patient_zero = zero;
    asg.labels[zero] = round;
    asg.centers_used.push_back(zero);
    infected.assign(1, static_cast<std::uint32_t>(zero));
    queue.clear();
    enqueue_neighbors(zero);

    for (std::size_t head = 0; head < queue.size();) {
      const std::uint32_t y = queue[head++];
      const std::span<const std::uint32_t> frontier(queue.data() + head, queue.size() - head);
      const double gain = trace.checks < boost_checks ? cfg.boost_factor : 1.0;
      const double p = cfg.force_infection
                           ? 1.0
                           : infection_probability(rho, y, infected, frontier, gain, cfg.c);
      const double u = rng.uniform();
      ++trace.checks;
      if (u < p) {
        asg.labels[y] = round;
        infected.push_back(y);
        enqueue_neighbors(y);
      } else {
        immune[y] = 1;
        ++trace.immunized;
      }
    }
    trace.infected = infected.size();
    asg.rounds.push_back(trace);
    ++round;
  }

  for (std::size_t i = 0; i < n; ++i)
    if (immune[i]) asg.immune_at_end.push_back(i);
  return final_assign(idx, profile, std::move(asg));
}

ClusterAssignment final_assign(const NeighborhoodIndex& idx, const DensityProfile& profile,
                               ClusterAssignment asg) {
  const std::size_t n = idx.size();
  if (asg.labels.size() != n) throw std::invalid_argument("final_assign: label size mismatch");

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < n; ++i)
    if (asg.labels[i] < 0) pending.push_back(i);

  // Each pass reads only labels fixed before the pass, so the outcome does
  // not depend on visiting order.
  std::vector<std::pair<std::size_t, int>> decided;
  std::map<int, double> score;
  while (!pending.empty()) {
    decided.clear();
    std::vector<std::size_t> still;
    for (auto x : pending) {
      score.clear();
      for (auto z : idx.nnn[x])
        if (asg.labels[z] >= 0) score[asg.labels[z]] += profile.rho[z];
      if (score.empty()) {
        still.push_back(x);
        continue;
      }
      auto best = score.begin();
      for (auto it = score.begin(); it != score.end(); ++it)
        if (it->second > best->second) best = it;
      decided.emplace_back(x, best->first);
    }
    if (decided.empty()) break;
    for (auto [x, label] : decided) {
      asg.labels[x] = label;
      asg.fallback_assigned.push_back(x);
    }
    pending = std::move(still);
  }
  for (auto x : pending) asg.labels[x] = kNoise;
  std::sort(asg.fallback_assigned.begin(), asg.fallback_assigned.end());
  return asg;
}

double nnn_agreement(const NeighborhoodIndex& idx, const std::vector<int>& labels) {
  std::size_t edges = 0, agree = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (auto j : idx.nnn[i]) {
      if (j <= i) continue;
      ++edges;
      if (labels[i] >= 0 && labels[i] == labels[j]) ++agree;
    }
  }
  return edges == 0 ? 0.0 : static_cast<double>(agree) / static_cast<double>(edges);
}

EnsembleResult run_ensemble(const NeighborhoodIndex& idx, const DensityProfile& profile,
                            const CenterSelection& cens, const PropagationConfig& cfg,
                            const std::vector<int>* gold) {
  cfg.validate();
  EnsembleResult out;
  out.criterion = gold ? "ari" : "nnn_agreement";
  double best_score = 0.0;
  for (std::size_t r = 0; r < cfg.runs; ++r) {
    PropagationConfig one = cfg;
    one.seed = cfg.seed + r;
    one.runs = 1;
    ClusterAssignment asg = propagate(idx, profile, cens, one);
    RunSummary s;
    s.seed = one.seed;
    s.score = gold ? ari(*gold, asg.labels) : nnn_agreement(idx, asg.labels);
    s.clusters = asg.cluster_count();
    s.noise = asg.noise_count();
    s.labels = asg.labels;
    if (r == 0 || s.score > best_score) {
      best_score = s.score;
      out.best = std::move(asg);
      out.best_run = r;
    }
    out.runs.push_back(std::move(s));
  }
  return out;
}

PpnnnModel prepare_ppnnn(const DistanceMatrix& dm, const PpnnnOptions& options) {
  PpnnnModel m;
  m.index = nnn_search(build_neighbor_order(dm), options.nnn_mode);
  m.profile = nnn_profile(dm, m.index, options.density);
  m.selection = choose_centers(m.profile, options.spread_mode, options.thresholds);
  return m;
}

}  // namespace dpc
