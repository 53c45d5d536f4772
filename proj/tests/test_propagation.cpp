#include <doctest.h>

#include "dpc/metrics.hpp"
#include "dpc/propagation.hpp"
#include "dpc/synth.hpp"
#include "oracles.hpp"

using namespace dpc;

namespace {

PpnnnModel model_of(const Dataset& ds, NnnMode mode = NnnMode::exact) {
  PpnnnOptions o;
  o.nnn_mode = mode;
  return prepare_ppnnn(pairwise_distances(ds), o);
}

std::vector<std::uint32_t> ids(std::initializer_list<std::uint32_t> v) { return v; }

// Two 30-point grids whose gap is ten times the in-grid spacing.
Dataset two_grids() {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int b = 0; b < 2; ++b)
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 5; ++j) {
        rows.push_back({b * 1.5 + 0.1 * i + 0.013 * j * j, 0.1 * j + 0.007 * i * i});
        labels.push_back(b);
      }
  return make_dataset("two_grids", rows, labels);
}

}  // namespace

TEST_CASE("config validation") {
  PropagationConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.c = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.boost_factor = 0.9;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.runs = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("rank probabilities") {
  const std::vector<double> rho{5, 1, 2, 3, 4, 3};
  SUBCASE("densest candidate ranks first in both lists") {
    auto r = rank_probabilities(rho, 0, ids({1, 2}), ids({3}));
    CHECK(r.infected_rank == 1.0);
    CHECK(r.frontier_rank == 1.0);
    CHECK(infection_probability(rho, 0, ids({1, 2}), ids({3}), 1.0, 0.3) ==
          doctest::Approx(0.6));
    CHECK(infection_probability(rho, 0, ids({1, 2}), ids({3}), 2.0, 0.4) == 1.0);
  }
  SUBCASE("single candidate at round start") {
    // Patient zero (index 4, rho 4) is denser than y (index 2, rho 2).
    auto r = rank_probabilities(rho, 2, ids({4}), {});
    CHECK(r.infected_rank == 0.5);
    CHECK(r.frontier_rank == 1.0);
    CHECK(infection_probability(rho, 2, ids({4}), {}, 1.5, 0.2) == doctest::Approx(1.5 * 1.5 * 0.2));
  }
  SUBCASE("ties follow the index rule") {
    // rho[3] == rho[5]; index 5 counts as denser.
    CHECK(rank_probabilities(rho, 5, ids({3}), {}).infected_rank == 1.0);
    CHECK(rank_probabilities(rho, 3, ids({5}), {}).infected_rank == 0.5);
  }
  SUBCASE("the candidate itself in the frontier is not double counted") {
    auto r = rank_probabilities(rho, 2, ids({0}), ids({2, 1}));
    CHECK(r.frontier_rank == doctest::Approx(2.0 / 2.0));
  }
}

TEST_CASE("forced infection floods the natural-neighbor graph") {
  auto ds = synth_generate("blobs", {{"k", 1}, {"n", 80}}, 2);
  auto m = model_of(ds);
  CenterSelection one;
  one.centers = {m.profile.gamma_order()[0]};
  PropagationConfig cfg;
  cfg.force_infection = true;
  auto asg = propagate(m.index, m.profile, one, cfg);
  auto ref = oracle::reach_labels(m.index.nnn, m.profile.rho, one.centers);
  CHECK(asg.labels == ref);
  CHECK(asg.immune_at_end.empty());
}

TEST_CASE("forced infection equals the reachability oracle") {
  Rng rng(606);
  for (int t = 0; t < 30; ++t) {
    auto ds = oracle::random_dataset(rng, 5 + rng.below(120), 1 + rng.below(3));
    auto mode = t % 2 ? NnnMode::logarithmic : NnnMode::exact;
    auto m = model_of(ds, mode);
    PropagationConfig cfg;
    cfg.force_infection = true;
    auto asg = propagate(m.index, m.profile, m.selection, cfg);
    CHECK(asg.labels == oracle::reach_labels(m.index.nnn, m.profile.rho, m.selection.centers));
  }
}

TEST_CASE("two separated grids give two pure clusters") {
  auto ds = two_grids();
  auto m = model_of(ds);
  PropagationConfig cfg;
  cfg.seed = 1;
  auto asg = propagate(m.index, m.profile, m.selection, cfg);
  CHECK(asg.cluster_count() == 2);
  // A few grid corners sit in small natural-neighbor components with no
  // center; they stay noise, everything else matches its grid.
  const auto reach = oracle::reach_labels(m.index.nnn, m.profile.rho, m.selection.centers);
  std::vector<int> t, p;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CHECK((asg.labels[i] == kNoise) == (reach[i] == kNoise));
    if (asg.labels[i] == kNoise) continue;
    t.push_back((*ds.gold_labels)[i]);
    p.push_back(asg.labels[i]);
  }
  CHECK(t.size() >= 50);
  CHECK(ari(t, p) == 1.0);
}

TEST_CASE("propagation invariants under random seeds") {
  Rng rng(707);
  for (int t = 0; t < 25; ++t) {
    auto ds = oracle::random_dataset(rng, 10 + rng.below(150), 2);
    auto m = model_of(ds, t % 3 ? NnnMode::exact : NnnMode::logarithmic);
    PropagationConfig cfg;
    cfg.seed = rng.next();
    cfg.c = rng.uniform(0.2, 0.9);
    auto asg = propagate(m.index, m.profile, m.selection, cfg);
    const std::size_t n = ds.size();

    // Patient zeros are distinct centers, one per round.
    std::set<std::size_t> zeros(asg.centers_used.begin(), asg.centers_used.end());
    CHECK(zeros.size() == asg.centers_used.size());
    CHECK(asg.rounds.size() == asg.centers_used.size());
    for (auto z : asg.centers_used)
      CHECK(std::binary_search(m.selection.centers.begin(), m.selection.centers.end(), z));

    // Labels are round numbers or noise; immune points never end up infected
    // by a round, only by the final step.
    std::set<std::size_t> fallback(asg.fallback_assigned.begin(), asg.fallback_assigned.end());
    for (auto i : asg.immune_at_end) CHECK((fallback.count(i) || asg.labels[i] == kNoise));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(asg.labels[i] >= kNoise);
      CHECK(asg.labels[i] < static_cast<int>(asg.rounds.size()));
    }

    // Every round-labeled point links back to its patient zero through
    // same-label natural neighbors.
    for (std::size_t r = 0; r < asg.centers_used.size(); ++r) {
      std::vector<char> seen(n, 0);
      std::vector<std::size_t> stack{asg.centers_used[r]};
      seen[asg.centers_used[r]] = 1;
      while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (auto z : m.index.nnn[x])
          if (!seen[z] && asg.labels[z] == static_cast<int>(r) && !fallback.count(z)) {
            seen[z] = 1;
            stack.push_back(z);
          }
      }
      for (std::size_t i = 0; i < n; ++i)
        if (asg.labels[i] == static_cast<int>(r) && !fallback.count(i)) CHECK(seen[i]);
    }

    // Noise only where no natural neighbor carries a label.
    for (std::size_t i = 0; i < n; ++i)
      if (asg.labels[i] == kNoise)
        for (auto z : m.index.nnn[i]) CHECK(asg.labels[z] == kNoise);

    // Same seed, same labels.
    CHECK(propagate(m.index, m.profile, m.selection, cfg).labels == asg.labels);
  }
}

TEST_CASE("final assignment") {
  NeighborhoodIndex idx;
  idx.nnn = {{1, 2, 3}, {0}, {0}, {0}, {}};
  DensityProfile prof;
  prof.rho = {1.0, 3.1, 1.5, 1.4, 1.0};
  ClusterAssignment partial;
  partial.labels = {-2, 1, 2, 2, -2};
  auto out = final_assign(idx, prof, partial);
  CHECK(out.labels[0] == 1);  // 3.1 beats 1.5 + 1.4 = 2.9
  CHECK(out.labels[4] == kNoise);
  CHECK(out.fallback_assigned == std::vector<std::size_t>{0});

  partial.labels = {-2, 2, 2, 2, -2};
  CHECK(final_assign(idx, prof, partial).labels[0] == 2);
}

TEST_CASE("final assignment reaches chains over several passes") {
  NeighborhoodIndex idx;
  idx.nnn = {{1}, {0, 2}, {1, 3}, {2}};
  DensityProfile prof;
  prof.rho = {1, 1, 1, 1};
  ClusterAssignment partial;
  partial.labels = {0, -2, -2, -2};
  auto out = final_assign(idx, prof, partial);
  CHECK(out.labels == std::vector<int>{0, 0, 0, 0});
  CHECK(out.fallback_assigned == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("isolated point in log mode ends as noise") {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 5; ++j) rows.push_back({0.1 * i, 0.1 * j});
  rows.push_back({100.0, 0.0});
  auto m = model_of(make_dataset("blob", rows), NnnMode::logarithmic);
  auto asg = propagate(m.index, m.profile, m.selection, {});
  CHECK(asg.labels[30] == kNoise);
  CHECK(asg.noise_count() == 1);
}

TEST_CASE("ensemble") {
  auto ds = two_grids();
  auto m = model_of(ds);
  PropagationConfig cfg;
  cfg.seed = 4;
  auto single = propagate(m.index, m.profile, m.selection, cfg);
  auto one = run_ensemble(m.index, m.profile, m.selection, cfg, &*ds.gold_labels);
  CHECK(one.best.labels == single.labels);
  CHECK(one.criterion == "ari");

  cfg.runs = 5;
  cfg.c = 0.3;
  auto five = run_ensemble(m.index, m.profile, m.selection, cfg, &*ds.gold_labels);
  REQUIRE(five.runs.size() == 5);
  for (const auto& r : five.runs) {
    CHECK(five.runs[five.best_run].score >= r.score);
    CHECK(r.score == doctest::Approx(ari(*ds.gold_labels, r.labels)));
  }
  CHECK(five.runs[2].seed == 6);

  auto unsup = run_ensemble(m.index, m.profile, m.selection, cfg);
  CHECK(unsup.criterion == "nnn_agreement");
  auto again = run_ensemble(m.index, m.profile, m.selection, cfg);
  CHECK(again.best.labels == unsup.best.labels);
}

TEST_CASE("nnn agreement") {
  NeighborhoodIndex idx;
  idx.nnn = {{1}, {0, 2}, {1}};
  CHECK(nnn_agreement(idx, {0, 0, 0}) == 1.0);
  CHECK(nnn_agreement(idx, {0, 0, 1}) == 0.5);
  CHECK(nnn_agreement(idx, {kNoise, kNoise, kNoise}) == 0.0);
}
