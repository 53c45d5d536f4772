#include <doctest.h>

#include <json.hpp>

#include "dpc/neighborhood.hpp"
#include "oracles.hpp"

using namespace dpc;

namespace {

NeighborhoodIndex search(const Dataset& ds, NnnMode mode) {
  return nnn_search(build_neighbor_order(pairwise_distances(ds)), mode);
}

std::set<std::size_t> as_set(const std::vector<std::uint32_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("neighbor order of three points on a line") {
  auto ds = make_dataset("line", {{0}, {1}, {3}});
  auto order = build_neighbor_order(pairwise_distances(ds));
  CHECK(order.kth(0, 1) == 1);
  CHECK(order.kth(0, 2) == 2);
  CHECK(order.kth(2, 1) == 1);
  CHECK(order.rank(2, 0) == 2);
}

TEST_CASE("equidistant neighbors are ordered by index") {
  auto ds = make_dataset("tie", {{0}, {-1}, {1}});
  auto order = build_neighbor_order(pairwise_distances(ds));
  CHECK(order.kth(0, 1) == 1);
  CHECK(order.kth(0, 2) == 2);
}

TEST_CASE("neighbor rows match a full sort of each distance row") {
  Rng rng(21);
  auto ds = oracle::random_dataset(rng, 20, 2);
  auto order = build_neighbor_order(pairwise_distances(ds));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto expect = oracle::sorted_row(ds, i);
    auto row = order.row(i);
    REQUIRE(row.size() == expect.size());
    for (std::size_t k = 0; k < row.size(); ++k) CHECK(row[k] == expect[k]);
  }
}

TEST_CASE("nnn on three points on a line") {
  auto ds = make_dataset("line", {{0}, {1}, {3}});
  auto idx = search(ds, NnnMode::exact);
  CHECK(idx.lambda == 2);
  CHECK(idx.nnn[0] == std::vector<std::uint32_t>{1, 2});
  CHECK(idx.nnn[1] == std::vector<std::uint32_t>{0, 2});
  CHECK(idx.nnn[2] == std::vector<std::uint32_t>{0, 1});
  // Round 1 left the point at 3 without a mutual neighbor.
  REQUIRE(idx.empty_history.size() == 2);
  CHECK(idx.empty_history[0] == 1);
  CHECK(idx.empty_history[1] == 0);
}

TEST_CASE("two points are each other's natural neighbors") {
  auto idx = search(make_dataset("two", {{0, 0}, {1, 1}}), NnnMode::exact);
  CHECK(idx.lambda == 1);
  CHECK(idx.nnn[0] == std::vector<std::uint32_t>{1});
  CHECK(idx.nnn[1] == std::vector<std::uint32_t>{0});
}

TEST_CASE("duplicates are mutual first neighbors") {
  auto idx = search(make_dataset("dup", {{0}, {0}, {5}, {5}}), NnnMode::exact);
  CHECK(idx.lambda == 1);
  CHECK(idx.nnn[0] == std::vector<std::uint32_t>{1});
  CHECK(idx.nnn[3] == std::vector<std::uint32_t>{2});
}

TEST_CASE("far point next to a tight blob is an outlier in log mode") {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 5; ++j) rows.push_back({0.1 * i, 0.1 * j});
  rows.push_back({100.0, 0.0});
  auto ds = make_dataset("blob", rows);
  auto log = search(ds, NnnMode::logarithmic);
  CHECK(is_outlier(log, 30));
  CHECK(log.empty_set_members == std::vector<std::uint32_t>{30});
  for (std::size_t i = 0; i < 30; ++i) CHECK_FALSE(is_outlier(log, i));
  CHECK_THROWS_AS(is_outlier(log, 31), std::out_of_range);

  auto oracle_log = oracle::nnn_log(ds);
  CHECK(log.lambda == oracle_log.lambda);

  auto exact = search(ds, NnnMode::exact);
  CHECK(exact.empty_set_members.empty());
  CHECK_FALSE(is_outlier(exact, 30));
  CHECK(exact.lambda == 30);
  CHECK(log.lambda < exact.lambda);
}

TEST_CASE("exact and log search agree with the definitions on random data") {
  Rng rng(1234);
  for (int t = 0; t < 40; ++t) {
    auto ds = oracle::random_dataset(rng, 2 + rng.below(40), 1 + rng.below(4));
    for (auto mode : {NnnMode::exact, NnnMode::logarithmic}) {
      auto idx = search(ds, mode);
      auto ref = mode == NnnMode::exact ? oracle::nnn_exact(ds) : oracle::nnn_log(ds);
      REQUIRE(idx.lambda == ref.lambda);
      for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(as_set(idx.nnn[i]) == ref.at.nnn[i]);
        CHECK(as_set(idx.nn[i]) == ref.at.nn[i]);
        CHECK(as_set(idx.rnn[i]) == ref.at.rnn[i]);
      }
      CHECK(std::set<std::size_t>(idx.empty_set_members.begin(), idx.empty_set_members.end()) ==
            ref.at.empty);
    }
  }
}

TEST_CASE("structural properties of the search") {
  Rng rng(77);
  for (int t = 0; t < 40; ++t) {
    auto ds = oracle::random_dataset(rng, 3 + rng.below(80), 1 + rng.below(5));
    auto order = build_neighbor_order(pairwise_distances(ds));
    auto exact = nnn_search(order, NnnMode::exact);
    auto log = nnn_search(order, NnnMode::logarithmic);
    CHECK(log.lambda <= exact.lambda);
    CHECK(exact.empty_set_members.empty());

    const std::size_t n = ds.size();
    for (std::size_t i = 0; i < n; ++i) {
      // nn[i] is exactly the first lambda entries of the row.
      std::set<std::size_t> first(order.row(i).begin(), order.row(i).begin() + exact.lambda);
      CHECK(as_set(exact.nn[i]) == first);
      for (auto j : exact.nnn[i]) {
        CHECK(as_set(exact.nn[j]).count(i) == 1);
        CHECK(as_set(exact.nn[i]).count(j) == 1);
      }
      for (auto j : exact.rnn[i]) CHECK(as_set(exact.nn[j]).count(i) == 1);
    }

    // Minimality, and the empty count only ever shrinks round over round.
    std::vector<std::vector<std::size_t>> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = oracle::sorted_row(ds, i);
    if (exact.lambda > 1) CHECK_FALSE(oracle::nnn_at(rows, exact.lambda - 1).empty.empty());
    for (std::size_t r = 2; r <= exact.lambda; ++r) {
      auto prev = oracle::nnn_at(rows, r - 1), cur = oracle::nnn_at(rows, r);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::includes(cur.nnn[i].begin(), cur.nnn[i].end(), prev.nnn[i].begin(),
                            prev.nnn[i].end()));
    }
    for (std::size_t r = 1; r < exact.empty_history.size(); ++r)
      CHECK(exact.empty_history[r] <= exact.empty_history[r - 1]);
  }
}

TEST_CASE("mode names") {
  CHECK(parse_nnn_mode("exact") == NnnMode::exact);
  CHECK(parse_nnn_mode("log") == NnnMode::logarithmic);
  CHECK(to_string(NnnMode::logarithmic) == "log");
  CHECK_THROWS(parse_nnn_mode("fast"));
}

TEST_CASE("debug dump carries lambda and per-round history") {
  auto idx = search(make_dataset("line", {{0}, {1}, {3}}), NnnMode::exact);
  auto j = nlohmann::json::parse(neighborhood_json(idx));
  CHECK(j.at("lambda") == 2);
  CHECK(j.at("nnn").size() == 3);
  CHECK(j.at("empty_history").size() == 2);
}
