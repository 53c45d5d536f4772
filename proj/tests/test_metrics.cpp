#include <doctest.h>

#include "dpc/metrics.hpp"
#include "oracles.hpp"

using namespace dpc;

TEST_CASE("identical and renamed labelings score 1") {
  std::vector<int> a{0, 0, 1, 1, 2, 2, 2};
  std::vector<int> b{5, 5, -1, -1, 9, 9, 9};
  for (const auto& p : {a, b}) {
    CHECK(ari(a, p) == 1.0);
    CHECK(ami(a, p) == 1.0);
    CHECK(fmi(a, p) == 1.0);
  }
  std::vector<int> one(6, 0), other(6, 3);
  CHECK(ari(one, other) == 1.0);
  CHECK(ami(one, other) == 1.0);
  CHECK(fmi(one, other) == 1.0);
}

TEST_CASE("five-point example against pair enumeration") {
  std::vector<int> t{0, 0, 0, 1, 1}, p{0, 0, 1, 1, 1};
  // Pairs: 2 agree-same, 2 truth-only, 2 pred-only, 4 agree-different.
  auto c = oracle::pairs(t, p);
  CHECK(c.both == 2);
  CHECK(c.neither == 4);
  CHECK(ari(t, p) == doctest::Approx(oracle::ari(t, p)).epsilon(1e-14));
  CHECK(ari(t, p) == doctest::Approx(2.0 * (2 * 4 - 2 * 2) / (4.0 * 6 + 4.0 * 6)));
  CHECK(fmi(t, p) == doctest::Approx(0.5));
}

TEST_CASE("ami on four points against the direct formula") {
  std::vector<int> t{0, 0, 1, 1}, p{0, 1, 0, 1};
  CHECK(ami(t, p) == doctest::Approx(oracle::ami(t, p)).epsilon(1e-12));
  // MI is zero here and E[MI] positive, so the score is negative.
  CHECK(ami(t, p) < 0.0);
}

TEST_CASE("all singletons versus one cluster") {
  std::vector<int> t(5, 0), p{0, 1, 2, 3, 4};
  CHECK(fmi(t, p) == 0.0);
  CHECK(ari(t, p) == 0.0);
}

TEST_CASE("contingency table and errors") {
  auto tab = contingency({3, 3, -1, 7}, {1, 0, 0, 0});
  CHECK(tab.rows == 3);
  CHECK(tab.cols == 2);
  CHECK(tab.at(0, 0) == 1);  // label -1 compacts to row 0
  CHECK(tab.at(1, 0) == 1);
  CHECK(tab.at(1, 1) == 1);
  CHECK(tab.n == 4);
  CHECK_THROWS_AS(contingency({0, 1}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(ari({0}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(ami({0, 1}, {0, 1, 1}), std::invalid_argument);
}

TEST_CASE("expected mutual information equals a permutation average") {
  Rng rng(90);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 4 + rng.below(4);
    auto a = oracle::random_labels(rng, n, 1 + rng.below(3));
    auto b = oracle::random_labels(rng, n, 1 + rng.below(3));
    auto tab = contingency(a, b);
    CHECK(expected_mutual_information(tab) ==
          doctest::Approx(oracle::emi_by_permutation(a, b)).epsilon(1e-12));
    CHECK(mutual_information(tab) == doctest::Approx(oracle::mi(oracle::margins(a, b))).epsilon(1e-12));
  }
}

TEST_CASE("random instances agree with the oracles") {
  Rng rng(2024);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(29);
    auto a = oracle::random_labels(rng, n, 1 + rng.below(6));
    auto b = oracle::random_labels(rng, n, 1 + rng.below(6));
    CHECK(std::abs(ari(a, b) - oracle::ari(a, b)) <= 1e-10);
    CHECK(std::abs(fmi(a, b) - oracle::fmi(a, b)) <= 1e-10);
    CHECK(std::abs(ami(a, b) - oracle::ami(a, b)) <= 1e-10);
    CHECK(ari(a, b) >= -1.0);
    CHECK(ari(a, b) <= 1.0);
    CHECK(ami(a, b) <= 1.0 + 1e-12);
    CHECK(fmi(a, b) >= 0.0);
    CHECK(fmi(a, b) <= 1.0 + 1e-12);
    CHECK((ari(a, b) == 1.0) == same_partition(a, b));
  }
}

TEST_CASE("scores ignore how labels are named") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 3 + rng.below(40);
    auto a = oracle::random_labels(rng, n, 4);
    auto b = oracle::random_labels(rng, n, 5);
    std::vector<int> perm{3, 0, 4, 1, 2};
    auto b2 = b;
    for (auto& v : b2) v = perm[v] * 10 - 7;
    auto a2 = a;
    for (auto& v : a2) v = 3 - v;
    const auto s = score_all(a, b), s2 = score_all(a2, b2);
    CHECK(s.ari == doctest::Approx(s2.ari).epsilon(1e-12));
    CHECK(s.ami == doctest::Approx(s2.ami).epsilon(1e-12));
    CHECK(s.fmi == doctest::Approx(s2.fmi).epsilon(1e-12));
  }
}

TEST_CASE("large tables do not overflow") {
  std::vector<int> a(3000), b(3000);
  for (int i = 0; i < 3000; ++i) {
    a[i] = i % 7;
    b[i] = (i / 3) % 7;
  }
  const double v = ari(a, b);
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx(oracle::ari(a, b)).epsilon(1e-10));
}
