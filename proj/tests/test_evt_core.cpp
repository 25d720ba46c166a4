#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "brute_force.hpp"
#include "doctest.h"
#include "mes/error.hpp"
#include "mes/evt_core.hpp"

using namespace mes;

TEST_CASE("order_statistic uses the ascending convention") {
  const std::vector<double> v{10, 20, 30, 40};
  CHECK(order_statistic(v, 2) == 20);
  CHECK(order_statistic(v, 4) == 40);
  CHECK(order_statistic(std::vector<double>{5, 5, 7}, 2) == 5);
  CHECK_THROWS_AS(order_statistic(v, 0), ArgumentError);
  CHECK_THROWS_AS(order_statistic(v, 5), ArgumentError);
  CHECK_THROWS_AS(order_statistic(std::vector<double>{1.0, NAN}, 1), ArgumentError);
}

TEST_CASE("order_statistic matches a full sort") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 7u, 100u, 1000u}) {
    auto v = brute::random_vector(rng, n);
    const auto s = brute::sorted(v);
    for (std::size_t j = 1; j <= n; ++j) REQUIRE(order_statistic(v, j) == s[j - 1]);
  }
}

TEST_CASE("compute_ranks") {
  CHECK(compute_ranks(std::vector<double>{3.0, 1.0, 2.0}).ranks == std::vector<std::size_t>{3, 1, 2});
  CHECK(compute_ranks(std::vector<double>{7.0}).ranks == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(compute_ranks(std::vector<double>{}), ArgumentError);

  SUBCASE("ties are broken by index") {
    const std::vector<double> v{1, 1, 2};
    CHECK(compute_ranks(v).ranks == brute::stable_ranks(v));
    CHECK(compute_ranks(v).ranks == std::vector<std::size_t>{1, 2, 3});
  }
}

TEST_CASE("compute_ranks is a permutation agreeing with a stable brute-force sort") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coarse(0, 9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial * 7;
    std::vector<double> v(n);
    for (auto& e : v) e = coarse(rng);  // plenty of ties
    const auto r = compute_ranks(v);
    REQUIRE(r.ranks == brute::stable_ranks(v));
    const auto sum = std::accumulate(r.ranks.begin(), r.ranks.end(), std::size_t{0});
    REQUIRE(sum == n * (n + 1) / 2);
  }
}

TEST_CASE("t_statistics") {
  SUBCASE("comonotone pairs") {
    const PairedSample s({1, 2, 3, 4}, {1, 2, 3, 4});
    const auto t = t_statistics(s);
    CHECK(t == std::vector<double>{5.0 / 4, 5.0 / 3, 5.0 / 2, 5.0});
  }
  SUBCASE("anti-monotone pairs") {
    const PairedSample s({1, 2, 3, 4}, {4, 3, 2, 1});
    CHECK(t_statistics(s) == std::vector<double>{5.0 / 4, 5.0 / 3, 5.0 / 3, 5.0 / 4});
  }
  SUBCASE("single pair") {
    CHECK(t_statistics(PairedSample({3.0}, {-1.0})) == std::vector<double>{2.0});
  }
}

TEST_CASE("t_statistics is invariant under increasing marginal transforms and stays in range") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5 + trial * 13;
    auto x = brute::random_vector(rng, n);
    auto y = brute::random_vector(rng, n, -50.0, 50.0);
    const auto base = t_statistics(PairedSample(x, y));
    std::vector<double> gx(n), gy(n);
    for (std::size_t i = 0; i < n; ++i) {
      gx[i] = std::log(x[i]) + 100.0;
      gy[i] = y[i] * y[i] * y[i];
    }
    REQUIRE(t_statistics(PairedSample(gx, gy)) == base);
    const double nd = static_cast<double>(n);
    for (double t : base) {
      REQUIRE(t >= (nd + 1) / nd);
      REQUIRE(t <= nd + 1);
    }
  }
}

TEST_CASE("PairedSample invariants") {
  CHECK_THROWS_AS(PairedSample({}, {}), ArgumentError);
  CHECK_THROWS_AS(PairedSample({1, 2}, {1}), ArgumentError);
  CHECK_THROWS_AS(PairedSample({1, INFINITY}, {1, 2}), ArgumentError);
  CHECK_THROWS_AS(PairedSample({1, 2}, {NAN, 2}), ArgumentError);
  CHECK_THROWS_AS(PairedSample({-1, 2}, {1, 2}), ArgumentError);
  CHECK_NOTHROW(PairedSample({0, 2}, {-3, 2}));
}
