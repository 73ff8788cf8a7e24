#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "subq/control.hpp"
#include "subq/qubo.hpp"
#include "subq/rng.hpp"
#include "support/oracles.hpp"

using namespace subq;

TEST_CASE("column weights sum absolute values, diagonal included") {
  const QuboProblem p("two", 2, {-3, 1, 1, 2});
  const auto eta = weight_effect(p);
  REQUIRE(eta.size() == 2);
  CHECK(eta[0] == doctest::Approx(4.0));
  CHECK(eta[1] == doctest::Approx(3.0));

  const QuboProblem zero("zero", 3, std::vector<std::int64_t>(9, 0));
  for (double v : weight_effect(zero)) CHECK(v == 0.0);
}

TEST_CASE("min-max normalization and its degenerate value") {
  const std::vector<double> v = {4.0, 3.0};
  const auto out = minmax_normalize(v, 0.0);
  CHECK(out[0] == doctest::Approx(1.0));
  CHECK(out[1] == doctest::Approx(0.0));

  const std::vector<double> flat = {2.0, 2.0, 2.0};
  for (double x : minmax_normalize(flat, 0.5)) CHECK(x == 0.5);
  for (double x : minmax_normalize(flat, 1.0)) CHECK(x == 1.0);

  const std::vector<double> wide = {-1.0, 0.0, 3.0};
  const auto w = minmax_normalize(wide, 0.0);
  CHECK(w[0] == doctest::Approx(0.0));
  CHECK(w[1] == doctest::Approx(0.25));
  CHECK(w[2] == doctest::Approx(1.0));
}

TEST_CASE("stability penalizes frequently flipped variables") {
  const std::vector<int> counts = {4, 2, 0};
  const auto s = stability(counts);
  CHECK(s[0] == doctest::Approx(0.0));
  CHECK(s[1] == doctest::Approx(0.5));
  CHECK(s[2] == doctest::Approx(1.0));

  const std::vector<int> idle = {0, 0, 0};
  for (double v : stability(idle)) CHECK(v == 1.0);

  const std::vector<int> bad = {1, -1};
  CHECK_THROWS_AS(stability(bad), std::invalid_argument);
}

TEST_CASE("deviation scores split columns high and unanimous columns zero") {
  const std::vector<Bits> s = {
      {1, 1, 0, 1, 1},
      {1, 1, 0, 1, 0},
      {0, 1, 0, 1, 0},
      {0, 1, 0, 0, 0},
  };
  const auto gamma = deviation(s);
  REQUIRE(gamma.size() == 5);
  CHECK(gamma[0] == doctest::Approx(1.0));   // column sum 2 of 4
  CHECK(gamma[1] == doctest::Approx(0.0));   // unanimous ones
  CHECK(gamma[2] == doctest::Approx(0.0));   // unanimous zeros
  CHECK(gamma[3] == doctest::Approx(0.5));   // column sum 3
  CHECK(gamma[4] == doctest::Approx(0.5));   // column sum 1

  // Odd set size: a column sum of 1 out of 3 sits at 2/3.
  const std::vector<Bits> odd = {{1}, {0}, {0}};
  CHECK(deviation(odd)[0] == doctest::Approx(2.0 / 3.0));

  // A single solution is always unanimous.
  const std::vector<Bits> one = {{1, 0}};
  const auto g1 = deviation(one);
  CHECK(g1[0] == doctest::Approx(0.0));
  CHECK(g1[1] == doctest::Approx(0.0));

  CHECK_THROWS_AS(deviation({}), std::invalid_argument);
  CHECK_THROWS_AS(deviation({{1, 0}, {1}}), std::invalid_argument);
}

TEST_CASE("aggregate combines the three signals with the given weights") {
  const std::vector<double> eta = {1.0, 0.0};
  const std::vector<double> gamma = {1.0, 1.0};
  const std::vector<std::vector<double>> delta = {{0.0, 1.0}};
  const auto scores = aggregate(eta, gamma, delta, Weights{});
  REQUIRE(scores.size() == 1);
  CHECK(scores[0][0] == doctest::Approx(2.0));
  CHECK(scores[0][1] == doctest::Approx(0.5));

  // Zero weights zero the score.
  const auto zeroed = aggregate(eta, gamma, delta, Weights{0.0, 0.0, 0.0});
  CHECK(zeroed[0][0] == 0.0);
  CHECK(zeroed[0][1] == 0.0);

  // Raising w3 can only lower scores.
  const auto heavier = aggregate(eta, gamma, delta, Weights{1.0, 1.0, 2.0});
  CHECK(heavier[0][1] < scores[0][1]);

  CHECK_THROWS_AS(aggregate(eta, std::vector<double>{1.0}, delta, Weights{}),
                  std::invalid_argument);
}

TEST_CASE("cosine schedule endpoints and decay envelope") {
  CHECK(rate_at(AnnealerKind::cosine, 0) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(std::abs(rate_at(AnnealerKind::cosine, 15)) < 1e-12);
  CHECK(rate_at(AnnealerKind::cosine, 30) ==
        doctest::Approx(0.4438202).epsilon(1e-6));
  CHECK(rate_at(AnnealerKind::cosine, 30) ==
        doctest::Approx(0.6 * std::pow(0.99, 30)).epsilon(1e-12));
  for (int t = 0; t <= 200; ++t) {
    const double r = rate_at(AnnealerKind::cosine, t);
    CHECK(r >= 0.0);
    CHECK(r <= 0.6 * std::pow(0.99, t) + 1e-12);
  }
}

TEST_CASE("constant and step schedules") {
  for (int t : {0, 1, 7, 100}) CHECK(rate_at(AnnealerKind::constant, t) == 0.6);

  CHECK(rate_at(AnnealerKind::step, 0) == doctest::Approx(0.6));
  CHECK(rate_at(AnnealerKind::step, 1) == doctest::Approx(0.6));
  CHECK(rate_at(AnnealerKind::step, 2) == doctest::Approx(0.55));
  CHECK(rate_at(AnnealerKind::step, 3) == doctest::Approx(0.55));
  CHECK(rate_at(AnnealerKind::step, 23) == doctest::Approx(0.05));
  CHECK(rate_at(AnnealerKind::step, 24) == 0.0);
  CHECK(rate_at(AnnealerKind::step, 100) == 0.0);
}

TEST_CASE("annealer state tracks the schedule") {
  for (AnnealerKind kind :
       {AnnealerKind::cosine, AnnealerKind::constant, AnnealerKind::step}) {
    AnnealerState a = make_annealer(kind);
    for (int t = 0; t <= 40; ++t) {
      CHECK(a.t == t);
      CHECK(a.r == rate_at(kind, t));
      next_rate(a);
    }
  }
}

TEST_CASE("select_top keeps the highest scores, ties to the lowest index") {
  const std::vector<double> scores = {0.5, 0.9, 0.9, 0.1};
  const std::vector<int> pool = {0, 1, 2, 3};
  CHECK(select_top(scores, pool, 2) == std::vector<int>{1, 2});
  CHECK(select_top(scores, pool, 0).empty());
  CHECK(select_top(scores, pool, 10) == std::vector<int>{0, 1, 2, 3});

  const std::vector<double> equal = {1.0, 1.0, 1.0};
  const std::vector<int> pool3 = {0, 1, 2};
  CHECK(select_top(equal, pool3, 2) == std::vector<int>{0, 1});

  const std::vector<int> partial = {3, 1};
  CHECK(select_top(scores, partial, 1) == std::vector<int>{1});

  const std::vector<int> bad = {4};
  CHECK_THROWS_AS(select_top(scores, bad, 1), std::invalid_argument);
}

TEST_CASE("select_random draws a sorted subset of the pool") {
  std::vector<int> pool(10);
  for (int i = 0; i < 10; ++i) pool[i] = i;
  Rng rng = make_rng(31);
  const auto pick = select_random(pool, 3, rng);
  REQUIRE(pick.size() == 3);
  for (std::size_t a = 1; a < pick.size(); ++a) CHECK(pick[a - 1] < pick[a]);
  for (int v : pick) {
    CHECK(v >= 0);
    CHECK(v < 10);
  }
  Rng again = make_rng(31);
  CHECK(select_random(pool, 3, again) == pick);

  Rng rng2 = make_rng(32);
  CHECK(select_random(pool, 25, rng2) == pool);
  CHECK(select_random(pool, 0, rng2).empty());
}

TEST_CASE("scored mutation flips a singleton subset with certainty") {
  std::vector<Bits> s = {{0, 0, 0, 0}};
  const std::vector<std::vector<double>> scores = {{0.1, 0.9, 0.5, 100.0}};
  const std::vector<std::vector<int>> shielded = {{3}};
  std::vector<Rng> streams;
  streams.emplace_back(make_rng(33));
  // Pool {0,1,2}, size floor(3 * 0.34) = 1, best candidate is index 1; a
  // singleton subset flips with probability one.
  mutate(s, scores, 0.34, shielded, streams);
  CHECK(s[0] == Bits{0, 1, 0, 0});
}

TEST_CASE("equal scores flip the whole subset and skip protected variables") {
  const int n = 100;
  std::vector<Bits> s = {Bits(n, 0)};
  std::vector<std::vector<double>> scores(1, std::vector<double>(n, 5.0));
  std::vector<std::vector<int>> shielded(1);
  for (int j = 50; j < n; ++j) {
    shielded[0].push_back(j);
    scores[0][j] = 99.0;
  }
  std::vector<Rng> streams;
  streams.emplace_back(make_rng(34));
  // Pool is 50 wide, floor(50 * 0.6) = 30, ties resolve to the lowest
  // indices and the degenerate probability rule flips all of them.
  mutate(s, scores, 0.6, shielded, streams);
  for (int j = 0; j < 30; ++j) CHECK(s[0][j] == 1);
  for (int j = 30; j < n; ++j) CHECK(s[0][j] == 0);
}

TEST_CASE("flip probabilities follow the normalized scores") {
  // Subset {0,1,2} with scores 0, 0.5, 1: the lowest-scored member never
  // flips, the highest always does.
  for (std::uint64_t seed = 40; seed < 48; ++seed) {
    std::vector<Bits> s = {{0, 0, 0}};
    const std::vector<std::vector<double>> scores = {{0.0, 0.5, 1.0}};
    const std::vector<std::vector<int>> shielded = {{}};
    std::vector<Rng> streams;
    streams.emplace_back(make_rng(seed));
    mutate(s, scores, 1.0, shielded, streams);
    CHECK(s[0][0] == 0);
    CHECK(s[0][2] == 1);
  }
}

TEST_CASE("rate zero leaves solutions alone") {
  std::vector<Bits> s = {{1, 0, 1}, {0, 1, 0}};
  const std::vector<Bits> before = s;
  const std::vector<std::vector<double>> scores(2, {0.3, 0.2, 0.1});
  const std::vector<std::vector<int>> shielded(2);
  std::vector<Rng> streams;
  streams.emplace_back(make_rng(35));
  streams.emplace_back(make_rng(36));
  mutate(s, scores, 0.0, shielded, streams);
  CHECK(s == before);
  mutate_random(s, 0.0, shielded, streams);
  CHECK(s == before);
}

TEST_CASE("mutation never touches protected positions") {
  Rng seeder = make_rng(37);
  for (int c = 0; c < 10; ++c) {
    const int n = 20;
    std::vector<Bits> s = {oracle::random_bits(seeder, n)};
    const Bits before = s[0];
    std::vector<std::vector<double>> scores(1, std::vector<double>(n));
    for (double& v : scores[0]) v = rng_unit(seeder);
    std::vector<int> all(n);
    for (int j = 0; j < n; ++j) all[j] = j;
    std::vector<std::vector<int>> shielded = {
        select_random(all, 5, seeder)};
    std::vector<Rng> streams;
    streams.emplace_back(make_rng(100 + c));
    mutate(s, scores, 1.0, shielded, streams);
    for (int idx : shielded[0]) CHECK(s[0][idx] == before[idx]);
  }
}

TEST_CASE("uniform mutation flips exactly the subset size") {
  std::vector<Bits> s = {Bits(10, 0)};
  const std::vector<std::vector<int>> shielded = {{0, 9}};
  std::vector<Rng> streams;
  streams.emplace_back(make_rng(38));
  // Pool of 8, floor(8 * 0.5) = 4 flips, none at a protected index.
  mutate_random(s, 0.5, shielded, streams);
  int flipped = 0;
  for (int j = 0; j < 10; ++j) flipped += s[0][j];
  CHECK(flipped == 4);
  CHECK(s[0][0] == 0);
  CHECK(s[0][9] == 0);

  std::vector<Bits> t = {Bits(10, 0)};
  std::vector<Rng> streams2;
  streams2.emplace_back(make_rng(38));
  mutate_random(t, 0.5, shielded, streams2);
  CHECK(t == s);
}

TEST_CASE("mutation argument mismatches are rejected") {
  std::vector<Bits> s = {{0, 0}};
  std::vector<Rng> streams;
  streams.emplace_back(make_rng(39));
  CHECK_THROWS_AS(mutate(s, {}, 0.5, {{}}, streams), std::invalid_argument);
  CHECK_THROWS_AS(mutate_random(s, 0.5, {}, streams), std::invalid_argument);
  const std::vector<std::vector<int>> oob = {{7}};
  CHECK_THROWS_AS(mutate_random(s, 0.5, oob, streams), std::invalid_argument);
}
