#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "subq/ising.hpp"
#include "subq/qubo.hpp"
#include "subq/rational.hpp"
#include "subq/rng.hpp"
#include "support/oracles.hpp"

using namespace subq;

TEST_CASE("rational arithmetic stays normalized") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(-Rational(1, 4) == Rational(-1, 4));
  CHECK(Rational(7).is_integer());
  CHECK_FALSE(Rational(1, 4).is_integer());
  CHECK(Rational(3, 4).str() == "3/4");
  CHECK(Rational(-8, 2).str() == "-4");
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("ising construction validates J") {
  // Nonzero diagonal.
  CHECK_THROWS_AS(IsingProblem(1, {Rational(1)}, {Rational(0)}, Rational(0)),
                  std::invalid_argument);
  // Asymmetric couplings.
  CHECK_THROWS_AS(
      IsingProblem(2, {Rational(0), Rational(1), Rational(2), Rational(0)},
                   {Rational(0), Rational(0)}, Rational(0)),
      std::invalid_argument);
  // Shape mismatch.
  CHECK_THROWS_AS(IsingProblem(2, {Rational(0)}, {Rational(0), Rational(0)},
                               Rational(0)),
                  std::invalid_argument);
}

TEST_CASE("single-variable conversion by hand") {
  // q = [[4]]: J empty-diagonal, h = -2, offset = 2.
  const QuboProblem p("one", 1, {4});
  const IsingProblem m = to_ising(p);
  CHECK(m.j(0, 0) == Rational(0));
  CHECK(m.h(0) == Rational(-2));
  CHECK(m.offset() == Rational(2));
  CHECK(m.energy({-1}) + m.offset() == Rational(0));
  CHECK(m.energy({+1}) + m.offset() == Rational(4));
}

TEST_CASE("two-variable conversion matches the binary objective") {
  const QuboProblem p("two", 2, {-3, 1, 1, 2});
  const IsingProblem m = to_ising(p);
  // J(0,1) = -q(0,1)/4.
  CHECK(m.j(0, 1) == Rational(-1, 4));
  CHECK(m.j(1, 0) == Rational(-1, 4));
  CHECK(m.j(0, 0) == Rational(0));
  for (int code = 0; code < 4; ++code) {
    const Bits x = {static_cast<std::uint8_t>(code & 1),
                    static_cast<std::uint8_t>((code >> 1) & 1)};
    const Rational lhs = m.energy(spins_from_bits(x)) + m.offset();
    CHECK(lhs == Rational(evaluate(p, x)));
  }
}

TEST_CASE("zero matrix maps to zero couplings, fields and offset") {
  const QuboProblem p("zero", 3, std::vector<std::int64_t>(9, 0));
  const IsingProblem m = to_ising(p);
  for (int i = 0; i < 3; ++i) {
    CHECK(m.h(i) == Rational(0));
    for (int k = 0; k < 3; ++k) CHECK(m.j(i, k) == Rational(0));
  }
  CHECK(m.offset() == Rational(0));
  CHECK(m.energy({1, -1, 1}) == Rational(0));
}

TEST_CASE("conversion identity holds exhaustively on random instances") {
  Rng rng = make_rng(21);
  for (int c = 0; c < 20; ++c) {
    const int n = 1 + static_cast<int>(rng_below(rng, 8));
    const QuboProblem p = oracle::random_problem(rng, n, 20);
    const IsingProblem m = to_ising(p);
    Bits x(n, 0);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
      for (int k = 0; k < n; ++k) x[k] = (code >> k) & 1u;
      const Rational lhs = m.energy(spins_from_bits(x)) + m.offset();
      REQUIRE(lhs == Rational(oracle::brute_eval(p, x)));
    }
  }
}

TEST_CASE("spin and bit encodings round-trip") {
  const Bits x = {0, 1, 1, 0, 1};
  const Spins s = spins_from_bits(x);
  REQUIRE(s.size() == x.size());
  CHECK(s[0] == -1);
  CHECK(s[1] == +1);
  CHECK(bits_from_spins(s) == x);

  CHECK_THROWS_AS(bits_from_spins(Spins{0}), std::invalid_argument);
  CHECK_THROWS_AS(spins_from_bits(Bits{2}), std::invalid_argument);
}

TEST_CASE("energy validates spin vectors") {
  const QuboProblem p("two", 2, {-3, 1, 1, 2});
  const IsingProblem m = to_ising(p);
  CHECK_THROWS_AS(m.energy({1}), std::invalid_argument);
  CHECK_THROWS_AS(m.energy({1, 0}), std::invalid_argument);
}
