#pragma once

// Reference implementations for the tests: deliberately naive transcriptions
// of the defining formulas, with no incremental state and no reuse of the
// library's optimized paths.  Expected values in the test files are frozen
// against these.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "subq/qubo.hpp"
#include "subq/rng.hpp"

namespace subq::oracle {

// The objective straight from its definition: diagonal terms plus the
// ordered-pair double sum.
inline std::int64_t brute_eval(const QuboProblem& problem, const Bits& x) {
  const int n = problem.size();
  if (static_cast<int>(x.size()) != n) {
    throw std::invalid_argument("brute_eval: length mismatch");
  }
  std::int64_t acc = 0;
  for (int i = 0; i < n; ++i) {
    if (!x[i]) continue;
    acc += problem.q(i, i);
    for (int j = 0; j < n; ++j) {
      if (j != i && x[j]) acc += problem.q(i, j);
    }
  }
  return acc;
}

struct ExhaustiveResult {
  Bits x;
  std::int64_t objective = 0;
};

// Scans all 2^n assignments in counting order (variable 0 is the least
// significant bit), evaluating each from scratch.  Strict improvement keeps
// the first minimizer visited, so ties resolve to the lowest code.
inline ExhaustiveResult exhaustive_min(const QuboProblem& problem) {
  const int n = problem.size();
  if (n > 24) throw std::invalid_argument("exhaustive oracle capped at 24");
  Bits x(n, 0);
  ExhaustiveResult best{x, brute_eval(problem, x)};
  for (std::uint64_t code = 1; code < (std::uint64_t{1} << n); ++code) {
    for (int k = 0; k < n; ++k) x[k] = (code >> k) & 1u;
    const std::int64_t v = brute_eval(problem, x);
    if (v < best.objective) {
      best.objective = v;
      best.x = x;
    }
  }
  return best;
}

// Dense symmetric instance with entries uniform in [-max_abs, max_abs];
// density < 1 zeroes a matching fraction of the upper-triangle positions.
inline QuboProblem random_problem(Rng& rng, int n, std::int64_t max_abs,
                                  double density = 1.0,
                                  std::string name = "rand") {
  std::vector<std::int64_t> dense(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (density < 1.0 && rng_unit(rng) >= density) continue;
      const std::int64_t v =
          static_cast<std::int64_t>(rng_below(rng, 2 * max_abs + 1)) - max_abs;
      dense[static_cast<std::size_t>(i) * n + j] = v;
      dense[static_cast<std::size_t>(j) * n + i] = v;
    }
  }
  return QuboProblem(std::move(name), n, std::move(dense));
}

inline Bits random_bits(Rng& rng, int n) {
  Bits x(n);
  for (int k = 0; k < n; ++k) x[k] = rng_coin(rng) ? 1 : 0;
  return x;
}

}  // namespace subq::oracle
