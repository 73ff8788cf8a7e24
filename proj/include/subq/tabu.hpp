#pragma once

#include <functional>

#include "subq/qubo.hpp"
#include "subq/rng.hpp"

namespace subq {

struct TabuConfig {
  // Iteration count, honored literally: 0 runs no iterations.  Callers
  // wanting the 5n default resolve it themselves (the driver does).
  int alpha = 0;
  int tenure = 0;  // tabu tenure; <= 0 selects default_tenure(n)
};

inline int default_alpha(int n) { return 5 * n; }
inline int default_tenure(int n) { return n / 150 > 1 ? n / 150 : 1; }

struct TabuOutcome {
  Bits x_min;                    // best assignment encountered
  std::int64_t ov_min = 0;       // its objective
  std::vector<int> flip_counts;  // flips per variable over the whole run
  Bits x_final;                  // where the walk ended
};

// One selection step, for instrumentation.
struct TabuStep {
  int iteration = 0;
  int flipped = -1;
  std::int64_t objective_after = 0;
  bool was_tabu = false;  // counter still positive at selection time
  bool aspired = false;   // admitted despite tabu because it beat ov_min
};
using TabuObserver = std::function<void(const TabuStep&)>;

// Best-improvement tabu search over single-bit flips.  Runs exactly alpha
// iterations; each iteration flips the admissible variable with the smallest
// delta (ties to the lowest index, so the walk is deterministic).  A flipped
// variable is tabu for `tenure` iterations, but a tabu move is admissible
// when taking it lands strictly below ov_min (aspiration).  If every move is
// excluded, the globally smallest delta is taken.  `rng` is part of the
// interface and not consumed by this implementation.
TabuOutcome tabu_search(const QuboProblem& problem, const Bits& x_start,
                        const TabuConfig& config, Rng& rng,
                        const TabuObserver& observer = {});

}  // namespace subq
