#pragma once

#include <map>
#include <optional>
#include <string>

#include "subq/backend.hpp"
#include "subq/control.hpp"
#include "subq/tabu.hpp"

namespace subq {

struct SolverConfig {
  int z = 4;       // solutions evolved side by side
  int alpha = 0;   // tabu iterations per solution per epoch; <= 0 → 5n
  int tenure = 0;  // tabu tenure; <= 0 → max(1, n/150)
  Weights weights;
  AnnealerKind annealer = AnnealerKind::cosine;
  BackendConfig backend;
  int patience = 30;   // stop after this many epochs without improvement
  int epoch_cap = 300;
  std::uint64_t seed = 1;
  // Optional early stop: terminate once the incumbent is at or below this.
  std::optional<std::int64_t> target;
};

struct EpochRecord {
  int epoch = 0;  // 1-based
  std::int64_t best = 0;
  std::vector<std::int64_t> solution_objectives;  // after mutation
  double rate = 0.0;                              // mutation rate this epoch
  double wall_seconds = 0.0;  // never serialized; see bench trace format
};

struct RunTrace {
  std::string algorithm;
  // Feature switches, for auditing what a variant actually ran.
  std::map<std::string, std::string> audit;
  std::vector<std::string> warnings;
  std::vector<std::int64_t> init_objectives;
  std::int64_t init_best = 0;
  std::vector<EpochRecord> epochs;
  int epochs_run = 0;
  // Epoch whose work produced the final best; 0 means the initialization
  // phase was never improved upon.
  int epochs_to_best = 0;
  std::int64_t best_objective = 0;
  Bits best_x;
};

struct SolveResult {
  Bits x;
  std::int64_t objective = 0;
  RunTrace trace;
};

enum class AblationMode { none, no_sm, no_im };

// The full loop: seeded random solutions, a full-coverage backend sweep,
// then epochs of tabu refinement, score-guided partial backend solves, and
// rate-annealed mutation, with the incumbent kept aside untouched.
SolveResult solve(const QuboProblem& problem, const SolverConfig& config);

// no_sm replaces every score-guided choice with a uniform random one;
// no_im skips both backend passes and opens the whole index range to
// mutation.  Everything else is identical to solve().
SolveResult solve_ablated(const QuboProblem& problem,
                          const SolverConfig& config, AblationMode mode);

}  // namespace subq
