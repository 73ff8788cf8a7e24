#pragma once

#include "subq/driver.hpp"

namespace subq {

// Both baselines are deliberately simplified reimplementations: they keep
// the published budget settings (tabu length 20n, same backend model) but
// make no claim to the original codebases' internals.  They exist so the
// hybrid loop has classical and random-subproblem reference points under
// the exact same instrumentation.
struct BaselineConfig {
  int rounds = 300;  // hard cap on restart rounds
  int alpha = 0;     // tabu iterations per round; <= 0 selects 20n
  int tenure = 0;    // <= 0 selects max(1, n/150)
  // Fraction of variables flipped between rounds (diversified tabu only).
  double perturb_fraction = 0.1;
  int patience = 30;  // stop after this many rounds without improvement
  std::uint64_t seed = 1;
  std::optional<std::int64_t> target;
  BackendConfig backend;  // random-subproblem baseline only
  // Fixed starting point; absent means a seeded fair-coin assignment.
  std::optional<Bits> x_start;
};

inline int default_baseline_alpha(int n) { return 20 * n; }

// Diversified tabu: long tabu runs, each next round starting from the
// incumbent with a random fraction of its bits flipped.  Classical only,
// no backend involved.  One trace epoch per round.
SolveResult baseline_d2ts(const QuboProblem& problem,
                          const BaselineConfig& config);

// Random-subproblem loop: a long tabu run, then one backend solve of a
// uniformly random capacity-sized index set against the frozen rest,
// repeated.  Same backend and capacity as the hybrid loop, so the only
// differences are the subset choice and the missing mutation/annealer.
SolveResult baseline_random_subqubo(const QuboProblem& problem,
                                    const BaselineConfig& config);

}  // namespace subq
