#pragma once

#include <span>

#include "subq/backend.hpp"
#include "subq/control.hpp"

namespace subq {

// Full-coverage pass: sweeps each solution left to right in contiguous
// blocks of the backend capacity (a smaller trailing block picks up the
// remainder), solving each block with the rest of the solution frozen.
// Block b sees the write-backs of blocks before it.  Returns the exact
// per-solution objectives after the sweep; they never exceed the objectives
// going in, because both backends return an assignment at least as good as
// the block's current bits.  streams[p] drives solution p alone.
std::vector<std::int64_t> im_solution_set(std::vector<Bits>& solutions,
                                          const QuboProblem& problem,
                                          const IsingBackend& backend,
                                          std::span<Rng> streams);

struct PartialPass {
  // Per solution: the indices handed to the backend this pass (ascending).
  std::vector<std::vector<int>> solved;
  std::vector<std::int64_t> objectives;
};

// Guided pass: for each solution, the capacity-many indices with the
// highest scores (ties to the lowest index) are re-solved in one backend
// call against the frozen rest.  `objectives` must hold the current exact
// per-solution objectives.
PartialPass im_partial_solution_set(
    std::vector<Bits>& solutions,
    const std::vector<std::vector<double>>& scores, const QuboProblem& problem,
    const IsingBackend& backend, std::span<const std::int64_t> objectives,
    std::span<Rng> streams);

// Guided pass with the index set drawn uniformly at random instead of by
// score; used when scores are switched off and by the plain subproblem
// baseline.
PartialPass im_partial_random(std::vector<Bits>& solutions,
                              const QuboProblem& problem,
                              const IsingBackend& backend,
                              std::span<const std::int64_t> objectives,
                              std::span<Rng> streams);

}  // namespace subq
