#pragma once

#include <memory>

#include "subq/rng.hpp"
#include "subq/subqubo.hpp"

namespace subq {

enum class BackendKind { exact, annealed };

struct BackendConfig {
  BackendKind kind = BackendKind::annealed;
  int machine_size = 50;  // largest subproblem accepted
  int sweeps = 150;       // annealed: passes over the variables per restart
  int restarts = 3;       // annealed: independent trajectories, best kept
  double t_cold = 0.25;   // annealed: final temperature
};

// Enumeration is 2^m; anything larger than this is refused.
inline constexpr int kExactSizeBound = 24;

// Exhaustive minimum of the subproblem.  Ties resolve to the assignment
// whose bit pattern, read with variable 0 as the least significant bit, is
// the smallest integer.
Bits solve_exact(const SubQubo& sub);

// Simulated annealing over single-spin flips of the subproblem's spin form,
// geometric temperature schedule, starting from `start` (later restarts
// start from random assignments).  Returns the best assignment visited, so
// the result never loses to `start`.
Bits solve_annealed(const SubQubo& sub, const BackendConfig& config,
                    const Bits& start, Rng& rng);

// An emulated Ising machine: a subproblem solver with a fixed capacity.
// Implementations hold no mutable state; the caller owns the random stream.
class IsingBackend {
 public:
  virtual ~IsingBackend() = default;
  virtual int capacity() const = 0;
  virtual Bits solve(const SubQubo& sub, const Bits& start, Rng& rng) const = 0;
};

std::unique_ptr<IsingBackend> make_backend(const BackendConfig& config);

}  // namespace subq
