#pragma once

#include <span>
#include <vector>

#include "subq/qubo.hpp"
#include "subq/rng.hpp"

namespace subq {

struct Weights {
  double w1 = 1.0;  // on the normalized column weight
  double w2 = 1.0;  // on the deviation score
  double w3 = 0.5;  // on the flip-stability penalty
};

// Column weight eta_j = sum_i |q(i,j)|, diagonal included.
std::vector<double> weight_effect(const QuboProblem& problem);

// Min-max rescaling to [0, 1]; a constant input maps every entry to
// `degenerate` (there is nothing to rank in that case).
std::vector<double> minmax_normalize(std::span<const double> values,
                                     double degenerate);

// Flip-stability penalty for one solution: 1 - t_k / max(t); an all-zero
// count row yields all ones.  Values lie in [0, 1]; frequently flipped
// variables score low.
std::vector<double> stability(std::span<const int> flip_counts);

// Column deviation over the solution set: 1 - |sum_p S[p][j] - z/2| / (z/2).
// Columns split evenly across the set score 1, unanimous columns score 0.
std::vector<double> deviation(const std::vector<Bits>& solutions);

// Per-solution variable scores: A[p][j] = w1*eta_norm[j] + w2*gamma[j]
//                                       - w3*delta_rows[p][j].
std::vector<std::vector<double>> aggregate(
    std::span<const double> eta_norm, std::span<const double> gamma,
    const std::vector<std::vector<double>>& delta_rows, const Weights& w);

enum class AnnealerKind { cosine, constant, step };

// cosine:   0.3 * (1 + cos(pi*t/15)) * 0.99^t   (0.6 at t=0, 0 at t=15)
// constant: 0.6
// step:     0.6 minus 0.05 every two steps, floored at 0
double rate_at(AnnealerKind kind, int t);

struct AnnealerState {
  AnnealerKind kind = AnnealerKind::cosine;
  int t = 0;
  double r = 0.6;
};

AnnealerState make_annealer(AnnealerKind kind);
void next_rate(AnnealerState& state);

// The `count` pool entries with the highest scores, ties to the lowest
// index; result ascending.  count above the pool size selects everything.
std::vector<int> select_top(std::span<const double> scores,
                            std::span<const int> pool, int count);

// `count` distinct pool entries chosen uniformly; result ascending.
std::vector<int> select_random(std::span<const int> pool, int count, Rng& rng);

// Rate-controlled random flips.  For each solution p the candidate pool is
// every index not in protected_indices[p]; the floor(pool*r) highest-scored
// candidates form the subset, and each member flips independently with its
// min-max-normalized score as probability (a subset with equal scores,
// including a singleton, flips with probability 1).  streams[p] drives
// solution p alone, so solutions can be processed in any order.
void mutate(std::vector<Bits>& solutions,
            const std::vector<std::vector<double>>& scores, double r,
            const std::vector<std::vector<int>>& protected_indices,
            std::span<Rng> streams);

// Same pool and subset size, but the subset is drawn uniformly and every
// member flips.  This is the mutation used when scores are switched off.
void mutate_random(std::vector<Bits>& solutions, double r,
                   const std::vector<std::vector<int>>& protected_indices,
                   std::span<Rng> streams);

}  // namespace subq
