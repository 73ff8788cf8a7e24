#include "subq/tabu.hpp"

#include <limits>
#include <stdexcept>

namespace subq {

TabuOutcome tabu_search(const QuboProblem& problem, const Bits& x_start,
                        const TabuConfig& config, Rng& /*rng*/,
                        const TabuObserver& observer) {
  const int n = problem.size();
  const int alpha = config.alpha;
  if (alpha < 0) throw std::invalid_argument("alpha must not be negative");
  const int tenure = config.tenure > 0 ? config.tenure : default_tenure(n);

  SolverState state = make_state(problem, x_start);
  TabuOutcome out;
  out.x_min = state.x;
  out.ov_min = state.objective;
  out.flip_counts.assign(n, 0);

  // counter[k] > 0 means k is tabu.  Counters decay by one per iteration;
  // the decay is folded into the selection scan below, which reads each
  // counter exactly once per iteration anyway.
  std::vector<int> counter(n, 0);

  for (int it = 0; it < alpha; ++it) {
    const std::int64_t* d = state.deltas.data();
    std::int64_t best_d = std::numeric_limits<std::int64_t>::max();
    std::int64_t all_d = std::numeric_limits<std::int64_t>::max();
    int best = -1;
    int all = -1;
    for (int k = 0; k < n; ++k) {
      int c = counter[k];
      if (c > 0) counter[k] = --c;
      const std::int64_t dk = d[k];
      if (dk < all_d) {
        all_d = dk;
        all = k;
      }
      if ((c <= 0 || state.objective + dk < out.ov_min) && dk < best_d) {
        best_d = dk;
        best = k;
      }
    }
    const int i = best >= 0 ? best : all;  // everything tabu: take the best move anyway
    const bool was_tabu = counter[i] > 0;
    const bool aspired = best >= 0 && was_tabu;

    apply_flip(state, problem, i);
    counter[i] += tenure;
    ++out.flip_counts[i];
    if (state.objective < out.ov_min) {
      out.ov_min = state.objective;
      out.x_min = state.x;
    }
    if (observer) observer({it, i, state.objective, was_tabu, aspired});
  }

  out.x_final = std::move(state.x);
  return out;
}

}  // namespace subq
