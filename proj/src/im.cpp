#include "subq/im.hpp"

#include <numeric>
#include <stdexcept>

namespace subq {

namespace {

// Solves one index block against the frozen rest and writes the result
// back.  Returns the updated objective, maintained exactly via the
// restriction identity (sub-objective differences equal full differences).
std::int64_t solve_block(Bits& x, const QuboProblem& problem,
                         const IsingBackend& backend,
                         std::span<const int> indices, std::int64_t objective,
                         Rng& rng) {
  const SubQubo sub = build_subqubo(problem, x, indices, objective);
  const Bits y0 = gather_bits(x, indices);
  const Bits y = backend.solve(sub, y0, rng);
  scatter_bits(x, indices, y);
  return objective + evaluate(sub.matrix, y) - evaluate(sub.matrix, y0);
}

void check_streams(std::size_t z, std::span<Rng> streams, const char* what) {
  if (streams.size() != z)
    throw std::invalid_argument(std::string(what) +
                                ": one random stream per solution required");
}

}  // namespace

std::vector<std::int64_t> im_solution_set(std::vector<Bits>& solutions,
                                          const QuboProblem& problem,
                                          const IsingBackend& backend,
                                          std::span<Rng> streams) {
  check_streams(solutions.size(), streams, "im_solution_set");
  const int n = problem.size();
  const int m = std::min(backend.capacity(), n);
  std::vector<std::int64_t> objectives(solutions.size());
  for (std::size_t p = 0; p < solutions.size(); ++p) {
    std::int64_t obj = evaluate(problem, solutions[p]);
    for (int start = 0; start < n; start += m) {
      const int len = std::min(m, n - start);
      std::vector<int> indices(len);
      std::iota(indices.begin(), indices.end(), start);
      obj = solve_block(solutions[p], problem, backend, indices, obj,
                        streams[p]);
    }
    objectives[p] = obj;
  }
  return objectives;
}

PartialPass im_partial_solution_set(
    std::vector<Bits>& solutions,
    const std::vector<std::vector<double>>& scores, const QuboProblem& problem,
    const IsingBackend& backend, std::span<const std::int64_t> objectives,
    std::span<Rng> streams) {
  check_streams(solutions.size(), streams, "im_partial_solution_set");
  if (scores.size() != solutions.size() ||
      objectives.size() != solutions.size())
    throw std::invalid_argument(
        "im_partial_solution_set: per-solution argument count mismatch");
  const int n = problem.size();
  const int m = std::min(backend.capacity(), n);
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  PartialPass pass;
  pass.solved.resize(solutions.size());
  pass.objectives.assign(objectives.begin(), objectives.end());
  for (std::size_t p = 0; p < solutions.size(); ++p) {
    pass.solved[p] = select_top(scores[p], all, m);
    pass.objectives[p] = solve_block(solutions[p], problem, backend,
                                     pass.solved[p], objectives[p], streams[p]);
  }
  return pass;
}

PartialPass im_partial_random(std::vector<Bits>& solutions,
                              const QuboProblem& problem,
                              const IsingBackend& backend,
                              std::span<const std::int64_t> objectives,
                              std::span<Rng> streams) {
  check_streams(solutions.size(), streams, "im_partial_random");
  if (objectives.size() != solutions.size())
    throw std::invalid_argument(
        "im_partial_random: per-solution argument count mismatch");
  const int n = problem.size();
  const int m = std::min(backend.capacity(), n);
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  PartialPass pass;
  pass.solved.resize(solutions.size());
  pass.objectives.assign(objectives.begin(), objectives.end());
  for (std::size_t p = 0; p < solutions.size(); ++p) {
    pass.solved[p] = select_random(all, m, streams[p]);
    pass.objectives[p] = solve_block(solutions[p], problem, backend,
                                     pass.solved[p], objectives[p], streams[p]);
  }
  return pass;
}

}  // namespace subq
