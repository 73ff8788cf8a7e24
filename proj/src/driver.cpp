#include "subq/driver.hpp"

#include <chrono>
#include <stdexcept>
#include <utility>

#include "subq/im.hpp"

namespace subq {

namespace {

// Every random draw in a run comes from a stream derived as
// derive_rng(seed, {tag, epoch, solution}).  Solutions never share a
// stream, so any dispatch order over them produces the same numbers.
constexpr std::uint64_t kStreamInit = 1;
constexpr std::uint64_t kStreamIm = 2;
constexpr std::uint64_t kStreamTabu = 3;
constexpr std::uint64_t kStreamMutate = 4;

std::vector<Rng> solution_streams(std::uint64_t seed, std::uint64_t tag,
                                  int epoch, int z) {
  std::vector<Rng> out;
  out.reserve(z);
  for (int p = 0; p < z; ++p) {
    out.push_back(derive_rng(seed, {tag, static_cast<std::uint64_t>(epoch),
                                    static_cast<std::uint64_t>(p)}));
  }
  return out;
}

const char* mode_name(AblationMode mode) {
  switch (mode) {
    case AblationMode::none:
      return "hybrid";
    case AblationMode::no_sm:
      return "no_sm";
    case AblationMode::no_im:
      return "no_im";
  }
  return "hybrid";
}

const char* annealer_name(AnnealerKind kind) {
  switch (kind) {
    case AnnealerKind::cosine:
      return "cosine";
    case AnnealerKind::constant:
      return "constant";
    case AnnealerKind::step:
      return "step";
  }
  return "cosine";
}

}  // namespace

SolveResult solve_ablated(const QuboProblem& problem,
                          const SolverConfig& config, AblationMode mode) {
  const int n = problem.size();
  if (config.z < 1) throw std::invalid_argument("z must be at least 1");
  if (config.patience < 1) {
    throw std::invalid_argument("patience must be at least 1");
  }
  if (config.epoch_cap < 0) {
    throw std::invalid_argument("epoch cap must not be negative");
  }

  const bool scored = mode != AblationMode::no_sm;
  const bool with_im = mode != AblationMode::no_im;
  const int z = config.z;
  const TabuConfig tabu_cfg{
      config.alpha > 0 ? config.alpha : default_alpha(n), config.tenure};

  RunTrace trace;
  trace.algorithm = mode_name(mode);
  trace.audit["tabu"] = "on";
  trace.audit["im_passes"] = with_im ? "full+partial" : "off";
  trace.audit["subset_selection"] =
      !with_im ? "off" : (scored ? "scored" : "random");
  trace.audit["mutation"] = scored ? "scored" : "random";
  trace.audit["annealer"] = annealer_name(config.annealer);

  BackendConfig bcfg = config.backend;
  if (bcfg.machine_size > n) {
    trace.warnings.push_back(
        "machine size " + std::to_string(bcfg.machine_size) +
        " exceeds problem size " + std::to_string(n) + ", clamped");
    bcfg.machine_size = n;
  }
  std::unique_ptr<IsingBackend> backend;
  if (with_im) backend = make_backend(bcfg);

  // (1) z random solutions, one fair coin per bit.
  std::vector<Bits> solutions(z);
  {
    auto streams = solution_streams(config.seed, kStreamInit, 0, z);
    for (int p = 0; p < z; ++p) {
      Bits& x = solutions[p];
      x.resize(n);
      for (int j = 0; j < n; ++j) x[j] = rng_coin(streams[p]) ? 1 : 0;
    }
  }

  // (2) one full-coverage backend sweep over every solution.
  std::vector<std::int64_t> objectives(z);
  if (with_im) {
    auto streams = solution_streams(config.seed, kStreamIm, 0, z);
    objectives = im_solution_set(solutions, problem, *backend, streams);
  } else {
    for (int p = 0; p < z; ++p) objectives[p] = evaluate(problem, solutions[p]);
  }

  trace.init_objectives = objectives;
  int best_p = 0;
  for (int p = 1; p < z; ++p) {
    if (objectives[p] < objectives[best_p]) best_p = p;
  }
  std::int64_t best = objectives[best_p];
  Bits best_x = solutions[best_p];
  trace.init_best = best;

  // (3) the annealer and the column weights, fixed for the whole run.
  AnnealerState annealer = make_annealer(config.annealer);
  std::vector<double> eta_norm;
  if (scored) eta_norm = minmax_normalize(weight_effect(problem), 0.0);

  // The incumbent lives outside the solution set; nothing below ever
  // writes through best_x, so the reported best cannot go back up.
  const auto update_best = [&](int p, int epoch) {
    if (objectives[p] < best) {
      best = objectives[p];
      best_x = solutions[p];
      trace.epochs_to_best = epoch;
      return true;
    }
    return false;
  };

  int stall = 0;
  if (!(config.target && best <= *config.target)) {
    for (int epoch = 1; epoch <= config.epoch_cap; ++epoch) {
      const auto t0 = std::chrono::steady_clock::now();
      bool improved = false;

      // (4a) tabu refinement; each solution continues from the best point
      // of its own walk, and the flip counts feed the scores below.
      std::vector<std::vector<int>> flip_counts(z);
      {
        auto streams = solution_streams(config.seed, kStreamTabu, epoch, z);
        for (int p = 0; p < z; ++p) {
          TabuOutcome out =
              tabu_search(problem, solutions[p], tabu_cfg, streams[p]);
          solutions[p] = std::move(out.x_min);
          objectives[p] = out.ov_min;
          flip_counts[p] = std::move(out.flip_counts);
          improved = update_best(p, epoch) || improved;
        }
      }

      // (4b) per-solution variable scores.
      std::vector<std::vector<double>> scores;
      if (scored) {
        const std::vector<double> gamma = deviation(solutions);
        std::vector<std::vector<double>> delta_rows(z);
        for (int p = 0; p < z; ++p) delta_rows[p] = stability(flip_counts[p]);
        scores = aggregate(eta_norm, gamma, delta_rows, config.weights);
      }

      // (4c) one guided backend call per solution.  The solved index sets
      // are shielded from the mutation that follows.
      std::vector<std::vector<int>> solved(z);
      if (with_im) {
        auto streams = solution_streams(config.seed, kStreamIm, epoch, z);
        PartialPass pass =
            scored ? im_partial_solution_set(solutions, scores, problem,
                                             *backend, objectives, streams)
                   : im_partial_random(solutions, problem, *backend, objectives,
                                       streams);
        solved = std::move(pass.solved);
        objectives = std::move(pass.objectives);
        for (int p = 0; p < z; ++p) improved = update_best(p, epoch) || improved;
      }

      // (4d) mutation at the current rate, then exact re-evaluation.
      const double rate = annealer.r;
      {
        auto streams = solution_streams(config.seed, kStreamMutate, epoch, z);
        if (scored) {
          mutate(solutions, scores, rate, solved, streams);
        } else {
          mutate_random(solutions, rate, solved, streams);
        }
      }
      for (int p = 0; p < z; ++p) {
        objectives[p] = evaluate(problem, solutions[p]);
        improved = update_best(p, epoch) || improved;
      }

      next_rate(annealer);

      EpochRecord rec;
      rec.epoch = epoch;
      rec.best = best;
      rec.solution_objectives = objectives;
      rec.rate = rate;
      rec.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      trace.epochs.push_back(std::move(rec));
      trace.epochs_run = epoch;

      stall = improved ? 0 : stall + 1;
      if (stall >= config.patience) break;
      if (config.target && best <= *config.target) break;
    }
  }

  trace.best_objective = best;
  trace.best_x = best_x;

  SolveResult result;
  result.x = std::move(best_x);
  result.objective = best;
  result.trace = std::move(trace);
  return result;
}

SolveResult solve(const QuboProblem& problem, const SolverConfig& config) {
  return solve_ablated(problem, config, AblationMode::none);
}

}  // namespace subq
