#include "subq/baselines.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "subq/im.hpp"

namespace subq {

namespace {

// Tags mirror the driver's derivation scheme; the values only need to be
// distinct within one run.
constexpr std::uint64_t kStreamInit = 1;
constexpr std::uint64_t kStreamIm = 2;
constexpr std::uint64_t kStreamTabu = 3;
constexpr std::uint64_t kStreamPerturb = 5;

struct RoundLoop {
  Bits x;
  std::int64_t objective = 0;
  Bits best_x;
  std::int64_t best = 0;
  RunTrace trace;
  int stall = 0;
};

void check_config(const BaselineConfig& config) {
  if (config.rounds < 0) {
    throw std::invalid_argument("rounds must not be negative");
  }
  if (config.patience < 1) {
    throw std::invalid_argument("patience must be at least 1");
  }
  if (config.perturb_fraction < 0.0 || config.perturb_fraction > 1.0) {
    throw std::invalid_argument("perturb fraction must lie in [0, 1]");
  }
}

RoundLoop start_loop(const QuboProblem& problem, const BaselineConfig& config,
                     const char* algorithm) {
  const int n = problem.size();
  RoundLoop loop;
  if (config.x_start) {
    loop.x = *config.x_start;
    if (static_cast<int>(loop.x.size()) != n) {
      throw std::invalid_argument("starting point has the wrong length");
    }
  } else {
    Rng rng = derive_rng(config.seed, {kStreamInit, 0, 0});
    loop.x.resize(n);
    for (int j = 0; j < n; ++j) loop.x[j] = rng_coin(rng) ? 1 : 0;
  }
  loop.objective = evaluate(problem, loop.x);
  loop.best_x = loop.x;
  loop.best = loop.objective;
  loop.trace.algorithm = algorithm;
  loop.trace.audit["tabu"] = "on";
  loop.trace.audit["mutation"] = "off";
  loop.trace.audit["annealer"] = "off";
  loop.trace.init_objectives = {loop.objective};
  loop.trace.init_best = loop.objective;
  return loop;
}

void record_round(RoundLoop& loop, int round, bool improved, double seconds) {
  EpochRecord rec;
  rec.epoch = round;
  rec.best = loop.best;
  rec.solution_objectives = {loop.objective};
  rec.rate = 0.0;
  rec.wall_seconds = seconds;
  loop.trace.epochs.push_back(std::move(rec));
  loop.trace.epochs_run = round;
  loop.stall = improved ? 0 : loop.stall + 1;
}

SolveResult finish_loop(RoundLoop&& loop) {
  loop.trace.best_objective = loop.best;
  loop.trace.best_x = loop.best_x;
  SolveResult result;
  result.objective = loop.best;
  result.trace = std::move(loop.trace);
  result.x = std::move(loop.best_x);
  return result;
}

bool take_if_better(RoundLoop& loop, int round) {
  if (loop.objective < loop.best) {
    loop.best = loop.objective;
    loop.best_x = loop.x;
    loop.trace.epochs_to_best = round;
    return true;
  }
  return false;
}

bool target_met(const BaselineConfig& config, const RoundLoop& loop) {
  return config.target && loop.best <= *config.target;
}

}  // namespace

SolveResult baseline_d2ts(const QuboProblem& problem,
                          const BaselineConfig& config) {
  check_config(config);
  const int n = problem.size();
  const TabuConfig tabu_cfg{
      config.alpha > 0 ? config.alpha : default_baseline_alpha(n),
      config.tenure};

  RoundLoop loop = start_loop(problem, config, "dtabu");
  loop.trace.audit["im_passes"] = "off";
  loop.trace.audit["subset_selection"] = "off";
  loop.trace.audit["perturbation"] = "random_fraction";

  const int flips_per_round =
      static_cast<int>(std::floor(n * config.perturb_fraction + 1e-9));
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);

  if (!target_met(config, loop)) {
    for (int round = 1; round <= config.rounds; ++round) {
      const auto t0 = std::chrono::steady_clock::now();
      Rng tabu_rng = derive_rng(config.seed, {kStreamTabu,
                                              static_cast<std::uint64_t>(round),
                                              0});
      TabuOutcome out = tabu_search(problem, loop.x, tabu_cfg, tabu_rng);
      loop.x = std::move(out.x_min);
      loop.objective = out.ov_min;
      const bool improved = take_if_better(loop, round);

      record_round(loop, round, improved,
                   std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count());
      if (loop.stall >= config.patience) break;
      if (target_met(config, loop)) break;

      // Diversify: restart from the incumbent with a random slice flipped.
      Rng perturb_rng = derive_rng(
          config.seed, {kStreamPerturb, static_cast<std::uint64_t>(round), 0});
      loop.x = loop.best_x;
      for (int idx : select_random(all, flips_per_round, perturb_rng)) {
        loop.x[idx] ^= 1u;
      }
      loop.objective = evaluate(problem, loop.x);
    }
  }
  return finish_loop(std::move(loop));
}

SolveResult baseline_random_subqubo(const QuboProblem& problem,
                                    const BaselineConfig& config) {
  check_config(config);
  const int n = problem.size();
  const TabuConfig tabu_cfg{
      config.alpha > 0 ? config.alpha : default_baseline_alpha(n),
      config.tenure};

  RoundLoop loop = start_loop(problem, config, "randsub");
  loop.trace.audit["im_passes"] = "partial";
  loop.trace.audit["subset_selection"] = "random";

  BackendConfig bcfg = config.backend;
  if (bcfg.machine_size > n) {
    loop.trace.warnings.push_back(
        "machine size " + std::to_string(bcfg.machine_size) +
        " exceeds problem size " + std::to_string(n) + ", clamped");
    bcfg.machine_size = n;
  }
  const auto backend = make_backend(bcfg);

  if (!target_met(config, loop)) {
    for (int round = 1; round <= config.rounds; ++round) {
      const auto t0 = std::chrono::steady_clock::now();
      Rng tabu_rng = derive_rng(config.seed, {kStreamTabu,
                                              static_cast<std::uint64_t>(round),
                                              0});
      TabuOutcome out = tabu_search(problem, loop.x, tabu_cfg, tabu_rng);
      loop.x = std::move(out.x_min);
      loop.objective = out.ov_min;
      bool improved = take_if_better(loop, round);

      std::vector<Bits> set(1, loop.x);
      const std::vector<std::int64_t> objectives{loop.objective};
      std::vector<Rng> streams;
      streams.push_back(derive_rng(
          config.seed, {kStreamIm, static_cast<std::uint64_t>(round), 0}));
      PartialPass pass =
          im_partial_random(set, problem, *backend, objectives, streams);
      loop.x = std::move(set[0]);
      loop.objective = pass.objectives[0];
      improved = take_if_better(loop, round) || improved;

      record_round(loop, round, improved,
                   std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count());
      if (loop.stall >= config.patience) break;
      if (target_met(config, loop)) break;
    }
  }
  return finish_loop(std::move(loop));
}

}  // namespace subq
