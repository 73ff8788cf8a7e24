#pragma once

#include <map>
#include <string>
#include <vector>

#include "subq/baselines.hpp"
#include "subq/driver.hpp"
#include "subq/instance_io.hpp"

namespace subq {

// Repetition harness shared by the bench, sweep, and ablate commands.
// Runs are seeded by (base seed, instance name, repetition) only, so every
// algorithm sees the same starting conditions on the same repetition; two
// algorithm columns of one report are a paired comparison.
struct BenchConfig {
  int repetitions = 10;
  std::uint64_t base_seed = 1;
  int workers = 1;         // concurrent runs; output is order-independent
  std::string out_dir = ".";
  bool write_traces = true;
  // Hand each run the instance's reference objective as an early-stop
  // target, the way success-rate experiments are usually budgeted.
  bool stop_at_reference = true;
  SolverConfig solver;      // hybrid, no_sm, no_im
  BaselineConfig baseline;  // dtabu, randsub
  std::map<std::string, ReferenceEntry> reference;
};

struct RunRecord {
  std::string instance;
  std::string algorithm;
  int rep = 0;
  std::uint64_t seed = 0;
  std::int64_t best = 0;
  int epochs_run = 0;
  int epochs_to_best = 0;
  bool has_reference = false;
  bool success = false;  // best reached the reference; needs has_reference
  double wall_seconds = 0.0;  // lands in timings.csv only, never in results
  std::string trace_file;     // relative to out_dir; empty when not written
  // Best objective after initialization, then after each epoch; what the
  // sweep command plots.  Not serialized to results.csv/json (the trace
  // files carry it already).
  std::vector<std::int64_t> best_by_epoch;
};

struct Aggregate {
  std::string instance;
  std::string algorithm;
  int runs = 0;
  bool has_reference = false;
  int successes = 0;
  double median_epochs_to_best = 0.0;
};

struct BenchReport {
  std::vector<RunRecord> runs;        // instance-major, algorithm, rep
  std::vector<Aggregate> aggregates;  // instance-major, algorithm
};

// The algorithm names the harness accepts.
inline const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names{"hybrid", "no_sm", "no_im",
                                              "dtabu", "randsub"};
  return names;
}

// The per-run seed schedule; exposed so tests can pin it.
std::uint64_t run_seed(std::uint64_t base_seed, const std::string& instance,
                       int rep);

// Runs every (instance, algorithm, repetition) combination, writes
// results.csv, results.json, timings.csv, and traces/*.jsonl under
// config.out_dir, and returns the same records.  Everything written except
// timings.csv is byte-deterministic in the inputs; wall-clock times are
// kept out of results and traces for that reason.
BenchReport run_benchmark(const std::vector<const QuboProblem*>& instances,
                          const std::vector<std::string>& algorithms,
                          const BenchConfig& config);

// Convenience for callers holding whole problems.
BenchReport run_benchmark(const std::vector<QuboProblem>& instances,
                          const std::vector<std::string>& algorithms,
                          const BenchConfig& config);

}  // namespace subq
