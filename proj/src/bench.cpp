#include "subq/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace subq {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Task {
  int instance = 0;   // index into the instance list
  int algorithm = 0;  // index into the algorithm list
  int rep = 0;
};

std::string safe_name(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '_';
    if (!ok) c = '_';
  }
  return out;
}

SolveResult dispatch(const std::string& algorithm, const QuboProblem& problem,
                     const BenchConfig& config, std::uint64_t seed,
                     std::optional<std::int64_t> target) {
  if (algorithm == "hybrid" || algorithm == "no_sm" || algorithm == "no_im") {
    SolverConfig sc = config.solver;
    sc.seed = seed;
    if (target) sc.target = target;
    const AblationMode mode = algorithm == "hybrid"   ? AblationMode::none
                              : algorithm == "no_sm" ? AblationMode::no_sm
                                                     : AblationMode::no_im;
    return solve_ablated(problem, sc, mode);
  }
  if (algorithm == "dtabu" || algorithm == "randsub") {
    BaselineConfig bc = config.baseline;
    bc.seed = seed;
    if (target) bc.target = target;
    return algorithm == "dtabu" ? baseline_d2ts(problem, bc)
                                : baseline_random_subqubo(problem, bc);
  }
  throw std::invalid_argument("unknown algorithm \"" + algorithm + "\"");
}

void write_trace(const fs::path& path, const RunTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  ordered_json init;
  init["epoch"] = 0;
  init["best"] = trace.init_best;
  init["solutions"] = trace.init_objectives;
  out << init.dump() << '\n';
  for (const EpochRecord& rec : trace.epochs) {
    ordered_json line;
    line["epoch"] = rec.epoch;
    line["best"] = rec.best;
    line["solutions"] = rec.solution_objectives;
    line["rate"] = rec.rate;
    out << line.dump() << '\n';
  }
}

double median_epochs(std::vector<int> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

void write_results_csv(const fs::path& path,
                       const std::vector<RunRecord>& runs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "instance,algorithm,rep,seed,best,epochs_run,epochs_to_best,"
         "success,trace\n";
  for (const RunRecord& r : runs) {
    out << r.instance << ',' << r.algorithm << ',' << r.rep << ',' << r.seed
        << ',' << r.best << ',' << r.epochs_run << ',' << r.epochs_to_best
        << ',' << (r.has_reference ? (r.success ? "1" : "0") : "n/a") << ','
        << r.trace_file << '\n';
  }
}

void write_timings_csv(const fs::path& path,
                       const std::vector<RunRecord>& runs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "instance,algorithm,rep,wall_seconds\n";
  out << std::fixed << std::setprecision(6);
  for (const RunRecord& r : runs) {
    out << r.instance << ',' << r.algorithm << ',' << r.rep << ','
        << r.wall_seconds << '\n';
  }
}

void write_results_json(const fs::path& path,
                        const std::vector<const QuboProblem*>& instances,
                        const std::vector<std::string>& algorithms,
                        const BenchConfig& config, const BenchReport& report) {
  ordered_json doc;
  ordered_json cfg;
  cfg["repetitions"] = config.repetitions;
  cfg["base_seed"] = config.base_seed;
  cfg["stop_at_reference"] = config.stop_at_reference;
  cfg["algorithms"] = algorithms;
  {
    std::vector<std::string> names;
    names.reserve(instances.size());
    for (const QuboProblem* p : instances) names.push_back(p->name());
    cfg["instances"] = names;
  }
  ordered_json solver;
  solver["z"] = config.solver.z;
  solver["alpha"] = config.solver.alpha;
  solver["tenure"] = config.solver.tenure;
  solver["w1"] = config.solver.weights.w1;
  solver["w2"] = config.solver.weights.w2;
  solver["w3"] = config.solver.weights.w3;
  solver["annealer"] = config.solver.annealer == AnnealerKind::cosine ? "cosine"
                       : config.solver.annealer == AnnealerKind::constant
                           ? "constant"
                           : "step";
  solver["backend"] =
      config.solver.backend.kind == BackendKind::exact ? "exact" : "annealed";
  solver["machine_size"] = config.solver.backend.machine_size;
  solver["sweeps"] = config.solver.backend.sweeps;
  solver["restarts"] = config.solver.backend.restarts;
  solver["patience"] = config.solver.patience;
  solver["epoch_cap"] = config.solver.epoch_cap;
  cfg["solver"] = solver;
  ordered_json baseline;
  baseline["rounds"] = config.baseline.rounds;
  baseline["alpha"] = config.baseline.alpha;
  baseline["tenure"] = config.baseline.tenure;
  baseline["perturb_fraction"] = config.baseline.perturb_fraction;
  baseline["patience"] = config.baseline.patience;
  cfg["baseline"] = baseline;
  doc["config"] = cfg;

  ordered_json runs = ordered_json::array();
  for (const RunRecord& r : report.runs) {
    ordered_json row;
    row["instance"] = r.instance;
    row["algorithm"] = r.algorithm;
    row["rep"] = r.rep;
    row["seed"] = r.seed;
    row["best"] = r.best;
    row["epochs_run"] = r.epochs_run;
    row["epochs_to_best"] = r.epochs_to_best;
    if (r.has_reference) {
      row["success"] = r.success;
    } else {
      row["success"] = nullptr;
    }
    row["trace"] = r.trace_file;
    runs.push_back(std::move(row));
  }
  doc["runs"] = std::move(runs);

  ordered_json aggregates = ordered_json::array();
  for (const Aggregate& a : report.aggregates) {
    ordered_json row;
    row["instance"] = a.instance;
    row["algorithm"] = a.algorithm;
    row["runs"] = a.runs;
    if (a.has_reference) {
      row["successes"] = a.successes;
      row["success_rate"] =
          std::to_string(a.successes) + "/" + std::to_string(a.runs);
    } else {
      row["successes"] = nullptr;
      row["success_rate"] = "n/a";
    }
    row["median_epochs_to_best"] = a.median_epochs_to_best;
    aggregates.push_back(std::move(row));
  }
  doc["aggregates"] = std::move(aggregates);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace

std::uint64_t run_seed(std::uint64_t base_seed, const std::string& instance,
                       int rep) {
  std::uint64_t h = mix64(base_seed);
  h = mix64(h ^ fnv1a(instance));
  h = mix64(h ^ static_cast<std::uint64_t>(rep));
  return h;
}

BenchReport run_benchmark(const std::vector<const QuboProblem*>& instances,
                          const std::vector<std::string>& algorithms,
                          const BenchConfig& config) {
  if (config.repetitions < 0) {
    throw std::invalid_argument("repetitions must not be negative");
  }
  if (config.workers < 1) {
    throw std::invalid_argument("workers must be at least 1");
  }
  for (const std::string& a : algorithms) {
    const auto& known = known_algorithms();
    if (std::find(known.begin(), known.end(), a) == known.end()) {
      throw std::invalid_argument("unknown algorithm \"" + a + "\"");
    }
  }
  {
    std::vector<std::string> names;
    for (const QuboProblem* p : instances) names.push_back(p->name());
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
      throw std::invalid_argument("duplicate instance name");
    }
  }

  const fs::path out_dir(config.out_dir);
  fs::create_directories(out_dir);
  if (config.write_traces) fs::create_directories(out_dir / "traces");

  std::vector<Task> tasks;
  for (int i = 0; i < static_cast<int>(instances.size()); ++i) {
    for (int a = 0; a < static_cast<int>(algorithms.size()); ++a) {
      for (int rep = 0; rep < config.repetitions; ++rep) {
        tasks.push_back(Task{i, a, rep});
      }
    }
  }

  BenchReport report;
  report.runs.resize(tasks.size());

  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_lock;

  const auto work = [&]() {
    for (;;) {
      const std::size_t t = cursor.fetch_add(1);
      if (t >= tasks.size()) return;
      try {
        const Task& task = tasks[t];
        const QuboProblem& problem = *instances[task.instance];
        const std::string& algorithm = algorithms[task.algorithm];

        RunRecord rec;
        rec.instance = problem.name();
        rec.algorithm = algorithm;
        rec.rep = task.rep;
        rec.seed = run_seed(config.base_seed, problem.name(), task.rep);

        std::optional<std::int64_t> target;
        const auto ref = config.reference.find(problem.name());
        rec.has_reference = ref != config.reference.end();
        if (rec.has_reference && config.stop_at_reference) {
          target = ref->second.best_known;
        }

        const auto t0 = std::chrono::steady_clock::now();
        SolveResult result = dispatch(algorithm, problem, config, rec.seed,
                                      target);
        rec.wall_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - t0)
                               .count();

        rec.best = result.objective;
        rec.epochs_run = result.trace.epochs_run;
        rec.epochs_to_best = result.trace.epochs_to_best;
        rec.best_by_epoch.reserve(result.trace.epochs.size() + 1);
        rec.best_by_epoch.push_back(result.trace.init_best);
        for (const EpochRecord& e : result.trace.epochs) {
          rec.best_by_epoch.push_back(e.best);
        }
        rec.success =
            rec.has_reference && rec.best <= ref->second.best_known;
        if (config.write_traces) {
          const std::string file = safe_name(problem.name()) + "_" +
                                   algorithm + "_r" +
                                   std::to_string(task.rep) + ".jsonl";
          write_trace(out_dir / "traces" / file, result.trace);
          rec.trace_file = "traces/" + file;
        }
        report.runs[t] = std::move(rec);
      } catch (...) {
        const std::lock_guard<std::mutex> hold(failure_lock);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int worker_count = std::min<std::size_t>(
      std::max(1, config.workers), std::max<std::size_t>(1, tasks.size()));
  if (worker_count <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (int w = 0; w < worker_count; ++w) pool.emplace_back(work);
    for (std::thread& worker : pool) worker.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (int i = 0; i < static_cast<int>(instances.size()); ++i) {
    for (int a = 0; a < static_cast<int>(algorithms.size()); ++a) {
      if (config.repetitions == 0) continue;
      Aggregate agg;
      agg.instance = instances[i]->name();
      agg.algorithm = algorithms[a];
      std::vector<int> epochs;
      for (const RunRecord& r : report.runs) {
        if (r.instance != agg.instance || r.algorithm != agg.algorithm) {
          continue;
        }
        ++agg.runs;
        agg.has_reference = r.has_reference;
        if (r.success) ++agg.successes;
        epochs.push_back(r.epochs_to_best);
      }
      agg.median_epochs_to_best = median_epochs(std::move(epochs));
      report.aggregates.push_back(std::move(agg));
    }
  }

  write_results_csv(out_dir / "results.csv", report.runs);
  write_timings_csv(out_dir / "timings.csv", report.runs);
  write_results_json(out_dir / "results.json", instances, algorithms, config,
                     report);
  return report;
}

BenchReport run_benchmark(const std::vector<QuboProblem>& instances,
                          const std::vector<std::string>& algorithms,
                          const BenchConfig& config) {
  std::vector<const QuboProblem*> pointers;
  pointers.reserve(instances.size());
  for (const QuboProblem& p : instances) pointers.push_back(&p);
  return run_benchmark(pointers, algorithms, config);
}

}  // namespace subq
