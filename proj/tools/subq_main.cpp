#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subq/bench.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitParse = 2;   // an input file failed to load or parse
constexpr int kExitUsage = 64;  // bad flag value or combination

// Flag combinations CLI11 cannot express (cross-option checks, sweep
// values); mapped to kExitUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> instance_paths;
  int problem = -1;  // -1: subcommand default (solve: 1, others: all)
  std::string format = "auto";
  std::vector<std::string> algorithms;
  std::string out = ".";
  bool porcelain = false;
  bool no_traces = false;
  bool run_to_budget = false;
  std::string reference_path;
  int reps = -1;  // -1: subcommand default (solve: 1, others: 10)
  int workers = 1;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> target;

  int z = 4;
  int alpha = 0;
  int tenure = 0;
  double w1 = 1.0;
  double w2 = 1.0;
  double w3 = 0.5;
  std::string annealer = "cosine";
  std::string backend = "annealed";
  int machine_size = 50;
  int sweeps = 150;
  int restarts = 3;
  int patience = 30;
  int epoch_cap = 300;

  int rounds = 300;
  int baseline_alpha = 0;
  double perturb_fraction = 0.1;

  std::string sweep_param;
  std::vector<std::string> sweep_values;
};

void add_instance_options(CLI::App* cmd, Options& o, bool single) {
  auto* inst = cmd->add_option("-i,--instance", o.instance_paths,
                               "Instance file (OR-Library or Palubeckis "
                               "triplet format)")
                   ->required();
  if (single) inst->expected(1);
  cmd->add_option("--problem", o.problem,
                  "1-based problem index inside the file; 0 means every "
                  "problem it contains");
  cmd->add_option("--format", o.format,
                  "Input format instead of auto-detection")
      ->check(CLI::IsMember({"auto", "orlib", "palubeckis"}));
}

void add_solver_options(CLI::App* cmd, Options& o) {
  cmd->add_option("-z,--solutions", o.z, "Solution set size");
  cmd->add_option("--alpha", o.alpha,
                  "Tabu iterations per solution per epoch; 0 means 5n");
  cmd->add_option("--tenure", o.tenure, "Tabu tenure; 0 means max(1, n/150)");
  cmd->add_option("--w1", o.w1, "Weight on the column-weight score");
  cmd->add_option("--w2", o.w2, "Weight on the deviation score");
  cmd->add_option("--w3", o.w3, "Weight on the flip-stability penalty");
  cmd->add_option("--annealer", o.annealer, "Mutation-rate schedule")
      ->check(CLI::IsMember({"cosine", "constant", "step"}));
  cmd->add_option("--backend", o.backend, "Subproblem solver")
      ->check(CLI::IsMember({"annealed", "exact"}));
  cmd->add_option("-c,--machine-size", o.machine_size,
                  "Largest subproblem the backend accepts");
  cmd->add_option("--sweeps", o.sweeps, "Annealed backend passes per restart");
  cmd->add_option("--restarts", o.restarts, "Annealed backend restarts");
  cmd->add_option("--patience", o.patience,
                  "Stop after this many epochs without improvement");
  cmd->add_option("--epoch-cap", o.epoch_cap, "Hard epoch limit");
  cmd->add_option("--seed", o.seed, "Base seed of the run seed schedule");
  cmd->add_option("--target", o.target,
                  "Stop once the objective reaches this value");
  cmd->add_option("--rounds", o.rounds, "Baseline restart-round cap");
  cmd->add_option("--baseline-alpha", o.baseline_alpha,
                  "Baseline tabu iterations per round; 0 means 20n");
  cmd->add_option("--perturb-fraction", o.perturb_fraction,
                  "Fraction of bits the diversified-tabu baseline flips "
                  "between rounds");
  cmd->add_option("-o,--out", o.out, "Output directory")->envname("SUBQ_OUT");
  cmd->add_option("--reference", o.reference_path,
                  "Reference-optimum table (instance,best_known,source)");
  cmd->add_flag("--porcelain", o.porcelain,
                "Strict key=value stdout, no comment lines");
}

void add_bench_options(CLI::App* cmd, Options& o) {
  cmd->add_option("-r,--reps", o.reps, "Repetitions per pair");
  cmd->add_option("--workers", o.workers, "Concurrent runs");
  cmd->add_flag("--no-traces", o.no_traces, "Skip per-run trace files");
  cmd->add_flag("--run-to-budget", o.run_to_budget,
                "Ignore the reference table for early stopping");
}

subq::BenchConfig to_bench_config(const Options& o) {
  subq::BenchConfig cfg;
  cfg.repetitions = o.reps;
  cfg.base_seed = o.seed;
  cfg.workers = o.workers;
  cfg.out_dir = o.out;
  cfg.write_traces = !o.no_traces;
  cfg.stop_at_reference = !o.run_to_budget;

  cfg.solver.z = o.z;
  cfg.solver.alpha = o.alpha;
  cfg.solver.tenure = o.tenure;
  cfg.solver.weights = subq::Weights{o.w1, o.w2, o.w3};
  cfg.solver.annealer = o.annealer == "constant"
                            ? subq::AnnealerKind::constant
                        : o.annealer == "step" ? subq::AnnealerKind::step
                                               : subq::AnnealerKind::cosine;
  cfg.solver.backend.kind = o.backend == "exact" ? subq::BackendKind::exact
                                                 : subq::BackendKind::annealed;
  cfg.solver.backend.machine_size = o.machine_size;
  cfg.solver.backend.sweeps = o.sweeps;
  cfg.solver.backend.restarts = o.restarts;
  cfg.solver.patience = o.patience;
  cfg.solver.epoch_cap = o.epoch_cap;
  cfg.solver.target = o.target;

  cfg.baseline.rounds = o.rounds;
  cfg.baseline.alpha = o.baseline_alpha;
  cfg.baseline.tenure = o.tenure;
  cfg.baseline.perturb_fraction = o.perturb_fraction;
  cfg.baseline.patience = o.patience;
  cfg.baseline.backend = cfg.solver.backend;

  if (!o.reference_path.empty()) {
    cfg.reference = subq::load_reference_table(o.reference_path);
  }
  return cfg;
}

std::vector<subq::QuboProblem> load_problems(const Options& o,
                                             int default_problem) {
  std::optional<subq::InstanceFormat> fmt;
  if (o.format == "orlib") fmt = subq::InstanceFormat::orlib;
  if (o.format == "palubeckis") fmt = subq::InstanceFormat::palubeckis;
  const int wanted = o.problem >= 0 ? o.problem : default_problem;
  if (wanted < 0) throw UsageError("problem index must not be negative");

  std::vector<subq::QuboProblem> problems;
  for (const std::string& path : o.instance_paths) {
    subq::InstanceFile file = subq::load_instances(path, fmt);
    for (const std::string& w : file.warnings) {
      std::cerr << "warning: " << w << '\n';
    }
    if (wanted > 0) {
      if (wanted > static_cast<int>(file.problems.size())) {
        throw UsageError("problem index " + std::to_string(wanted) +
                         " but " + path + " holds " +
                         std::to_string(file.problems.size()) + " problems");
      }
      problems.push_back(std::move(file.problems[wanted - 1]));
    } else {
      for (subq::QuboProblem& p : file.problems) {
        problems.push_back(std::move(p));
      }
    }
  }
  return problems;
}

void write_snapshot(const CLI::App& app, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const fs::path path = fs::path(out_dir) / "config.snapshot";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << app.config_to_str(true, true);
}

void kv(const std::string& key, const std::string& value) {
  std::cout << key << '=' << value << '\n';
}

void kv(const std::string& key, std::int64_t value) {
  std::cout << key << '=' << value << '\n';
}

void note(const Options& o, const std::string& text) {
  if (!o.porcelain) std::cout << "# " << text << '\n';
}

std::string format_double(double value) {
  std::ostringstream s;
  s << value;
  return s.str();
}

std::string rate_string(const subq::Aggregate& a) {
  if (!a.has_reference) return "n/a";
  return std::to_string(a.successes) + "/" + std::to_string(a.runs);
}

void print_aggregates(const subq::BenchReport& report) {
  for (const subq::Aggregate& a : report.aggregates) {
    kv("success." + a.instance + "." + a.algorithm, rate_string(a));
    kv("median_epochs." + a.instance + "." + a.algorithm,
       format_double(a.median_epochs_to_best));
  }
}

int cmd_solve(const CLI::App& app, const Options& o) {
  std::vector<subq::QuboProblem> problems;
  subq::BenchConfig cfg;
  try {
    problems = load_problems(o, 1);
    cfg = to_bench_config(o);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  if (problems.size() != 1) {
    throw UsageError("solve expects exactly one problem; use --problem");
  }
  if (o.algorithms.size() > 1) {
    throw UsageError("solve takes a single --algorithm");
  }
  const std::string algorithm =
      o.algorithms.empty() ? "hybrid" : o.algorithms[0];
  cfg.repetitions = o.reps >= 0 ? o.reps : 1;
  if (cfg.repetitions != 1) {
    throw UsageError("solve runs exactly once; use bench for repetitions");
  }

  write_snapshot(app, o.out);
  const subq::BenchReport report =
      subq::run_benchmark(problems, {algorithm}, cfg);
  const subq::RunRecord& rec = report.runs.at(0);

  note(o, "one run of " + algorithm + " on " + rec.instance);
  kv("instance", rec.instance);
  kv("algorithm", rec.algorithm);
  kv("seed", std::to_string(rec.seed));
  kv("best", rec.best);
  kv("epochs", rec.epochs_run);
  kv("epochs_to_best", rec.epochs_to_best);
  if (rec.has_reference) kv("success", rec.success ? "1" : "0");
  if (o.target) kv("target_reached", rec.best <= *o.target ? "1" : "0");
  if (!rec.trace_file.empty()) kv("trace", rec.trace_file);
  kv("out", o.out);
  return 0;
}

int cmd_bench(const CLI::App& app, const Options& o) {
  std::vector<subq::QuboProblem> problems;
  subq::BenchConfig cfg;
  try {
    problems = load_problems(o, 0);
    cfg = to_bench_config(o);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  cfg.repetitions = o.reps >= 0 ? o.reps : 10;
  const std::vector<std::string> algorithms =
      o.algorithms.empty() ? subq::known_algorithms() : o.algorithms;

  write_snapshot(app, o.out);
  const subq::BenchReport report =
      subq::run_benchmark(problems, algorithms, cfg);

  note(o, std::to_string(report.runs.size()) + " runs over " +
              std::to_string(problems.size()) + " instances");
  print_aggregates(report);
  kv("results", o.out + "/results.csv");
  kv("results_json", o.out + "/results.json");
  return 0;
}

int cmd_ablate(const CLI::App& app, const Options& o) {
  std::vector<subq::QuboProblem> problems;
  subq::BenchConfig cfg;
  try {
    problems = load_problems(o, 0);
    cfg = to_bench_config(o);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  if (!o.algorithms.empty()) {
    throw UsageError("ablate always runs hybrid, no_sm, and no_im");
  }
  cfg.repetitions = o.reps >= 0 ? o.reps : 10;
  const std::vector<std::string> algorithms{"hybrid", "no_sm", "no_im"};

  write_snapshot(app, o.out);
  const subq::BenchReport report =
      subq::run_benchmark(problems, algorithms, cfg);

  // Per instance, the best objective over the repetitions of each variant,
  // and its gap to the full loop's.
  std::map<std::string, std::map<std::string, std::int64_t>> best;
  for (const subq::RunRecord& r : report.runs) {
    auto& slot = best[r.instance];
    const auto it = slot.find(r.algorithm);
    if (it == slot.end() || r.best < it->second) slot[r.algorithm] = r.best;
  }

  const fs::path csv_path = fs::path(o.out) / "ablate.csv";
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
  csv << "instance,algorithm,best,gap\n";
  for (const subq::QuboProblem& p : problems) {
    const auto& slot = best.at(p.name());
    const std::int64_t full = slot.at("hybrid");
    for (const std::string& a : algorithms) {
      const std::int64_t b = slot.at(a);
      csv << p.name() << ',' << a << ',' << b << ',' << (b - full) << '\n';
      kv("gap." + p.name() + "." + a, b - full);
    }
  }
  print_aggregates(report);
  kv("ablate", csv_path.string());
  kv("results", o.out + "/results.csv");
  return 0;
}

// The hyperparameters the sweep command understands, applied to a copy of
// the base configuration.
void apply_sweep_value(subq::BenchConfig& cfg, const std::string& param,
                       const std::string& value) {
  const auto as_int = [&](int lo) {
    int v = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || v < lo) {
      throw UsageError("bad sweep value \"" + value + "\" for " + param);
    }
    return v;
  };
  const auto as_double = [&]() {
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      throw UsageError("bad sweep value \"" + value + "\" for " + param);
    }
  };
  if (param == "c") {
    cfg.solver.backend.machine_size = as_int(1);
    cfg.baseline.backend.machine_size = cfg.solver.backend.machine_size;
  } else if (param == "z") {
    cfg.solver.z = as_int(1);
  } else if (param == "alpha") {
    cfg.solver.alpha = as_int(1);
  } else if (param == "w1") {
    cfg.solver.weights.w1 = as_double();
  } else if (param == "w2") {
    cfg.solver.weights.w2 = as_double();
  } else if (param == "w3") {
    cfg.solver.weights.w3 = as_double();
  } else if (param == "annealer") {
    if (value == "cosine") {
      cfg.solver.annealer = subq::AnnealerKind::cosine;
    } else if (value == "constant") {
      cfg.solver.annealer = subq::AnnealerKind::constant;
    } else if (value == "step") {
      cfg.solver.annealer = subq::AnnealerKind::step;
    } else {
      throw UsageError("bad sweep value \"" + value + "\" for annealer");
    }
  } else {
    throw UsageError("unknown sweep parameter \"" + param + "\"");
  }
}

int cmd_sweep(const CLI::App& app, const Options& o) {
  std::vector<subq::QuboProblem> problems;
  subq::BenchConfig base;
  try {
    problems = load_problems(o, 0);
    base = to_bench_config(o);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  base.repetitions = o.reps >= 0 ? o.reps : 10;
  if (!o.algorithms.empty()) {
    throw UsageError("sweep always runs the hybrid loop");
  }
  if (o.sweep_values.empty()) throw UsageError("sweep needs --values");
  {
    // Surface an unknown parameter or a bad value before any run starts.
    subq::BenchConfig probe = base;
    for (const std::string& value : o.sweep_values) {
      apply_sweep_value(probe, o.sweep_param, value);
    }
  }

  write_snapshot(app, o.out);

  const fs::path sweep_path = fs::path(o.out) / "sweep.csv";
  const fs::path series_path = fs::path(o.out) / "sweep_series.csv";
  std::ofstream sweep_csv(sweep_path, std::ios::binary);
  std::ofstream series_csv(series_path, std::ios::binary);
  if (!sweep_csv || !series_csv) {
    throw std::runtime_error("cannot write sweep outputs under " + o.out);
  }
  sweep_csv << "param,value,instance,runs,successes,median_epochs_to_best\n";
  series_csv << "param,value,instance,rep,epoch,best\n";

  for (const std::string& value : o.sweep_values) {
    subq::BenchConfig cfg = base;
    apply_sweep_value(cfg, o.sweep_param, value);
    cfg.out_dir =
        (fs::path(o.out) / (o.sweep_param + "=" + value)).string();
    const subq::BenchReport report =
        subq::run_benchmark(problems, {"hybrid"}, cfg);

    for (const subq::Aggregate& a : report.aggregates) {
      sweep_csv << o.sweep_param << ',' << value << ',' << a.instance << ','
                << a.runs << ','
                << (a.has_reference ? std::to_string(a.successes) : "n/a")
                << ',' << format_double(a.median_epochs_to_best) << '\n';
      kv("median_epochs." + o.sweep_param + "=" + value + "." + a.instance,
         format_double(a.median_epochs_to_best));
    }
    for (const subq::RunRecord& r : report.runs) {
      for (std::size_t epoch = 0; epoch < r.best_by_epoch.size(); ++epoch) {
        series_csv << o.sweep_param << ',' << value << ',' << r.instance
                   << ',' << r.rep << ',' << epoch << ','
                   << r.best_by_epoch[epoch] << '\n';
      }
    }
  }
  kv("sweep", sweep_path.string());
  kv("series", series_path.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid QUBO heuristic: tabu refinement with guided "
               "subproblem solves on an emulated annealer"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");

  Options o;
  CLI::App* solve = app.add_subcommand("solve", "One run on one problem");
  add_instance_options(solve, o, true);
  add_solver_options(solve, o);
  solve->add_option("--algorithm", o.algorithms,
                    "hybrid, no_sm, no_im, dtabu, or randsub")
      ->check(CLI::IsMember(subq::known_algorithms()));

  CLI::App* bench =
      app.add_subcommand("bench", "Repetition matrix with success rates");
  add_instance_options(bench, o, false);
  add_solver_options(bench, o);
  add_bench_options(bench, o);
  bench->add_option("--algorithm", o.algorithms,
                    "Algorithms to run (default: all five)")
      ->check(CLI::IsMember(subq::known_algorithms()))
      ->delimiter(',');

  CLI::App* sweep =
      app.add_subcommand("sweep", "One hyperparameter over a value list");
  add_instance_options(sweep, o, false);
  add_solver_options(sweep, o);
  add_bench_options(sweep, o);
  sweep->add_option("--param", o.sweep_param,
                    "c, z, alpha, w1, w2, w3, or annealer")
      ->required();
  sweep->add_option("--values", o.sweep_values, "Comma-separated value list")
      ->required()
      ->delimiter(',');

  CLI::App* ablate =
      app.add_subcommand("ablate", "hybrid vs no_sm vs no_im, shared seeds");
  add_instance_options(ablate, o, false);
  add_solver_options(ablate, o);
  add_bench_options(ablate, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (app.got_subcommand(solve)) {
      code = cmd_solve(app, o);
    } else if (app.got_subcommand(bench)) {
      code = cmd_bench(app, o);
    } else if (app.got_subcommand(sweep)) {
      code = cmd_sweep(app, o);
    } else {
      code = cmd_ablate(app, o);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const subq::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  // Timing stays off stdout so identical runs stay byte-identical there.
  std::fprintf(stderr, "wall_seconds=%.3f\n", wall);
  return code;
}
