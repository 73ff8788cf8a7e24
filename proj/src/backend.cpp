#include "subq/backend.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace subq {

Bits solve_exact(const SubQubo& sub) {
  const int m = sub.matrix.size();
  if (m > kExactSizeBound)
    throw std::invalid_argument("exact solve limited to " +
                                std::to_string(kExactSizeBound) +
                                " variables");
  // Gray-code walk: consecutive codes differ in one bit, so each assignment
  // costs one delta update.  The all-zero start has objective 0 by
  // construction (the bias sits on the diagonal).
  SolverState state = make_state(sub.matrix, Bits(m, 0));
  std::uint32_t code = 0;
  std::uint32_t best_code = 0;
  std::int64_t best = state.objective;
  const std::uint64_t total = 1ull << m;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int bit = std::countr_zero(k);
    apply_flip(state, sub.matrix, bit);
    code ^= 1u << bit;
    if (state.objective < best ||
        (state.objective == best && code < best_code)) {
      best = state.objective;
      best_code = code;
    }
  }
  Bits y(m);
  for (int a = 0; a < m; ++a) y[a] = (best_code >> a) & 1u;
  return y;
}

Bits solve_annealed(const SubQubo& sub, const BackendConfig& config,
                    const Bits& start, Rng& rng) {
  const int m = sub.matrix.size();
  if (static_cast<int>(start.size()) != m)
    throw std::invalid_argument("solve_annealed: start length mismatch");
  const int sweeps = config.sweeps > 1 ? config.sweeps : 1;
  const int restarts = config.restarts > 1 ? config.restarts : 1;
  const double t_cold = config.t_cold > 1e-9 ? config.t_cold : 1e-9;

  SolverState state = make_state(sub.matrix, start);
  Bits best_x = state.x;
  std::int64_t best = state.objective;

  for (int run = 0; run < restarts; ++run) {
    if (run > 0) {
      Bits fresh(m);
      for (int a = 0; a < m; ++a) fresh[a] = rng_coin(rng) ? 1 : 0;
      state = make_state(sub.matrix, std::move(fresh));
      if (state.objective < best) {
        best = state.objective;
        best_x = state.x;
      }
    }
    // Hot enough that the largest current move is routinely accepted.
    std::int64_t span = 1;
    for (std::int64_t d : state.deltas) span = std::max(span, d < 0 ? -d : d);
    const double t_hot = std::max(t_cold * 2.0, static_cast<double>(span));
    const double decay =
        sweeps > 1 ? std::pow(t_cold / t_hot, 1.0 / (sweeps - 1)) : 1.0;
    double temp = t_hot;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
      for (int k = 0; k < m; ++k) {
        const std::int64_t d = state.deltas[k];
        if (d <= 0 ||
            rng_unit(rng) < std::exp(-static_cast<double>(d) / temp)) {
          apply_flip(state, sub.matrix, k);
          if (state.objective < best) {
            best = state.objective;
            best_x = state.x;
          }
        }
      }
      temp *= decay;
    }
  }
  return best_x;
}

namespace {

class ExactBackend final : public IsingBackend {
 public:
  explicit ExactBackend(int cap) : cap_(cap) {}
  int capacity() const override { return cap_; }
  Bits solve(const SubQubo& sub, const Bits&, Rng&) const override {
    if (sub.matrix.size() > cap_)
      throw std::invalid_argument("subproblem exceeds machine size");
    return solve_exact(sub);
  }

 private:
  int cap_;
};

class AnnealedBackend final : public IsingBackend {
 public:
  explicit AnnealedBackend(BackendConfig config) : config_(config) {}
  int capacity() const override { return config_.machine_size; }
  Bits solve(const SubQubo& sub, const Bits& start, Rng& rng) const override {
    if (sub.matrix.size() > config_.machine_size)
      throw std::invalid_argument("subproblem exceeds machine size");
    return solve_annealed(sub, config_, start, rng);
  }

 private:
  BackendConfig config_;
};

}  // namespace

std::unique_ptr<IsingBackend> make_backend(const BackendConfig& config) {
  if (config.machine_size < 1)
    throw std::invalid_argument("machine size must be positive");
  if (config.kind == BackendKind::exact) {
    if (config.machine_size > kExactSizeBound)
      throw std::invalid_argument("exact backend limited to " +
                                  std::to_string(kExactSizeBound) +
                                  " variables");
    return std::make_unique<ExactBackend>(config.machine_size);
  }
  return std::make_unique<AnnealedBackend>(config);
}

}  // namespace subq
