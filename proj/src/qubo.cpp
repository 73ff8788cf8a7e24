#include "subq/qubo.hpp"

#include <stdexcept>
#include <utility>

namespace subq {

namespace {

void check_bits(const Bits& x, int n, const char* what) {
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument(std::string(what) +
                                ": assignment length does not match problem");
  for (std::uint8_t b : x)
    if (b > 1)
      throw std::invalid_argument(std::string(what) +
                                  ": assignment values must be 0 or 1");
}

}  // namespace

QuboProblem::QuboProblem(std::string name, int n,
                         std::vector<std::int64_t> dense, bool negated)
    : n_(n), q_(std::move(dense)), name_(std::move(name)), negated_(negated) {
  if (n_ < 1) throw std::invalid_argument("problem needs at least one variable");
  if (q_.size() != static_cast<std::size_t>(n_) * n_)
    throw std::invalid_argument("dense matrix size does not match n*n");
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (q(i, j) != q(j, i))
        throw std::invalid_argument("matrix must be symmetric");
}

QuboProblem QuboProblem::from_triplets(std::string name, int n,
                                       std::span<const Triplet> triplets,
                                       bool negate_values) {
  if (n < 1) throw std::invalid_argument("problem needs at least one variable");
  std::vector<std::int64_t> dense(static_cast<std::size_t>(n) * n, 0);
  for (const Triplet& t : triplets) {
    if (t.i < 0 || t.i >= n || t.j < 0 || t.j >= n)
      throw std::invalid_argument("triplet index out of range");
    const std::int64_t v = negate_values ? -t.value : t.value;
    dense[static_cast<std::size_t>(t.i) * n + t.j] = v;
    dense[static_cast<std::size_t>(t.j) * n + t.i] = v;
  }
  return QuboProblem(std::move(name), n, std::move(dense), negate_values);
}

std::int64_t evaluate(const QuboProblem& problem, const Bits& x) {
  const int n = problem.size();
  check_bits(x, n, "evaluate");
  std::int64_t acc = 0;
  for (int i = 0; i < n; ++i) {
    if (!x[i]) continue;
    const auto row = problem.row(i);
    acc += row[i];
    for (int j = 0; j < n; ++j)
      if (x[j] && j != i) acc += row[j];
  }
  return acc;
}

std::vector<std::int64_t> init_deltas(const QuboProblem& problem,
                                      const Bits& x) {
  const int n = problem.size();
  check_bits(x, n, "init_deltas");
  std::vector<std::int64_t> deltas(n);
  for (int k = 0; k < n; ++k) {
    const auto row = problem.row(k);
    std::int64_t inter = 0;
    for (int j = 0; j < n; ++j)
      if (x[j] && j != k) inter += row[j];
    const std::int64_t side = x[k] ? -1 : 1;
    deltas[k] = side * (row[k] + 2 * inter);
  }
  return deltas;
}

SolverState make_state(const QuboProblem& problem, Bits x) {
  check_bits(x, problem.size(), "make_state");
  SolverState state;
  state.objective = evaluate(problem, x);
  state.deltas = init_deltas(problem, x);
  state.x = std::move(x);
  return state;
}

void apply_flip(SolverState& state, const QuboProblem& problem, int i) {
  const int n = problem.size();
  if (i < 0 || i >= n) throw std::invalid_argument("apply_flip: index out of range");
  const std::int64_t di = state.deltas[i];
  // With x_i about to change by s_i = (1 - 2 x_i), every other delta moves by
  // 2 q(i,j) * s_i * (1 - 2 x_j).  The i-th entry is overwritten after the
  // loop, which keeps the loop branch-free.
  const std::int64_t c = state.x[i] ? -2 : 2;
  const auto row = problem.row(i);
  std::int64_t* d = state.deltas.data();
  const std::uint8_t* xb = state.x.data();
  for (int j = 0; j < n; ++j) d[j] += (xb[j] ? -c : c) * row[j];
  state.deltas[i] = -di;
  state.objective += di;
  state.x[i] ^= 1u;
}

}  // namespace subq
