#include "subq/subqubo.hpp"

#include <stdexcept>

namespace subq {

namespace {

void check_indices(std::span<const int> indices, int n) {
  if (indices.empty()) throw std::invalid_argument("subproblem needs indices");
  int prev = -1;
  for (int idx : indices) {
    if (idx < 0 || idx >= n)
      throw std::invalid_argument("subproblem index out of range");
    if (idx <= prev)
      throw std::invalid_argument(
          "subproblem indices must be strictly ascending");
    prev = idx;
  }
}

QuboProblem restricted_matrix(const QuboProblem& problem, const Bits& x,
                              std::span<const int> indices) {
  const int n = problem.size();
  const int m = static_cast<int>(indices.size());
  std::vector<std::uint8_t> in_sub(n, 0);
  for (int idx : indices) in_sub[idx] = 1;
  std::vector<std::int64_t> dense(static_cast<std::size_t>(m) * m, 0);
  for (int a = 0; a < m; ++a) {
    const auto row = problem.row(indices[a]);
    std::int64_t bias = 0;
    for (int j = 0; j < n; ++j)
      if (x[j] && !in_sub[j]) bias += row[j];
    for (int b = 0; b < m; ++b)
      dense[static_cast<std::size_t>(a) * m + b] = row[indices[b]];
    dense[static_cast<std::size_t>(a) * m + a] = row[indices[a]] + 2 * bias;
  }
  return QuboProblem(problem.name() + "#sub", m, std::move(dense),
                     problem.negated());
}

}  // namespace

SubQubo build_subqubo(const QuboProblem& problem, const Bits& x,
                      std::span<const int> indices) {
  const int n = problem.size();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("build_subqubo: assignment length mismatch");
  check_indices(indices, n);
  QuboProblem matrix = restricted_matrix(problem, x, indices);

  // Frozen-part objective, summed directly over the complement.
  std::vector<std::uint8_t> in_sub(n, 0);
  for (int idx : indices) in_sub[idx] = 1;
  std::int64_t offset = 0;
  for (int i = 0; i < n; ++i) {
    if (in_sub[i] || !x[i]) continue;
    const auto row = problem.row(i);
    offset += row[i];
    for (int j = 0; j < n; ++j)
      if (j != i && x[j] && !in_sub[j]) offset += row[j];
  }
  return {std::vector<int>(indices.begin(), indices.end()), std::move(matrix),
          offset};
}

SubQubo build_subqubo(const QuboProblem& problem, const Bits& x,
                      std::span<const int> indices, std::int64_t objective) {
  const int n = problem.size();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("build_subqubo: assignment length mismatch");
  check_indices(indices, n);
  QuboProblem matrix = restricted_matrix(problem, x, indices);
  const std::int64_t at_current = evaluate(matrix, gather_bits(x, indices));
  return {std::vector<int>(indices.begin(), indices.end()), std::move(matrix),
          objective - at_current};
}

Bits gather_bits(const Bits& x, std::span<const int> indices) {
  Bits y(indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a) {
    if (indices[a] < 0 || indices[a] >= static_cast<int>(x.size()))
      throw std::invalid_argument("gather_bits: index out of range");
    y[a] = x[indices[a]];
  }
  return y;
}

void scatter_bits(Bits& x, std::span<const int> indices, const Bits& y) {
  if (y.size() != indices.size())
    throw std::invalid_argument("scatter_bits: size mismatch");
  for (std::size_t a = 0; a < indices.size(); ++a) {
    if (indices[a] < 0 || indices[a] >= static_cast<int>(x.size()))
      throw std::invalid_argument("scatter_bits: index out of range");
    x[indices[a]] = y[a];
  }
}

}  // namespace subq
