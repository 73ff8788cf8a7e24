#include "subq/control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subq {

namespace {

// floor over a product that is an integer in exact arithmetic can land one
// ulp low in binary floating point; the epsilon pulls those back up.
int floor_product(int count, double r) {
  return static_cast<int>(std::floor(count * r + 1e-9));
}

std::vector<int> pool_without(int n, const std::vector<int>& excluded) {
  std::vector<std::uint8_t> mark(n, 0);
  for (int idx : excluded) {
    if (idx < 0 || idx >= n)
      throw std::invalid_argument("protected index out of range");
    mark[idx] = 1;
  }
  std::vector<int> pool;
  pool.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    if (!mark[j]) pool.push_back(j);
  return pool;
}

void flip_subset(Bits& x, const std::vector<int>& subset,
                 const std::vector<double>& probs, Rng& rng) {
  for (std::size_t a = 0; a < subset.size(); ++a)
    if (rng_unit(rng) < probs[a]) x[subset[a]] ^= 1u;
}

}  // namespace

std::vector<double> weight_effect(const QuboProblem& problem) {
  const int n = problem.size();
  std::vector<double> eta(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto row = problem.row(i);
    for (int j = 0; j < n; ++j)
      eta[j] += static_cast<double>(row[j] < 0 ? -row[j] : row[j]);
  }
  return eta;
}

std::vector<double> minmax_normalize(std::span<const double> values,
                                     double degenerate) {
  if (values.empty()) return {};
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<double> out(values.size());
  if (hi == lo) {
    std::fill(out.begin(), out.end(), degenerate);
    return out;
  }
  for (std::size_t k = 0; k < values.size(); ++k)
    out[k] = (values[k] - lo) / (hi - lo);
  return out;
}

std::vector<double> stability(std::span<const int> flip_counts) {
  std::vector<double> out(flip_counts.size(), 1.0);
  int top = 0;
  for (int t : flip_counts) {
    if (t < 0) throw std::invalid_argument("flip counts must be non-negative");
    top = std::max(top, t);
  }
  if (top == 0) return out;  // nothing moved: every variable counts as stable
  for (std::size_t k = 0; k < flip_counts.size(); ++k)
    out[k] = 1.0 - static_cast<double>(flip_counts[k]) / top;
  return out;
}

std::vector<double> deviation(const std::vector<Bits>& solutions) {
  if (solutions.empty())
    throw std::invalid_argument("deviation needs at least one solution");
  const std::size_t n = solutions.front().size();
  for (const Bits& row : solutions)
    if (row.size() != n)
      throw std::invalid_argument("solutions must share one length");
  const double half = solutions.size() / 2.0;
  std::vector<double> gamma(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    int sum = 0;
    for (const Bits& row : solutions) sum += row[j];
    gamma[j] = 1.0 - std::abs(sum - half) / half;
  }
  return gamma;
}

std::vector<std::vector<double>> aggregate(
    std::span<const double> eta_norm, std::span<const double> gamma,
    const std::vector<std::vector<double>>& delta_rows, const Weights& w) {
  const std::size_t n = eta_norm.size();
  if (gamma.size() != n)
    throw std::invalid_argument("aggregate: gamma length mismatch");
  std::vector<std::vector<double>> scores(delta_rows.size());
  for (std::size_t p = 0; p < delta_rows.size(); ++p) {
    if (delta_rows[p].size() != n)
      throw std::invalid_argument("aggregate: stability row length mismatch");
    scores[p].resize(n);
    for (std::size_t j = 0; j < n; ++j)
      scores[p][j] =
          w.w1 * eta_norm[j] + w.w2 * gamma[j] - w.w3 * delta_rows[p][j];
  }
  return scores;
}

double rate_at(AnnealerKind kind, int t) {
  switch (kind) {
    case AnnealerKind::cosine:
      return 0.3 * (1.0 + std::cos(std::numbers::pi * t / 15.0)) *
             std::pow(0.99, t);
    case AnnealerKind::constant:
      return 0.6;
    case AnnealerKind::step:
      return std::max(0.0, 0.6 - 0.05 * (t / 2));
  }
  throw std::invalid_argument("unknown annealer kind");
}

AnnealerState make_annealer(AnnealerKind kind) {
  return {kind, 0, rate_at(kind, 0)};
}

void next_rate(AnnealerState& state) {
  ++state.t;
  state.r = rate_at(state.kind, state.t);
}

std::vector<int> select_top(std::span<const double> scores,
                            std::span<const int> pool, int count) {
  for (int idx : pool)
    if (idx < 0 || idx >= static_cast<int>(scores.size()))
      throw std::invalid_argument("select_top: pool index out of range");
  std::vector<int> order(pool.begin(), pool.end());
  count = std::min<int>(count, order.size());
  if (count <= 0) return {};
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<int> select_random(std::span<const int> pool, int count, Rng& rng) {
  std::vector<int> order(pool.begin(), pool.end());
  count = std::min<int>(count, order.size());
  if (count <= 0) return {};
  for (int a = 0; a < count; ++a) {
    const std::size_t pick = a + rng_below(rng, order.size() - a);
    std::swap(order[a], order[pick]);
  }
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

void mutate(std::vector<Bits>& solutions,
            const std::vector<std::vector<double>>& scores, double r,
            const std::vector<std::vector<int>>& protected_indices,
            std::span<Rng> streams) {
  if (scores.size() != solutions.size() ||
      protected_indices.size() != solutions.size() ||
      streams.size() != solutions.size())
    throw std::invalid_argument("mutate: per-solution argument count mismatch");
  for (std::size_t p = 0; p < solutions.size(); ++p) {
    const int n = static_cast<int>(solutions[p].size());
    const std::vector<int> pool = pool_without(n, protected_indices[p]);
    const int size = floor_product(static_cast<int>(pool.size()), r);
    if (size <= 0) continue;
    const std::vector<int> subset = select_top(scores[p], pool, size);
    std::vector<double> vals(subset.size());
    for (std::size_t a = 0; a < subset.size(); ++a)
      vals[a] = scores[p][subset[a]];
    const std::vector<double> probs = minmax_normalize(vals, 1.0);
    flip_subset(solutions[p], subset, probs, streams[p]);
  }
}

void mutate_random(std::vector<Bits>& solutions, double r,
                   const std::vector<std::vector<int>>& protected_indices,
                   std::span<Rng> streams) {
  if (protected_indices.size() != solutions.size() ||
      streams.size() != solutions.size())
    throw std::invalid_argument(
        "mutate_random: per-solution argument count mismatch");
  for (std::size_t p = 0; p < solutions.size(); ++p) {
    const int n = static_cast<int>(solutions[p].size());
    const std::vector<int> pool = pool_without(n, protected_indices[p]);
    const int size = floor_product(static_cast<int>(pool.size()), r);
    if (size <= 0) continue;
    const std::vector<int> subset = select_random(pool, size, streams[p]);
    for (int idx : subset) solutions[p][idx] ^= 1u;
  }
}

}  // namespace subq
