#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace subq {

// One 0/1 value per variable.
using Bits = std::vector<std::uint8_t>;

struct Triplet {
  int i = 0;
  int j = 0;
  std::int64_t value = 0;
};

// Bounds enforced by the file loaders.  With n <= 10^4 and |q| <= 10^4 the
// objective magnitude stays below n^2 * max|q| = 10^12, far inside int64,
// so all objective and delta arithmetic is exact.
inline constexpr int kMaxVariables = 10000;
inline constexpr std::int64_t kMaxAbsCoefficient = 10000;

// Dense symmetric QUBO, row-major.  The objective is
//
//   f(x) = sum_i q(i,i) x_i  +  sum_{i != j} q(i,j) x_i x_j
//
// where the second sum runs over ordered pairs, so a pair weight v stored on
// both sides contributes 2v when both bits are set.  Instances are immutable
// once constructed and safe to share across threads.
class QuboProblem {
 public:
  QuboProblem(std::string name, int n, std::vector<std::int64_t> dense,
              bool negated = false);

  // Builds the symmetric matrix from (i, j, v) entries: both q(i,j) and
  // q(j,i) are set to v (negated when negate_values, for sources that state
  // the objective as a maximization).  A repeated (i, j) overwrites.
  static QuboProblem from_triplets(std::string name, int n,
                                   std::span<const Triplet> triplets,
                                   bool negate_values);

  int size() const { return n_; }
  std::int64_t q(int i, int j) const {
    return q_[static_cast<std::size_t>(i) * n_ + j];
  }
  std::span<const std::int64_t> row(int i) const {
    return {q_.data() + static_cast<std::size_t>(i) * n_,
            static_cast<std::size_t>(n_)};
  }
  const std::string& name() const { return name_; }
  // True when the loader flipped the sign of every coefficient relative to
  // the source file (minimizing here == maximizing there).
  bool negated() const { return negated_; }

 private:
  int n_ = 0;
  std::vector<std::int64_t> q_;
  std::string name_;
  bool negated_ = false;
};

std::int64_t evaluate(const QuboProblem& problem, const Bits& x);

// One-flip objective changes: deltas[k] == evaluate at x with bit k flipped,
// minus evaluate at x.
std::vector<std::int64_t> init_deltas(const QuboProblem& problem,
                                      const Bits& x);

// An assignment with its objective and one-flip deltas kept in sync.
struct SolverState {
  Bits x;
  std::int64_t objective = 0;
  std::vector<std::int64_t> deltas;
};

SolverState make_state(const QuboProblem& problem, Bits x);

// Flips bit i and updates objective and every delta in O(n).
void apply_flip(SolverState& state, const QuboProblem& problem, int i);

}  // namespace subq
