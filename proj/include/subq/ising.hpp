#pragma once

#include <vector>

#include "subq/qubo.hpp"
#include "subq/rational.hpp"

namespace subq {

// One -1/+1 value per variable.
using Spins = std::vector<std::int8_t>;

// Spin form of a binary quadratic objective:
//
//   E(s) = - sum_{i,j} J(i,j) s_i s_j - sum_i h(i) s_i
//
// with J symmetric and zero on the diagonal.  energy(s) + offset() equals
// the binary objective at x = (s + 1) / 2 exactly; the change of variables
// introduces halves and quarters, hence rational coefficients.
class IsingProblem {
 public:
  IsingProblem(int n, std::vector<Rational> j_flat, std::vector<Rational> h,
               Rational offset);

  int size() const { return n_; }
  const Rational& j(int i, int k) const {
    return j_[static_cast<std::size_t>(i) * n_ + k];
  }
  const Rational& h(int i) const { return h_[i]; }
  const Rational& offset() const { return offset_; }

  // E(s); the offset is not included.
  Rational energy(const Spins& s) const;

 private:
  int n_ = 0;
  std::vector<Rational> j_;
  std::vector<Rational> h_;
  Rational offset_;
};

IsingProblem to_ising(const QuboProblem& problem);

Spins spins_from_bits(const Bits& x);
Bits bits_from_spins(const Spins& s);

}  // namespace subq
