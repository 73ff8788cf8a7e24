#include "subq/ising.hpp"

#include <stdexcept>
#include <utility>

namespace subq {

IsingProblem::IsingProblem(int n, std::vector<Rational> j_flat,
                           std::vector<Rational> h, Rational offset)
    : n_(n), j_(std::move(j_flat)), h_(std::move(h)), offset_(offset) {
  if (n_ < 1) throw std::invalid_argument("spin problem needs a variable");
  if (j_.size() != static_cast<std::size_t>(n_) * n_ ||
      h_.size() != static_cast<std::size_t>(n_))
    throw std::invalid_argument("coupling or field size does not match n");
  for (int i = 0; i < n_; ++i) {
    if (j(i, i) != Rational(0))
      throw std::invalid_argument("coupling diagonal must be zero");
    for (int k = i + 1; k < n_; ++k)
      if (j(i, k) != j(k, i))
        throw std::invalid_argument("coupling matrix must be symmetric");
  }
}

Rational IsingProblem::energy(const Spins& s) const {
  if (static_cast<int>(s.size()) != n_)
    throw std::invalid_argument("energy: spin count does not match problem");
  for (std::int8_t v : s)
    if (v != 1 && v != -1)
      throw std::invalid_argument("energy: spins must be -1 or +1");
  Rational acc(0);
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < n_; ++k) {
      if (k == i) continue;
      const Rational& jik = j(i, k);
      if (jik == Rational(0)) continue;
      acc = acc - jik * Rational(static_cast<std::int64_t>(s[i]) * s[k]);
    }
    acc = acc - h_[i] * Rational(s[i]);
  }
  return acc;
}

// Substituting x = (s + 1) / 2 into the binary objective gives
//   J(i,k) = -q(i,k) / 4           for i != k,
//   h(i)   = -(q(i,i) + sum_{k != i} q(i,k)) / 2,
//   offset = sum_i q(i,i) / 2 + sum_{i != k} q(i,k) / 4.
IsingProblem to_ising(const QuboProblem& problem) {
  const int n = problem.size();
  std::vector<Rational> j(static_cast<std::size_t>(n) * n, Rational(0));
  std::vector<Rational> h(n, Rational(0));
  std::int64_t diag_sum = 0;
  std::int64_t inter_sum = 0;
  for (int i = 0; i < n; ++i) {
    const auto row = problem.row(i);
    diag_sum += row[i];
    std::int64_t row_inter = 0;
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      row_inter += row[k];
      j[static_cast<std::size_t>(i) * n + k] = Rational(-row[k], 4);
    }
    inter_sum += row_inter;
    h[i] = Rational(-(row[i] + row_inter), 2);
  }
  const Rational offset = Rational(diag_sum, 2) + Rational(inter_sum, 4);
  return IsingProblem(n, std::move(j), std::move(h), offset);
}

Spins spins_from_bits(const Bits& x) {
  Spins s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1)
      throw std::invalid_argument("spins_from_bits: values must be 0 or 1");
    s[i] = x[i] ? 1 : -1;
  }
  return s;
}

Bits bits_from_spins(const Spins& s) {
  Bits x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 1 && s[i] != -1)
      throw std::invalid_argument("bits_from_spins: values must be -1 or +1");
    x[i] = s[i] == 1 ? 1 : 0;
  }
  return x;
}

}  // namespace subq
