#pragma once

#include <span>

#include "subq/qubo.hpp"

namespace subq {

// A restriction of a problem to `indices` with the rest of the assignment
// frozen: off-diagonal entries are copied, each diagonal entry absorbs the
// interaction with the frozen complement (b_i = sum over frozen j of
// 2 q(i,j) x_j), and `offset` carries the objective of the frozen part.  For
// every sub-assignment y,
//
//   evaluate(matrix, y) + offset == full objective with y written back,
//
// so solving the restriction exactly reproduces full-objective differences.
struct SubQubo {
  std::vector<int> indices;  // strictly ascending global variable ids
  QuboProblem matrix;
  std::int64_t offset = 0;
};

SubQubo build_subqubo(const QuboProblem& problem, const Bits& x,
                      std::span<const int> indices);

// Same, but with the current full objective already known; the frozen part
// then follows by subtraction instead of an O(n^2) sum.
SubQubo build_subqubo(const QuboProblem& problem, const Bits& x,
                      std::span<const int> indices, std::int64_t objective);

Bits gather_bits(const Bits& x, std::span<const int> indices);
void scatter_bits(Bits& x, std::span<const int> indices, const Bits& y);

}  // namespace subq
