#pragma once

#include <span>
#include <vector>

#include "asmooth/model.hpp"

namespace asmooth::detail {

// Dense simplex for   max c'z  s.t.  M z <= b,  z >= 0   with b >= 0, so the
// origin is a feasible start. Uses a condensed (Tucker) tableau, which keeps
// each pivot O(rows * cols) when there are many constraints and few
// variables, and Bland's rule since witness LPs are heavily degenerate.
struct LpResult {
  bool bounded = true;
  double objective = 0.0;
  Vector solution;
};

LpResult maximize(const Matrix& constraints, const Vector& bounds, const Vector& objective);

struct Witness {
  bool found = false;
  double margin = 0.0;  // how far the candidate undercuts every other vector
  Belief point;
};

// Rows <x, candidate - other> for every `other`: the candidate must beat all
// of them at the witness.
// `rows`, when given, seeds the search with those indices into `others` and
// receives every row the search adds; reusing it across searches that share
// a block saves most of the work.
struct WitnessBlock {
  const Vector* candidate;
  std::span<const Vector* const> others;
  std::vector<std::size_t>* rows = nullptr;
};

// Searches the simplex for a belief where every block's candidate beats all
// of its others by more than `tolerance`.
Witness find_witness(std::span<const WitnessBlock> blocks, double tolerance);

// Searches the simplex for a belief where `candidate` is lower than every
// vector in `others` by more than `tolerance`.
Witness find_witness(const Vector& candidate, std::span<const Vector* const> others,
                     double tolerance);

}  // namespace asmooth::detail
