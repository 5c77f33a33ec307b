#include <algorithm>

#include "asmooth/error.hpp"
#include "asmooth/solver.hpp"
#include "lp.hpp"

namespace asmooth {

namespace {

// a <= b + tolerance in every component.
bool dominates(const Vector& a, const Vector& b, double tolerance) {
  return ((a - b).array() <= tolerance).all();
}

// Strict weak order used to pick one vector among several minimisers at a
// point: lower value first, then lexicographically smaller components. The
// lexicographic winner at any point belongs to the minimal representation.
bool better_at(const Vector& point, const AlphaVector& a, const AlphaVector& b) {
  const double va = point.dot(a.values);
  const double vb = point.dot(b.values);
  if (va != vb) return va < vb;
  for (Eigen::Index i = 0; i < a.values.size(); ++i)
    if (a.values(i) != b.values(i)) return a.values(i) < b.values(i);
  return false;
}

AlphaSet prune_pairwise(AlphaSet vectors, double tolerance) {
  const std::size_t n = vectors.size();
  std::vector<bool> keep(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n && keep[i]; ++j) {
      if (i == j || !keep[j]) continue;
      if (!dominates(vectors[j].values, vectors[i].values, tolerance)) continue;
      // Mutual domination means equal within tolerance: keep the earlier one.
      if (dominates(vectors[i].values, vectors[j].values, tolerance) && i < j) continue;
      keep[i] = false;
    }
  }
  AlphaSet out;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) out.push_back(std::move(vectors[i]));
  return out;
}

// Lark's filter: grow a set of confirmed vectors, each admitted only at a
// witness belief where it is the (lexicographic) minimiser among all
// remaining candidates.
AlphaSet prune_lp(AlphaSet vectors, double tolerance) {
  const std::size_t n = vectors.size();
  if (n <= 1) return vectors;
  const Eigen::Index dim = vectors.front().values.size();

  std::vector<bool> pending(n, true);
  std::vector<std::size_t> confirmed;
  std::vector<const Vector*> confirmed_values;

  const auto admit_best_at = [&](const Vector& point) -> bool {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i)
      if (pending[i] && (best == n || better_at(point, vectors[i], vectors[best]))) best = i;
    if (best == n) return false;
    // At a vertex the best pending vector may be no better than one already
    // confirmed; witness points from the LP always pass this test.
    const double candidate_value = point.dot(vectors[best].values);
    for (const Vector* w : confirmed_values)
      if (point.dot(*w) <= candidate_value + tolerance) return false;
    pending[best] = false;
    confirmed.push_back(best);
    confirmed_values.push_back(&vectors[best].values);
    return true;
  };

  for (Eigen::Index i = 0; i < dim; ++i) admit_best_at(Vector::Unit(dim, i));

  for (std::size_t index = 0; index < n; ++index) {
    const Vector& values = vectors[index].values;
    while (pending[index]) {
      const bool covered =
          std::any_of(confirmed_values.begin(), confirmed_values.end(),
                      [&](const Vector* w) { return dominates(*w, values, tolerance); });
      if (covered) {
        pending[index] = false;
        break;
      }
      const detail::Witness witness = detail::find_witness(values, confirmed_values, tolerance);
      if (!witness.found) {
        pending[index] = false;
        break;
      }
      // Admits this candidate or a better one at the witness; in the latter
      // case the candidate is tested again against the larger set. A witness
      // margin lost to round-off admits nothing and drops the candidate.
      if (!admit_best_at(witness.point)) pending[index] = false;
    }
  }

  std::sort(confirmed.begin(), confirmed.end());
  AlphaSet out;
  out.reserve(confirmed.size());
  for (std::size_t i : confirmed) out.push_back(std::move(vectors[i]));
  return out;
}

// Pointers to every vector of `set` except the i-th, for each i.
std::vector<std::vector<const Vector*>> leave_one_out(const AlphaSet& set) {
  std::vector<std::vector<const Vector*>> out(set.size());
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = 0; j < set.size(); ++j)
      if (j != i) out[i].push_back(&set[j].values);
  return out;
}

}  // namespace

AlphaSet pruned_cross_sum(const AlphaSet& left, const AlphaSet& right, PruneMode mode,
                          double tolerance) {
  if (left.empty() || right.empty()) throw UsageError("cannot cross-sum an empty alpha set");
  if (mode != PruneMode::kLp) {
    AlphaSet sums;
    sums.reserve(left.size() * right.size());
    for (const auto& a : left)
      for (const auto& b : right) sums.push_back({a.values + b.values, a.action});
    return prune(std::move(sums), mode, tolerance);
  }
  const auto left_others = leave_one_out(left);
  const auto right_others = leave_one_out(right);
  // Rows found for one vector describe its own region and carry over to
  // every pair it appears in.
  std::vector<std::vector<std::size_t>> left_rows(left.size()), right_rows(right.size());
  AlphaSet out;
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      const detail::WitnessBlock blocks[] = {{&left[i].values, left_others[i], &left_rows[i]},
                                             {&right[j].values, right_others[j], &right_rows[j]}};
      if (detail::find_witness(blocks, tolerance).found)
        out.push_back({left[i].values + right[j].values, left[i].action});
    }
  }
  return out;
}

AlphaSet prune(AlphaSet vectors, PruneMode mode, double tolerance) {
  if (vectors.empty()) throw UsageError("cannot prune an empty alpha set");
  switch (mode) {
    case PruneMode::kNone:
      return vectors;
    case PruneMode::kPairwise:
      return prune_pairwise(std::move(vectors), tolerance);
    case PruneMode::kLp:
      return prune_lp(std::move(vectors), tolerance);
  }
  return vectors;
}

}  // namespace asmooth
