#include "lp.hpp"

#include <limits>
#include <utility>
#include <vector>

#include "asmooth/error.hpp"

namespace asmooth::detail {

namespace {

constexpr double kPivotEpsilon = 1e-11;
constexpr double kReducedCostEpsilon = 1e-10;

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

LpResult maximize(const Matrix& constraints, const Vector& bounds, const Vector& objective) {
  const Eigen::Index rows = constraints.rows();
  const Eigen::Index cols = constraints.cols();
  RowMajorMatrix tableau = constraints;
  Vector rhs = bounds;
  Vector reduced = objective;
  double value = 0.0;

  // Variables 0..cols-1 are structural, cols..cols+rows-1 are slacks.
  std::vector<Eigen::Index> basic(static_cast<std::size_t>(rows));
  std::vector<Eigen::Index> nonbasic(static_cast<std::size_t>(cols));
  for (Eigen::Index r = 0; r < rows; ++r) basic[std::size_t(r)] = cols + r;
  for (Eigen::Index j = 0; j < cols; ++j) nonbasic[std::size_t(j)] = j;

  const Eigen::Index max_pivots = 50 * (rows + cols) + 1000;
  for (Eigen::Index iteration = 0;; ++iteration) {
    if (iteration > max_pivots) throw NumericalError("simplex pivot limit exceeded");

    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols; ++j)
      if (reduced(j) > kReducedCostEpsilon && (enter < 0 || nonbasic[std::size_t(j)] < nonbasic[std::size_t(enter)]))
        enter = j;
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double coeff = tableau(r, enter);
      if (coeff <= kPivotEpsilon) continue;
      const double ratio = std::max(rhs(r), 0.0) / coeff;
      if (ratio < best_ratio ||
          (ratio == best_ratio && basic[std::size_t(r)] < basic[std::size_t(leave)])) {
        best_ratio = ratio;
        leave = r;
      }
    }
    if (leave < 0) {
      // A column with no positive entry but a marginal reduced cost is
      // round-off in a bounded program, not a true ray.
      if (reduced(enter) < 1e-8) break;
      return {false, std::numeric_limits<double>::infinity(), {}};
    }

    const double pivot = tableau(leave, enter);
    // Pivot row.
    rhs(leave) /= pivot;
    for (Eigen::Index k = 0; k < cols; ++k)
      tableau(leave, k) = (k == enter) ? 1.0 / pivot : tableau(leave, k) / pivot;
    // Other rows.
    for (Eigen::Index s = 0; s < rows; ++s) {
      if (s == leave) continue;
      const double factor = tableau(s, enter);
      if (factor == 0.0) continue;
      rhs(s) -= factor * rhs(leave);
      for (Eigen::Index k = 0; k < cols; ++k)
        tableau(s, k) = (k == enter) ? -factor * tableau(leave, k)
                                     : tableau(s, k) - factor * tableau(leave, k);
    }
    // Objective row.
    const double d = reduced(enter);
    value += d * rhs(leave);
    for (Eigen::Index k = 0; k < cols; ++k)
      reduced(k) = (k == enter) ? -d * tableau(leave, k) : reduced(k) - d * tableau(leave, k);

    std::swap(basic[std::size_t(leave)], nonbasic[std::size_t(enter)]);
  }

  LpResult result;
  result.objective = value;
  result.solution = Vector::Zero(cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    if (basic[std::size_t(r)] < cols) result.solution(basic[std::size_t(r)]) = std::max(rhs(r), 0.0);
  return result;
}

namespace {

using Row = std::pair<std::size_t, std::size_t>;  // (block, index into its others)

// max delta  s.t.  <x, candidate_b - other> + delta <= 0 for the selected
// rows, sum x <= 1. Scaling x toward 0 only reaches delta = 0, so the
// optimum is max(0, best margin over the simplex).
LpResult witness_program(std::span<const WitnessBlock> blocks, const std::vector<Row>& rows,
                         Eigen::Index n) {
  const auto m = static_cast<Eigen::Index>(rows.size());
  Matrix constraints(m + 1, n + 1);
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto [b, i] = rows[std::size_t(r)];
    constraints.row(r).head(n) = (*blocks[b].candidate - *blocks[b].others[i]).transpose();
    constraints(r, n) = 1.0;
  }
  constraints.row(m).head(n).setOnes();
  constraints(m, n) = 0.0;
  Vector objective = Vector::Zero(n + 1);
  objective(n) = 1.0;
  LpResult lp = maximize(constraints, Vector::Unit(m + 1, m), objective);
  if (!lp.bounded) throw NumericalError("witness program is unbounded");
  return lp;
}

// Most violated row of one block at `point`, with its margin.
std::pair<std::size_t, double> tightest(const WitnessBlock& block, const Vector& point) {
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < block.others.size(); ++r) {
    const double v = point.dot(*block.others[r]);
    if (v < best_value) {
      best_value = v;
      best = r;
    }
  }
  return {best, best_value - point.dot(*block.candidate)};
}

}  // namespace

Witness find_witness(std::span<const WitnessBlock> blocks, double tolerance) {
  if (blocks.empty()) throw UsageError("witness search needs at least one block");
  const Eigen::Index n = blocks.front().candidate->size();
  // Row generation: the program over a subset of rows bounds the full optimum
  // from above, and any point is a lower bound. Only a handful of rows are
  // active at the optimum, so the working set stays small.
  std::vector<Row> rows;
  std::vector<std::vector<bool>> in_rows;
  for (const auto& block : blocks) in_rows.emplace_back(block.others.size(), false);
  const auto add_row = [&](std::size_t b, std::size_t r) {
    if (in_rows[b][r]) return false;
    in_rows[b][r] = true;
    rows.emplace_back(b, r);
    if (blocks[b].rows) blocks[b].rows->push_back(r);
    return true;
  };
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const WitnessBlock& block = blocks[b];
    if (block.others.empty()) continue;
    if (block.rows && !block.rows->empty()) {
      for (std::size_t r : *block.rows) {
        in_rows[b][r] = true;
        rows.emplace_back(b, r);
      }
      continue;
    }
    for (Eigen::Index i = 0; i <= n; ++i) {
      const Vector seed = i < n ? Vector(Vector::Unit(n, i)) : Vector(Vector::Constant(n, 1.0 / double(n)));
      add_row(b, tightest(block, seed).first);
    }
  }
  if (rows.empty()) return {true, std::numeric_limits<double>::infinity(), Vector::Constant(n, 1.0 / double(n))};

  for (;;) {
    const LpResult lp = witness_program(blocks, rows, n);
    if (lp.objective <= tolerance) return {false, lp.objective, {}};
    const Vector x = lp.solution.head(n);
    const double total = x.sum();
    if (!(total > 0.0)) return {false, lp.objective, {}};
    const Belief point = x / total;
    double margin = std::numeric_limits<double>::infinity();
    Row worst{0, 0};
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].others.empty()) continue;
      const auto [r, m] = tightest(blocks[b], point);
      if (m < margin) {
        margin = m;
        worst = {b, r};
      }
    }
    if (margin > tolerance) return {true, margin, point};
    // Round-off can leave the program claiming a margin its own rows deny.
    if (!add_row(worst.first, worst.second)) return {false, margin, {}};
  }
}

Witness find_witness(const Vector& candidate, std::span<const Vector* const> others,
                     double tolerance) {
  const WitnessBlock block{&candidate, others};
  return find_witness(std::span<const WitnessBlock>(&block, 1), tolerance);
}

}  // namespace asmooth::detail
