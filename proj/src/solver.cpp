#include "asmooth/solver.hpp"

#include <cmath>
#include <limits>

#include "asmooth/error.hpp"
#include "asmooth/io.hpp"

namespace asmooth {

namespace {

// alpha'(i) -> sum_i B(u)(i, y) A(u)(i, j) alpha'(i): the contribution of
// observation y to the expected next-stage value, as a linear function of
// the current belief.
AlphaSet project(const ControlledHmm& model, const AlphaSet& next, std::size_t control,
                 std::size_t observation) {
  const Matrix& a = model.transition[control];
  const Vector likelihood = model.observation[control].col(static_cast<Eigen::Index>(observation));
  AlphaSet out;
  out.reserve(next.size());
  for (const auto& alpha : next)
    out.push_back({a.transpose() * likelihood.cwiseProduct(alpha.values), control});
  return out;
}

AlphaSet stage_pieces(const ControlledHmm& model, const CostModel& costs,
                      const BasePointSet& base, const SolveOptions& options, std::size_t control,
                      int stage) {
  switch (options.objective) {
    case Objective::kSmoother:
      return tangent_cost_set(model, costs, base, control, stage, options.entropy);
    case Objective::kBeliefSum:
    case Objective::kCostsOnly:
      return {{costs.stage_vector(stage, control), control}};
  }
  return {};
}

// H(pi_k) does not depend on the control, so under the belief-sum objective
// its tangents are added once after the minimum over controls.
AlphaSet shared_pieces(const BasePointSet& base, const SolveOptions& options) {
  if (options.objective != Objective::kBeliefSum) return {};
  return tangent_planes(
      base.points, [&](const Belief& b) { return belief_entropy(b, options.entropy); },
      [&](const Belief& b) { return belief_entropy_gradient(b, options.entropy); },
      Vector::Zero(base.points.front().size()), std::nullopt);
}

AlphaSet terminal_pieces(const CostModel& costs, const BasePointSet& base,
                         const SolveOptions& options) {
  if (options.objective == Objective::kCostsOnly) return {{costs.terminal_cost, std::nullopt}};
  return terminal_cost_set(costs, base, options.entropy);
}

void require_valid(const ControlledHmm& model, const CostModel& costs) {
  auto violations = validate_model(model);
  const auto cost_violations = validate_costs(model, costs);
  violations.insert(violations.end(), cost_violations.begin(), cost_violations.end());
  if (!violations.empty())
    throw ConfigurationError("invalid model: " + describe(violations.front()) + " (" +
                             std::to_string(violations.size()) + " violation(s))");
}

void check_stage(const ValuePolicy& policy, int stage, bool allow_terminal) {
  const int last = allow_terminal ? policy.horizon() : policy.horizon() - 1;
  if (stage < 0 || stage > last)
    throw UsageError("stage " + std::to_string(stage) + " outside [0, " + std::to_string(last) + "]");
}

}  // namespace

ValuePolicy solve(const ControlledHmm& model, const CostModel& costs, const SolveOptions& options) {
  require_valid(model, costs);
  const int horizon = costs.horizon;
  const auto tol = options.prune_tolerance;
  const auto mode = options.prune;

  BasePointSet base;
  if (options.objective != Objective::kCostsOnly)
    base = generate_base_points(model.n_states, options.density, options.epsilon);

  ValuePolicy policy;
  policy.objective = options.objective;
  policy.density = options.density;
  policy.epsilon = options.epsilon;
  policy.log_base = options.entropy.log_base;
  policy.prune = options.prune;
  policy.model_fingerprint = model_fingerprint(Problem{model, costs});
  policy.stages.resize(static_cast<std::size_t>(horizon) + 1);
  policy.stages.back() = prune(terminal_pieces(costs, base, options), mode, tol);
  AlphaSet shared = shared_pieces(base, options);
  if (!shared.empty()) shared = prune(std::move(shared), mode, tol);

  for (int k = horizon - 1; k >= 0; --k) {
    const AlphaSet& next = policy.stages[static_cast<std::size_t>(k) + 1];
    AlphaSet merged;
    for (std::size_t u = 0; u < model.n_controls; ++u) {
      AlphaSet accumulated;
      for (std::size_t y = 0; y < model.n_observations; ++y) {
        AlphaSet projected = prune(project(model, next, u, y), mode, tol);
        accumulated = y == 0 ? std::move(projected)
                             : pruned_cross_sum(accumulated, projected, mode, tol);
      }
      AlphaSet pieces = prune(stage_pieces(model, costs, base, options, u, k), mode, tol);
      AlphaSet backed_up = pruned_cross_sum(accumulated, pieces, mode, tol);
      merged.insert(merged.end(), std::make_move_iterator(backed_up.begin()),
                    std::make_move_iterator(backed_up.end()));
    }
    AlphaSet stage_set = prune(std::move(merged), mode, tol);
    if (!shared.empty()) stage_set = pruned_cross_sum(stage_set, shared, mode, tol);
    policy.stages[static_cast<std::size_t>(k)] = std::move(stage_set);
  }
  return policy;
}

std::size_t best_action(const ValuePolicy& policy, const Belief& belief, int stage) {
  check_stage(policy, stage, false);
  const AlphaSet& set = policy.stages[static_cast<std::size_t>(stage)];
  double best = std::numeric_limits<double>::infinity();
  for (const auto& alpha : set) best = std::min(best, belief.dot(alpha.values));
  const double tie = 1e-12 * std::max(1.0, std::abs(best));
  std::size_t action = std::numeric_limits<std::size_t>::max();
  for (const auto& alpha : set)
    if (belief.dot(alpha.values) <= best + tie && alpha.action) action = std::min(action, *alpha.action);
  if (action == std::numeric_limits<std::size_t>::max())
    throw UsageError("stage " + std::to_string(stage) + " vectors carry no actions");
  return action;
}

double value(const ValuePolicy& policy, const Belief& belief, int stage) {
  check_stage(policy, stage, true);
  return evaluate_pwl(policy.stages[static_cast<std::size_t>(stage)], belief);
}

std::string to_string(Objective objective) {
  switch (objective) {
    case Objective::kSmoother: return "smoother";
    case Objective::kBeliefSum: return "belief-sum";
    case Objective::kCostsOnly: return "costs-only";
  }
  return "?";
}

std::string to_string(PruneMode mode) {
  switch (mode) {
    case PruneMode::kNone: return "none";
    case PruneMode::kPairwise: return "pairwise";
    case PruneMode::kLp: return "lp";
  }
  return "?";
}

Objective parse_objective(const std::string& text) {
  if (text == "smoother") return Objective::kSmoother;
  if (text == "belief-sum") return Objective::kBeliefSum;
  if (text == "costs-only") return Objective::kCostsOnly;
  throw UsageError("unknown objective '" + text + "'");
}

PruneMode parse_prune_mode(const std::string& text) {
  if (text == "none") return PruneMode::kNone;
  if (text == "pairwise") return PruneMode::kPairwise;
  if (text == "lp") return PruneMode::kLp;
  throw UsageError("unknown prune mode '" + text + "'");
}

}  // namespace asmooth
