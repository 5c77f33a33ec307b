#include "asmooth/pwl.hpp"

#include <limits>

#include "asmooth/error.hpp"

namespace asmooth {

namespace {

// Visits every composition of `total` into `parts` nonnegative integers in
// lexicographic order.
void compositions(std::size_t parts, int total, std::vector<int>& current,
                  const std::function<void(const std::vector<int>&)>& visit) {
  if (current.size() + 1 == parts) {
    current.push_back(total);
    visit(current);
    current.pop_back();
    return;
  }
  for (int c = 0; c <= total; ++c) {
    current.push_back(c);
    compositions(parts, total - c, current, visit);
    current.pop_back();
  }
}

}  // namespace

BasePointSet generate_base_points(std::size_t n_states, int density, double epsilon) {
  if (n_states == 0) throw ConfigurationError("base points need at least one state");
  if (density < 1) throw ConfigurationError("base-point density must be at least 1");
  const double n = static_cast<double>(n_states);
  if (!(epsilon > 0.0) || !(epsilon < 1.0 / (2.0 * n)))
    throw ConfigurationError("interior epsilon must lie in (0, 1/(2N))");

  BasePointSet set;
  set.density = density;
  set.epsilon = epsilon;
  const auto project = [&](const Vector& p) {
    Belief xi = (1.0 - n * epsilon) * p + Vector::Constant(p.size(), epsilon);
    return Belief(xi / xi.sum());
  };

  if (density == 1) {
    set.points.push_back(project(Vector::Constant(static_cast<Eigen::Index>(n_states), 1.0 / n)));
    return set;
  }
  // Lattice coordinates c/(d-1) summing to one are exactly the compositions
  // of d-1; distinct compositions give distinct points.
  const int steps = density - 1;
  std::vector<int> current;
  compositions(n_states, steps, current, [&](const std::vector<int>& c) {
    Vector p(static_cast<Eigen::Index>(n_states));
    for (std::size_t i = 0; i < c.size(); ++i) p(static_cast<Eigen::Index>(i)) = double(c[i]) / steps;
    set.points.push_back(project(p));
  });
  if (set.points.empty()) throw ConfigurationError("no lattice point lies on the simplex");
  return set;
}

AlphaSet tangent_planes(std::span<const Belief> points, const BeliefFunction& value,
                        const BeliefGradient& gradient, const Vector& linear_part,
                        std::optional<std::size_t> action) {
  AlphaSet out;
  out.reserve(points.size());
  for (const Belief& xi : points) {
    const Vector grad = gradient(xi);
    const double offset = value(xi) - xi.dot(grad);
    out.push_back({(grad.array() + offset).matrix() + linear_part, action});
  }
  return out;
}

AlphaSet tangent_cost_set(const ControlledHmm& model, const CostModel& costs,
                          const BasePointSet& base_points, std::size_t control, int stage,
                          const EntropyConfig& config) {
  check_control(model, control);
  return tangent_planes(
      base_points.points,
      [&](const Belief& b) { return stage_entropy_cost(model, b, control, config); },
      [&](const Belief& b) { return stage_entropy_gradient(model, b, control, config); },
      costs.stage_vector(stage, control), control);
}

AlphaSet terminal_cost_set(const CostModel& costs, const BasePointSet& base_points,
                           const EntropyConfig& config) {
  return tangent_planes(
      base_points.points, [&](const Belief& b) { return belief_entropy(b, config); },
      [&](const Belief& b) { return belief_entropy_gradient(b, config); }, costs.terminal_cost,
      std::nullopt);
}

double evaluate_pwl(const AlphaSet& set, const Belief& belief) {
  if (set.empty()) throw UsageError("cannot evaluate an empty alpha set");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& alpha : set) best = std::min(best, belief.dot(alpha.values));
  return best;
}

}  // namespace asmooth
