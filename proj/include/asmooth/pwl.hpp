#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "asmooth/costs.hpp"
#include "asmooth/model.hpp"

namespace asmooth {

inline constexpr double kDefaultInteriorEpsilon = 1e-4;

// A linear function of the belief, <pi, values>, optionally tagged with the
// control that generated it. Terminal-stage vectors carry no action.
struct AlphaVector {
  Vector values;
  std::optional<std::size_t> action;
};

using AlphaSet = std::vector<AlphaVector>;

// Tangent points on the simplex interior.
struct BasePointSet {
  std::vector<Belief> points;
  int density = 0;
  double epsilon = kDefaultInteriorEpsilon;
};

// Lattice {0, 1/(d-1), ..., 1}^N restricted to the simplex (d = 1 gives the
// barycentre), each point mixed with the uniform belief so every entry is at
// least epsilon. Points come out in lexicographic order of lattice indices.
BasePointSet generate_base_points(std::size_t n_states, int density,
                                  double epsilon = kDefaultInteriorEpsilon);

using BeliefFunction = std::function<double(const Belief&)>;
using BeliefGradient = std::function<Vector(const Belief&)>;

// One alpha vector per base point: f(xi) + grad f(xi) - <xi, grad f(xi)>,
// plus a linear part added exactly.
AlphaSet tangent_planes(std::span<const Belief> points, const BeliefFunction& value,
                        const BeliefGradient& gradient, const Vector& linear_part,
                        std::optional<std::size_t> action);

// Upper-bounding pieces of g_k(., control) at stage k.
AlphaSet tangent_cost_set(const ControlledHmm& model, const CostModel& costs,
                          const BasePointSet& base_points, std::size_t control, int stage,
                          const EntropyConfig& config = {});

// Upper-bounding pieces of g_T.
AlphaSet terminal_cost_set(const CostModel& costs, const BasePointSet& base_points,
                           const EntropyConfig& config = {});

// min over the set of <belief, alpha>. The set must be non-empty.
double evaluate_pwl(const AlphaSet& set, const Belief& belief);

}  // namespace asmooth
