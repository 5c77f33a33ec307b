#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace asmooth {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A distribution over hidden states. Entries are nonnegative and sum to one.
using Belief = Vector;

inline constexpr double kStochasticTolerance = 1e-12;

// Controlled hidden Markov model with finite state, control and observation
// alphabets. All indices are 0-based.
struct ControlledHmm {
  std::size_t n_states = 0;
  std::size_t n_controls = 0;
  std::size_t n_observations = 0;

  Belief prior;
  // transition[u](i, j) = p(X_{k+1} = i | X_k = j, U_k = u); columns sum to 1.
  std::vector<Matrix> transition;
  // observation[u](i, y) = p(Y_k = y | X_k = i, U_{k-1} = u); rows sum to 1.
  std::vector<Matrix> observation;
  // initial_observation(i, y) = p(Y_0 = y | X_0 = i).
  Matrix initial_observation;
};

// Costs c_k(i, u) and c_T(i) over a horizon T.
struct CostModel {
  int horizon = 0;
  // Either a single N x |U| table used at every stage, or one table per stage.
  std::vector<Matrix> stage_cost;
  Vector terminal_cost;

  const Matrix& stage_table(int stage) const;
  double stage(int stage, std::size_t state, std::size_t control) const {
    return stage_table(stage)(static_cast<Eigen::Index>(state), static_cast<Eigen::Index>(control));
  }
  // Column u of the stage table: the exact linear part of the expected stage cost.
  Vector stage_vector(int stage, std::size_t control) const;
  bool stage_costs_vanish() const;
};

struct Problem {
  ControlledHmm model;
  CostModel costs;
};

struct Violation {
  std::string where;  // e.g. "transition[0] column 2"
  std::string what;
  double residual = 0.0;
};

std::vector<Violation> validate_model(const ControlledHmm& model);
std::vector<Violation> validate_costs(const ControlledHmm& model, const CostModel& costs);
std::string describe(const Violation& v);

bool on_simplex(const Vector& v, double tolerance);

// Throws UsageError when the index is out of range.
void check_control(const ControlledHmm& model, std::size_t control);
void check_observation(const ControlledHmm& model, std::size_t observation);

namespace grid {

inline constexpr std::size_t kWest = 0;
inline constexpr std::size_t kStay = 1;
inline constexpr std::size_t kEast = 2;

// Which cells carry the unit terminal cost in the four-cell corridor.
enum class GoalCost {
  kAtGoal,     // c_T = (0, 0, 0, 1)
  kMissGoal,   // c_T = (1, 1, 1, 0): the agent pays unless it ends in the east-most cell
};

}  // namespace grid

// Four-cell corridor: move west/stay/east with 0.8 success, binary
// west/east sensor with 0.8 accuracy, uniform prior, T = 3, no stage costs.
Problem build_grid_agent(grid::GoalCost goal_cost = grid::GoalCost::kAtGoal);

}  // namespace asmooth
