#include "asmooth/model.hpp"

#include <cmath>
#include <sstream>

#include "asmooth/error.hpp"

namespace asmooth {

const Matrix& CostModel::stage_table(int stage) const {
  if (stage_cost.empty()) throw UsageError("cost model has no stage cost table");
  if (stage_cost.size() == 1) return stage_cost.front();
  if (stage < 0 || static_cast<std::size_t>(stage) >= stage_cost.size())
    throw UsageError("stage " + std::to_string(stage) + " outside the stage cost tables");
  return stage_cost[static_cast<std::size_t>(stage)];
}

Vector CostModel::stage_vector(int stage, std::size_t control) const {
  return stage_table(stage).col(static_cast<Eigen::Index>(control));
}

bool CostModel::stage_costs_vanish() const {
  for (const auto& table : stage_cost)
    if (table.cwiseAbs().maxCoeff() != 0.0) return false;
  return true;
}

bool on_simplex(const Vector& v, double tolerance) {
  if (v.size() == 0) return false;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!(v(i) >= 0.0) || !std::isfinite(v(i))) return false;
  return std::abs(v.sum() - 1.0) <= tolerance;
}

void check_control(const ControlledHmm& model, std::size_t control) {
  if (control >= model.n_controls)
    throw UsageError("control " + std::to_string(control) + " out of range [0, " +
                     std::to_string(model.n_controls) + ")");
}

void check_observation(const ControlledHmm& model, std::size_t observation) {
  if (observation >= model.n_observations)
    throw UsageError("observation " + std::to_string(observation) + " out of range [0, " +
                     std::to_string(model.n_observations) + ")");
}

namespace {

std::string shape(Eigen::Index rows, Eigen::Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

void check_entries(const Matrix& m, const std::string& name, std::vector<Violation>& out) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        out.push_back({name + " entry (" + std::to_string(i) + "," + std::to_string(j) + ")",
                       "probability outside [0,1]", std::isfinite(v) ? (v < 0 ? -v : v - 1.0) : v});
    }
}

void check_row_stochastic(const Matrix& m, const std::string& name, std::vector<Violation>& out) {
  check_entries(m, name, out);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double residual = m.row(i).sum() - 1.0;
    if (!(std::abs(residual) <= kStochasticTolerance))
      out.push_back({name + " row " + std::to_string(i), "row does not sum to 1", residual});
  }
}

}  // namespace

std::vector<Violation> validate_model(const ControlledHmm& model) {
  std::vector<Violation> out;
  const auto n = static_cast<Eigen::Index>(model.n_states);
  const auto ny = static_cast<Eigen::Index>(model.n_observations);
  if (model.n_states == 0) out.push_back({"n_states", "must be positive", 0.0});
  if (model.n_controls == 0) out.push_back({"n_controls", "must be positive", 0.0});
  if (model.n_observations == 0) out.push_back({"n_observations", "must be positive", 0.0});
  if (!out.empty()) return out;

  if (model.prior.size() != n) {
    out.push_back({"prior", "length " + std::to_string(model.prior.size()) + ", expected " +
                                std::to_string(n), 0.0});
  } else {
    for (Eigen::Index i = 0; i < n; ++i)
      if (!(model.prior(i) >= 0.0))
        out.push_back({"prior index " + std::to_string(i), "negative probability", model.prior(i)});
    const double residual = model.prior.sum() - 1.0;
    if (!(std::abs(residual) <= kStochasticTolerance))
      out.push_back({"prior", "does not sum to 1", residual});
  }

  if (model.transition.size() != model.n_controls)
    out.push_back({"transition", "expected one matrix per control", 0.0});
  for (std::size_t u = 0; u < model.transition.size(); ++u) {
    const Matrix& a = model.transition[u];
    const std::string name = "transition[" + std::to_string(u) + "]";
    if (a.rows() != n || a.cols() != n) {
      out.push_back({name, "shape " + shape(a.rows(), a.cols()) + ", expected " + shape(n, n), 0.0});
      continue;
    }
    check_entries(a, name, out);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double residual = a.col(j).sum() - 1.0;
      if (!(std::abs(residual) <= kStochasticTolerance))
        out.push_back({name + " column " + std::to_string(j), "column does not sum to 1", residual});
    }
  }

  if (model.observation.size() != model.n_controls)
    out.push_back({"observation", "expected one kernel per control", 0.0});
  for (std::size_t u = 0; u < model.observation.size(); ++u) {
    const Matrix& b = model.observation[u];
    const std::string name = "observation[" + std::to_string(u) + "]";
    if (b.rows() != n || b.cols() != ny) {
      out.push_back({name, "shape " + shape(b.rows(), b.cols()) + ", expected " + shape(n, ny), 0.0});
      continue;
    }
    check_row_stochastic(b, name, out);
  }

  const Matrix& b0 = model.initial_observation;
  if (b0.rows() != n || b0.cols() != ny)
    out.push_back({"initial_observation",
                   "shape " + shape(b0.rows(), b0.cols()) + ", expected " + shape(n, ny), 0.0});
  else
    check_row_stochastic(b0, "initial_observation", out);
  return out;
}

std::vector<Violation> validate_costs(const ControlledHmm& model, const CostModel& costs) {
  std::vector<Violation> out;
  const auto n = static_cast<Eigen::Index>(model.n_states);
  const auto nu = static_cast<Eigen::Index>(model.n_controls);
  if (costs.horizon < 0) out.push_back({"horizon", "must be nonnegative", static_cast<double>(costs.horizon)});
  if (costs.stage_cost.empty())
    out.push_back({"stage_cost", "missing", 0.0});
  else if (costs.stage_cost.size() != 1 &&
           costs.stage_cost.size() != static_cast<std::size_t>(std::max(costs.horizon, 0)))
    out.push_back({"stage_cost", "expected 1 or horizon tables, got " +
                                     std::to_string(costs.stage_cost.size()), 0.0});
  for (std::size_t k = 0; k < costs.stage_cost.size(); ++k) {
    const Matrix& c = costs.stage_cost[k];
    const std::string name = "stage_cost[" + std::to_string(k) + "]";
    if (c.rows() != n || c.cols() != nu) {
      out.push_back({name, "shape " + shape(c.rows(), c.cols()) + ", expected " + shape(n, nu), 0.0});
      continue;
    }
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index u = 0; u < nu; ++u)
        if (!std::isfinite(c(i, u)) || c(i, u) < 0.0)
          out.push_back({name + " entry (" + std::to_string(i) + "," + std::to_string(u) + ")",
                         "cost must be finite and nonnegative", c(i, u)});
  }
  if (costs.terminal_cost.size() != n) {
    out.push_back({"terminal_cost", "length " + std::to_string(costs.terminal_cost.size()) +
                                        ", expected " + std::to_string(n), 0.0});
  } else {
    for (Eigen::Index i = 0; i < n; ++i)
      if (!std::isfinite(costs.terminal_cost(i)) || costs.terminal_cost(i) < 0.0)
        out.push_back({"terminal_cost index " + std::to_string(i),
                       "cost must be finite and nonnegative", costs.terminal_cost(i)});
  }
  return out;
}

std::string describe(const Violation& v) {
  std::ostringstream os;
  os.precision(17);
  os << v.where << ": " << v.what;
  if (v.residual != 0.0) os << " (residual " << v.residual << ")";
  return os.str();
}

Problem build_grid_agent(grid::GoalCost goal_cost) {
  constexpr int n = 4;
  constexpr double move = 0.8;

  ControlledHmm model;
  model.n_states = n;
  model.n_controls = 3;
  model.n_observations = 2;
  model.prior = Vector::Constant(n, 1.0 / n);

  Matrix west = Matrix::Zero(n, n);
  Matrix east = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    if (j > 0) {
      west(j - 1, j) = move;
      west(j, j) = 1.0 - move;
    } else {
      west(j, j) = 1.0;
    }
    if (j < n - 1) {
      east(j + 1, j) = move;
      east(j, j) = 1.0 - move;
    } else {
      east(j, j) = 1.0;
    }
  }
  model.transition = {west, Matrix::Identity(n, n), east};

  Matrix sensor(n, 2);
  sensor << 0.8, 0.2,
            0.8, 0.2,
            0.2, 0.8,
            0.2, 0.8;
  model.observation = {sensor, sensor, sensor};
  model.initial_observation = sensor;

  CostModel costs;
  costs.horizon = 3;
  costs.stage_cost = {Matrix::Zero(n, 3)};
  costs.terminal_cost = Vector::Zero(n);
  if (goal_cost == grid::GoalCost::kAtGoal) {
    costs.terminal_cost(n - 1) = 1.0;
  } else {
    costs.terminal_cost.setOnes();
    costs.terminal_cost(n - 1) = 0.0;
  }
  return {std::move(model), std::move(costs)};
}

}  // namespace asmooth
