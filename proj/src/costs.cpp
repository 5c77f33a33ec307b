#include "asmooth/costs.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "asmooth/belief.hpp"
#include "asmooth/error.hpp"

namespace asmooth {

double EntropyConfig::log(double x) const {
  return log_base == LogBase::kTwo ? std::log2(x) : std::log(x);
}

double EntropyConfig::unit() const {
  return log_base == LogBase::kTwo ? 1.0 / std::numbers::ln2 : 1.0;
}

namespace {

// x log x with the 0 log 0 = 0 convention, in nats.
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void require_interior(const Belief& belief) {
  for (Eigen::Index i = 0; i < belief.size(); ++i)
    if (!(belief(i) > 0.0))
      throw BoundaryError("gradient undefined on the simplex boundary (entry " + std::to_string(i) +
                          " is " + std::to_string(belief(i)) +
                          "); project base points to the interior first");
}

}  // namespace

double belief_entropy(const Belief& belief, const EntropyConfig& config) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < belief.size(); ++i) h -= xlogx(belief(i));
  return std::max(h, 0.0) * config.unit();
}

Vector belief_entropy_gradient(const Belief& belief, const EntropyConfig& config) {
  require_interior(belief);
  return (-(belief.array().log() + 1.0) * config.unit()).matrix();
}

double stage_entropy_cost(const ControlledHmm& model, const Belief& belief, std::size_t control,
                          const EntropyConfig& config) {
  const Matrix joint = predict_joint(model, belief, control).values;
  // H(X_k | X_{k+1}) = H(X_{k+1}, X_k) - H(X_{k+1}), term by term.
  double h = 0.0;
  for (Eigen::Index i = 0; i < joint.rows(); ++i) {
    const double row = joint.row(i).sum();
    if (!(row > 0.0)) continue;
    for (Eigen::Index j = 0; j < joint.cols(); ++j) {
      const double p = joint(i, j);
      if (p > 0.0) h -= p * std::log(p / row);
    }
  }
  return std::max(h, 0.0) * config.unit();
}

Vector stage_entropy_gradient(const ControlledHmm& model, const Belief& belief,
                              std::size_t control, const EntropyConfig& config) {
  check_control(model, control);
  require_interior(belief);
  const Matrix& a = model.transition[control];
  const Vector predicted = a * belief;
  Vector grad = Vector::Zero(belief.size());
  for (Eigen::Index m = 0; m < belief.size(); ++m) {
    double g = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double aim = a(i, m);
      if (aim > 0.0) g -= aim * std::log(aim * belief(m) / predicted(i));
    }
    grad(m) = g * config.unit();
  }
  return grad;
}

double expected_stage_cost(const ControlledHmm& model, const CostModel& costs, const Belief& belief,
                           std::size_t control, int stage, const EntropyConfig& config) {
  return stage_entropy_cost(model, belief, control, config) +
         belief.dot(costs.stage_vector(stage, control));
}

double expected_terminal_cost(const CostModel& costs, const Belief& belief,
                              const EntropyConfig& config) {
  return belief_entropy(belief, config) + belief.dot(costs.terminal_cost);
}

StageDecomposition stage_decomposition(const ControlledHmm& model, const Belief& belief,
                                       std::size_t control, const EntropyConfig& config) {
  const Matrix joint = predict_joint(model, belief, control).values;
  const Vector next = joint.rowwise().sum();
  const Vector current = joint.colwise().sum().transpose();
  double mi = 0.0;
  for (Eigen::Index i = 0; i < joint.rows(); ++i)
    for (Eigen::Index j = 0; j < joint.cols(); ++j) {
      const double p = joint(i, j);
      if (p > 0.0) mi += p * std::log(p / (next(i) * current(j)));
    }
  return {belief_entropy(belief, config), mi * config.unit()};
}

double pointwise_smoother_entropy(const ControlledHmm& model,
                                  std::span<const std::size_t> observations,
                                  std::span<const std::size_t> controls,
                                  const EntropyConfig& config) {
  if (observations.empty()) throw UsageError("smoother entropy needs at least y_0");
  if (controls.size() + 1 != observations.size())
    throw UsageError("expected one control fewer than observations");
  const std::size_t horizon = controls.size();

  // Forward filter, keeping the joint predicted beliefs.
  std::vector<Matrix> joints;
  joints.reserve(horizon);
  Belief belief = initial_update(model, observations[0]);
  for (std::size_t k = 0; k < horizon; ++k) {
    JointPredictedBelief joint = predict_joint(model, belief, controls[k]);
    belief = update(model, joint, controls[k], observations[k + 1], static_cast<int>(k + 1));
    joints.push_back(std::move(joint.values));
  }

  // Backward pass: gamma is the smoothed marginal of X_{k+1}; row i of the
  // normalised joint is the backward kernel p(x_k | x_{k+1} = i, y^k, u^k).
  double h = belief_entropy(belief);
  Vector gamma = belief;
  for (std::size_t k = horizon; k-- > 0;) {
    const Matrix& joint = joints[k];
    Vector previous = Vector::Zero(joint.cols());
    for (Eigen::Index i = 0; i < joint.rows(); ++i) {
      const double row = joint.row(i).sum();
      if (!(row > 0.0) || gamma(i) == 0.0) continue;
      double kernel_entropy = 0.0;
      for (Eigen::Index j = 0; j < joint.cols(); ++j) {
        const double p = joint(i, j) / row;
        kernel_entropy -= xlogx(p);
        previous(j) += gamma(i) * p;
      }
      h += gamma(i) * kernel_entropy;
    }
    gamma = previous;
  }
  return std::max(h, 0.0) * config.unit();
}

}  // namespace asmooth
