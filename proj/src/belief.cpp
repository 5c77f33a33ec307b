#include "asmooth/belief.hpp"

#include "asmooth/error.hpp"

namespace asmooth {

namespace {

Belief normalise(const Vector& unnormalised, std::size_t observation, int stage) {
  const double total = unnormalised.sum();
  if (!(total > 0.0)) throw ImpossibleEvidence(observation, stage);
  Belief out = unnormalised / total;
  // Renormalise once more to absorb drift from the division.
  return out / out.sum();
}

}  // namespace

JointPredictedBelief predict_joint(const ControlledHmm& model, const Belief& belief,
                                   std::size_t control) {
  check_control(model, control);
  if (belief.size() != static_cast<Eigen::Index>(model.n_states))
    throw UsageError("belief length does not match the number of states");
  return {model.transition[control] * belief.asDiagonal()};
}

Belief marginalize_next(const JointPredictedBelief& joint) {
  return joint.values.rowwise().sum();
}

Belief update(const ControlledHmm& model, const JointPredictedBelief& joint, std::size_t control,
              std::size_t observation, int stage) {
  check_control(model, control);
  check_observation(model, observation);
  const Vector likelihood = model.observation[control].col(static_cast<Eigen::Index>(observation));
  return normalise(likelihood.cwiseProduct(marginalize_next(joint)), observation, stage);
}

Belief initial_update(const ControlledHmm& model, std::size_t observation) {
  check_observation(model, observation);
  const Vector likelihood = model.initial_observation.col(static_cast<Eigen::Index>(observation));
  return normalise(likelihood.cwiseProduct(model.prior), observation, 0);
}

Belief step(const ControlledHmm& model, const Belief& belief, std::size_t control,
            std::size_t observation, int stage) {
  return update(model, predict_joint(model, belief, control), control, observation, stage);
}

Vector observation_marginal(const ControlledHmm& model, const Belief& belief, std::size_t control) {
  check_control(model, control);
  const Vector predicted = model.transition[control] * belief;
  return model.observation[control].transpose() * predicted;
}

}  // namespace asmooth
