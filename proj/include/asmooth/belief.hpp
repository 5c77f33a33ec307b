#pragma once

#include <cstddef>

#include "asmooth/model.hpp"

namespace asmooth {

// Joint distribution of (X_{k+1}, X_k) after prediction: entry (i, j) is
// p(X_{k+1} = i, X_k = j | y^k, u^k). Column sums recover the predecessor belief.
struct JointPredictedBelief {
  Matrix values;
};

JointPredictedBelief predict_joint(const ControlledHmm& model, const Belief& belief,
                                   std::size_t control);

// Row sums of the joint: the one-step predicted belief.
Belief marginalize_next(const JointPredictedBelief& joint);

// Measurement update. `stage` is the index of the incoming observation and
// only feeds the ImpossibleEvidence diagnostic.
Belief update(const ControlledHmm& model, const JointPredictedBelief& joint, std::size_t control,
              std::size_t observation, int stage = -1);

// Conditions the prior on Y_0 through the initial observation kernel.
Belief initial_update(const ControlledHmm& model, std::size_t observation);

// The filter map: predict then update.
Belief step(const ControlledHmm& model, const Belief& belief, std::size_t control,
            std::size_t observation, int stage = -1);

// p(Y_{k+1} = y | belief, control).
Vector observation_marginal(const ControlledHmm& model, const Belief& belief, std::size_t control);

}  // namespace asmooth
