#pragma once

#include <cstddef>
#include <span>

#include "asmooth/model.hpp"

namespace asmooth {

enum class LogBase { kNatural, kTwo };

struct EntropyConfig {
  LogBase log_base = LogBase::kNatural;

  // Logarithm in the configured base.
  double log(double x) const;
  // Multiplier converting nats to the configured unit.
  double unit() const;
};

// -sum_i p_i log p_i with 0 log 0 = 0.
double belief_entropy(const Belief& belief, const EntropyConfig& config = {});

// Gradient of the entropy on the positive orthant: -(1 + log p_i).
// Throws BoundaryError if any entry is not strictly positive.
Vector belief_entropy_gradient(const Belief& belief, const EntropyConfig& config = {});

// H(X_k | X_{k+1}, y^k, u^k) as a function of the filter belief: the
// conditional entropy of the current state given the next one under the
// joint predicted belief.
double stage_entropy_cost(const ControlledHmm& model, const Belief& belief, std::size_t control,
                          const EntropyConfig& config = {});

// Component m: -sum_i A(i,m) log(A(i,m) pi(m) / sum_l A(i,l) pi(l)).
// The cost is 1-homogeneous on the orthant, so <pi, gradient> equals the cost.
// Throws BoundaryError for beliefs with a zero entry.
Vector stage_entropy_gradient(const ControlledHmm& model, const Belief& belief,
                              std::size_t control, const EntropyConfig& config = {});

// g_k(pi, u): stage entropy plus the expected instantaneous cost.
double expected_stage_cost(const ControlledHmm& model, const CostModel& costs, const Belief& belief,
                           std::size_t control, int stage, const EntropyConfig& config = {});

// g_T(pi): belief entropy plus the expected terminal cost.
double expected_terminal_cost(const CostModel& costs, const Belief& belief,
                              const EntropyConfig& config = {});

struct StageDecomposition {
  double marginal_entropy = 0.0;    // H(X_k | y^k, u^{k-1})
  double mutual_information = 0.0;  // I(X_k; X_{k+1} | y^k, u^k)
};

// Splits the stage entropy as marginal entropy minus the mutual information
// between consecutive states.
StageDecomposition stage_decomposition(const ControlledHmm& model, const Belief& belief,
                                       std::size_t control, const EntropyConfig& config = {});

// Entropy of p(x^T | y^T, u^{T-1}) for one realised record, via the filter
// and backward kernels. `observations` holds y_0..y_T and `controls`
// u_0..u_{T-1}.
double pointwise_smoother_entropy(const ControlledHmm& model,
                                  std::span<const std::size_t> observations,
                                  std::span<const std::size_t> controls,
                                  const EntropyConfig& config = {});

}  // namespace asmooth
