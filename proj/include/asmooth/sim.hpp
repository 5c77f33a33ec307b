#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asmooth/costs.hpp"
#include "asmooth/model.hpp"

namespace asmooth {

struct ValuePolicy;

// Maps (current filter belief, stage) to a control.
using DecisionRule = std::function<std::size_t(const Belief&, int)>;

DecisionRule fixed_action(std::size_t control);
// Greedy with respect to the policy's alpha vectors (copied into the rule).
DecisionRule greedy(const ValuePolicy& policy);

// Rollout randomness: std::mt19937_64 seeded per run with
// splitmix64(base_seed + golden * (run + 1)); uniforms are the top 53 bits
// of each draw. Draw slots are fixed (x_0, y_0, then x_{k+1}, y_{k+1} per
// stage) so policies compared on the same run index share every draw.
inline constexpr const char* kRngDescription = "mt19937_64/splitmix64-seeded, 53-bit uniforms";

std::uint64_t derive_run_seed(std::uint64_t base_seed, std::uint64_t run);

struct RolloutRecord {
  std::uint64_t seed = 0;
  std::vector<std::size_t> states;        // x_0..x_T
  std::vector<std::size_t> observations;  // y_0..y_T
  std::vector<std::size_t> controls;      // u_0..u_{T-1}
  std::vector<Belief> beliefs;            // filter beliefs after y_0..y_T
  double terminal_cost = 0.0;
  std::vector<double> stage_costs;        // c_k(x_k, u_k)
  double smoother_entropy = 0.0;
  std::vector<double> belief_entropies;   // H(pi_0)..H(pi_T)

  double total_belief_entropy() const;
  double accumulated_cost() const;  // terminal plus stage costs
  double total_cost() const { return smoother_entropy + accumulated_cost(); }
};

// `initial_state` pins x_0 instead of sampling it from the prior (the draw
// is still consumed so streams stay aligned).
RolloutRecord rollout(const ControlledHmm& model, const CostModel& costs, const DecisionRule& rule,
                      std::uint64_t seed, const EntropyConfig& config = {},
                      std::optional<std::size_t> initial_state = std::nullopt);

struct Estimate {
  double mean = 0.0;
  double standard_error = 0.0;  // NaN when undefined (a single run)
};

struct MetricsSummary {
  std::string name;
  std::size_t runs = 0;
  bool exact = false;
  Estimate terminal_cost;
  Estimate stage_cost;
  Estimate total_belief_entropy;
  Estimate smoother_entropy;
  Estimate total_cost;
};

MetricsSummary monte_carlo(const ControlledHmm& model, const CostModel& costs,
                           const DecisionRule& rule, std::size_t runs, std::uint64_t base_seed,
                           const EntropyConfig& config = {});

inline constexpr double kExactTermLimit = 1e7;

// Exact expectations by enumerating every observation sequence and, for the
// smoother entropy, every state sequence. Refuses with SizeGuardError when
// |Y|^(T+1) * N^(T+1) exceeds `term_limit`.
MetricsSummary exact_policy_metrics(const ControlledHmm& model, const CostModel& costs,
                                    const DecisionRule& rule, const EntropyConfig& config = {},
                                    double term_limit = kExactTermLimit);

struct NamedPolicy {
  std::string name;
  DecisionRule rule;
};

// One summary per policy; run r of every policy uses the same derived seed.
std::vector<MetricsSummary> compare_policies(const ControlledHmm& model, const CostModel& costs,
                                             std::span<const NamedPolicy> policies,
                                             std::size_t runs, std::uint64_t base_seed,
                                             const EntropyConfig& config = {});

// One branch of the observation tree under a deterministic policy.
struct ObservationPath {
  double probability = 0.0;
  std::vector<std::size_t> observations;
  std::vector<std::size_t> controls;
  std::vector<Belief> beliefs;
};

// Calls `visit` for every y^T with positive probability.
void for_each_observation_path(const ControlledHmm& model, int horizon, const DecisionRule& rule,
                               const std::function<void(const ObservationPath&)>& visit);

// Entropy of p(x^T | y^T, u^{T-1}) by explicit enumeration of all N^(T+1)
// state sequences; independent of the filter recursions.
double brute_force_smoother_entropy(const ControlledHmm& model,
                                    std::span<const std::size_t> observations,
                                    std::span<const std::size_t> controls,
                                    const EntropyConfig& config = {});

}  // namespace asmooth
