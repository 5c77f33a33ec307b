#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "asmooth/costs.hpp"
#include "asmooth/model.hpp"
#include "asmooth/pwl.hpp"

namespace asmooth {

enum class Objective {
  kSmoother,   // smoother entropy plus costs
  kBeliefSum,  // sum of filter-belief entropies plus costs
  kCostsOnly,  // standard POMDP costs, no entropy term
};

enum class PruneMode { kNone, kPairwise, kLp };

inline constexpr double kDefaultPruneTolerance = 1e-9;

struct SolveOptions {
  Objective objective = Objective::kSmoother;
  int density = 5;
  double epsilon = kDefaultInteriorEpsilon;
  PruneMode prune = PruneMode::kLp;
  double prune_tolerance = kDefaultPruneTolerance;
  EntropyConfig entropy;
};

// Alpha-vector representation of the value functions J_0..J_T of the belief
// MDP. stages[k] is Gamma_k; every vector in stages[k] for k < T carries the
// control that is optimal where it attains the minimum.
struct ValuePolicy {
  std::vector<AlphaSet> stages;
  Objective objective = Objective::kSmoother;
  int density = 0;
  double epsilon = kDefaultInteriorEpsilon;
  LogBase log_base = LogBase::kNatural;
  PruneMode prune = PruneMode::kLp;
  std::string model_fingerprint;

  int horizon() const { return static_cast<int>(stages.size()) - 1; }
};

// Backward alpha-vector value iteration with incremental pruning.
ValuePolicy solve(const ControlledHmm& model, const CostModel& costs, const SolveOptions& options);

// Control tag of the minimising vector in Gamma_k; ties go to the lowest control.
std::size_t best_action(const ValuePolicy& policy, const Belief& belief, int stage);

// min over Gamma_k of <belief, alpha>.
double value(const ValuePolicy& policy, const Belief& belief, int stage);

// Removes vectors that never attain the minimum (lp), vectors dominated
// componentwise by another one (pairwise), or nothing (none). Output keeps
// input order.
AlphaSet prune(AlphaSet vectors, PruneMode mode, double tolerance = kDefaultPruneTolerance);

// prune({a + b : a in left, b in right}); sums keep the action of a. In lp
// mode both inputs must already be pruned: a + b survives exactly when some
// belief has a best in `left` and b best in `right`, which is tested pair by
// pair without forming the full cross-sum.
AlphaSet pruned_cross_sum(const AlphaSet& left, const AlphaSet& right, PruneMode mode,
                          double tolerance = kDefaultPruneTolerance);

std::string to_string(Objective objective);
std::string to_string(PruneMode mode);
Objective parse_objective(const std::string& text);
PruneMode parse_prune_mode(const std::string& text);

}  // namespace asmooth
