#include "asmooth/asmooth.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <variant>

#include "asmooth/error.hpp"
#include "asmooth/io.hpp"
#include "asmooth/model.hpp"
#include "asmooth/sim.hpp"
#include "asmooth/solver.hpp"

using namespace asmooth;

struct asm_model {
  Problem problem;
};

struct asm_policy {
  struct Callback {
    asm_decision_fn fn;
    void* user;
  };
  std::variant<std::shared_ptr<const ValuePolicy>, std::size_t, Callback> kind;

  const ValuePolicy* value_policy() const {
    const auto* p = std::get_if<std::shared_ptr<const ValuePolicy>>(&kind);
    return p ? p->get() : nullptr;
  }

  DecisionRule rule() const {
    if (const auto* p = std::get_if<std::shared_ptr<const ValuePolicy>>(&kind)) {
      auto shared = *p;
      return [shared](const Belief& b, int k) { return best_action(*shared, b, k); };
    }
    if (const auto* u = std::get_if<std::size_t>(&kind)) return fixed_action(*u);
    const Callback cb = std::get<Callback>(kind);
    return [cb](const Belief& b, int k) { return cb.fn(b.data(), std::size_t(b.size()), k, cb.user); };
  }
};

namespace {

thread_local std::string g_last_error;

asm_status fail(asm_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
asm_status guarded(F&& body) {
  try {
    body();
    return ASM_OK;
  } catch (const ImpossibleEvidence& e) {
    return fail(ASM_ERR_IMPOSSIBLE_EVIDENCE, e.what());
  } catch (const BoundaryError& e) {
    return fail(ASM_ERR_BOUNDARY, e.what());
  } catch (const ConfigurationError& e) {
    return fail(ASM_ERR_CONFIGURATION, e.what());
  } catch (const SizeGuardError& e) {
    return fail(ASM_ERR_SIZE_GUARD, e.what());
  } catch (const NumericalError& e) {
    return fail(ASM_ERR_NUMERICAL, e.what());
  } catch (const IoError& e) {
    return fail(ASM_ERR_IO, e.what());
  } catch (const ParseError& e) {
    return fail(ASM_ERR_PARSE, e.what());
  } catch (const UsageError& e) {
    return fail(ASM_ERR_USAGE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ASM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ASM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ASM_ERR_INTERNAL, "unknown error");
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw UsageError(message);
}

char* duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

EntropyConfig entropy(asm_log_base base) {
  require(base == ASM_LOG_E || base == ASM_LOG_2, "unknown log base");
  return {base == ASM_LOG_2 ? LogBase::kTwo : LogBase::kNatural};
}

const ValuePolicy& value_policy(const asm_policy* policy) {
  require(policy != nullptr, "policy is null");
  const ValuePolicy* p = policy->value_policy();
  if (!p) throw UsageError("operation needs an alpha-vector policy");
  return *p;
}

Belief belief_from(const double* values, std::size_t n) {
  require(values != nullptr && n > 0, "belief is empty");
  Belief b(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) b(static_cast<Eigen::Index>(i)) = values[i];
  return b;
}

asm_estimate to_c(const Estimate& e) { return {e.mean, e.standard_error}; }

asm_metrics to_c(const MetricsSummary& s) {
  asm_metrics m{};
  m.runs = s.runs;
  m.exact = s.exact ? 1 : 0;
  m.terminal_cost = to_c(s.terminal_cost);
  m.stage_cost = to_c(s.stage_cost);
  m.total_belief_entropy = to_c(s.total_belief_entropy);
  m.smoother_entropy = to_c(s.smoother_entropy);
  m.total_cost = to_c(s.total_cost);
  return m;
}

nlohmann::json vector_json(const Vector& v) {
  return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace

extern "C" {

const char* asm_version(void) { return "0.1.0"; }

const char* asm_last_error(void) { return g_last_error.c_str(); }

const char* asm_status_name(asm_status status) {
  switch (status) {
    case ASM_OK: return "ok";
    case ASM_ERR_USAGE: return "usage error";
    case ASM_ERR_IMPOSSIBLE_EVIDENCE: return "impossible evidence";
    case ASM_ERR_BOUNDARY: return "boundary error";
    case ASM_ERR_CONFIGURATION: return "configuration error";
    case ASM_ERR_SIZE_GUARD: return "size guard";
    case ASM_ERR_NUMERICAL: return "numerical error";
    case ASM_ERR_IO: return "i/o error";
    case ASM_ERR_PARSE: return "parse error";
    case ASM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void asm_string_free(char* text) { std::free(text); }

asm_status asm_model_load(const char* path, asm_model** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new asm_model{load_problem(path)};
  });
}

asm_status asm_model_from_json(const char* json, asm_model** out) {
  return guarded([&] {
    require(json && out, "null argument");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(e.what());
    }
    *out = new asm_model{problem_from_json(doc)};
  });
}

asm_status asm_model_grid_agent(asm_grid_variant variant, asm_model** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    require(variant == ASM_GRID_AT_GOAL || variant == ASM_GRID_MISS_GOAL, "unknown grid variant");
    *out = new asm_model{build_grid_agent(variant == ASM_GRID_MISS_GOAL ? grid::GoalCost::kMissGoal
                                                                        : grid::GoalCost::kAtGoal)};
  });
}

void asm_model_free(asm_model* model) { delete model; }

asm_status asm_model_save(const asm_model* model, const char* path) {
  return guarded([&] {
    require(model && path, "null argument");
    save_problem(path, model->problem);
  });
}

asm_status asm_model_to_json(const asm_model* model, char** out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = duplicate(problem_to_json(model->problem).dump(2));
  });
}

asm_status asm_model_validate(const asm_model* model, char** report) {
  std::string text;
  const asm_status status = guarded([&] {
    require(model != nullptr, "null argument");
    auto violations = validate_model(model->problem.model);
    for (const auto& v : validate_costs(model->problem.model, model->problem.costs))
      violations.push_back(v);
    for (const auto& v : violations) text += describe(v) + "\n";
    if (!violations.empty())
      throw ConfigurationError(std::to_string(violations.size()) + " violation(s): " +
                               describe(violations.front()));
  });
  if (report) *report = (status == ASM_OK || text.empty()) ? nullptr : duplicate(text);
  return status;
}

asm_status asm_model_fingerprint(const asm_model* model, char** out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = duplicate(model_fingerprint(model->problem));
  });
}

asm_status asm_model_dimensions(const asm_model* model, size_t* n_states, size_t* n_controls,
                                size_t* n_observations, int* horizon) {
  return guarded([&] {
    require(model != nullptr, "null argument");
    const auto& m = model->problem.model;
    if (n_states) *n_states = m.n_states;
    if (n_controls) *n_controls = m.n_controls;
    if (n_observations) *n_observations = m.n_observations;
    if (horizon) *horizon = model->problem.costs.horizon;
  });
}

asm_status asm_model_set_horizon(asm_model* model, int horizon) {
  return guarded([&] {
    require(model != nullptr, "null argument");
    require(horizon >= 0, "horizon must be nonnegative");
    auto& costs = model->problem.costs;
    if (costs.stage_cost.size() > 1 && costs.stage_cost.size() != std::size_t(horizon))
      throw ConfigurationError("stage costs are given per stage for horizon " +
                               std::to_string(costs.stage_cost.size()) + "; cannot change it");
    costs.horizon = horizon;
  });
}

void asm_solve_options_init(asm_solve_options* options) {
  if (!options) return;
  const SolveOptions defaults;
  options->objective = ASM_OBJECTIVE_SMOOTHER;
  options->density = defaults.density;
  options->epsilon = defaults.epsilon;
  options->prune = ASM_PRUNE_LP;
  options->prune_tolerance = defaults.prune_tolerance;
  options->log_base = ASM_LOG_E;
}

asm_status asm_solve(const asm_model* model, const asm_solve_options* options, asm_policy** out) {
  return guarded([&] {
    require(model && options && out, "null argument");
    SolveOptions o;
    switch (options->objective) {
      case ASM_OBJECTIVE_SMOOTHER: o.objective = Objective::kSmoother; break;
      case ASM_OBJECTIVE_BELIEF_SUM: o.objective = Objective::kBeliefSum; break;
      case ASM_OBJECTIVE_COSTS_ONLY: o.objective = Objective::kCostsOnly; break;
      default: throw UsageError("unknown objective");
    }
    switch (options->prune) {
      case ASM_PRUNE_NONE: o.prune = PruneMode::kNone; break;
      case ASM_PRUNE_PAIRWISE: o.prune = PruneMode::kPairwise; break;
      case ASM_PRUNE_LP: o.prune = PruneMode::kLp; break;
      default: throw UsageError("unknown prune mode");
    }
    require(options->prune_tolerance >= 0.0, "prune tolerance must be nonnegative");
    o.density = options->density;
    o.epsilon = options->epsilon;
    o.prune_tolerance = options->prune_tolerance;
    o.entropy = entropy(options->log_base);
    auto policy = std::make_shared<const ValuePolicy>(
        solve(model->problem.model, model->problem.costs, o));
    *out = new asm_policy{policy};
  });
}

asm_status asm_policy_load(const char* path, asm_policy** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new asm_policy{std::make_shared<const ValuePolicy>(load_policy(path))};
  });
}

asm_status asm_policy_fixed_action(size_t control, asm_policy** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new asm_policy{control};
  });
}

asm_status asm_policy_callback(asm_decision_fn fn, void* user, asm_policy** out) {
  return guarded([&] {
    require(fn && out, "null argument");
    *out = new asm_policy{asm_policy::Callback{fn, user}};
  });
}

void asm_policy_free(asm_policy* policy) { delete policy; }

asm_status asm_policy_save(const asm_policy* policy, const char* path) {
  return guarded([&] {
    require(path != nullptr, "null argument");
    save_policy(path, value_policy(policy));
  });
}

asm_status asm_policy_to_json(const asm_policy* policy, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = duplicate(policy_to_json(value_policy(policy)).dump(1));
  });
}

asm_status asm_policy_fingerprint(const asm_policy* policy, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = duplicate(value_policy(policy).model_fingerprint);
  });
}

asm_status asm_policy_horizon(const asm_policy* policy, int* horizon) {
  return guarded([&] {
    require(horizon != nullptr, "null argument");
    *horizon = value_policy(policy).horizon();
  });
}

asm_status asm_policy_stage_size(const asm_policy* policy, int stage, size_t* size) {
  return guarded([&] {
    require(size != nullptr, "null argument");
    const ValuePolicy& p = value_policy(policy);
    require(stage >= 0 && stage <= p.horizon(), "stage out of range");
    *size = p.stages[std::size_t(stage)].size();
  });
}

asm_status asm_policy_value(const asm_policy* policy, const double* belief, size_t n, int stage,
                            double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const ValuePolicy& p = value_policy(policy);
    const Belief b = belief_from(belief, n);
    require(p.stages.front().front().values.size() == b.size(), "belief has the wrong length");
    *out = value(p, b, stage);
  });
}

asm_status asm_policy_action(const asm_policy* policy, const double* belief, size_t n, int stage,
                             size_t* control) {
  return guarded([&] {
    require(policy && control, "null argument");
    const Belief b = belief_from(belief, n);
    if (const ValuePolicy* p = policy->value_policy())
      require(p->stages.front().front().values.size() == b.size(), "belief has the wrong length");
    *control = policy->rule()(b, stage);
  });
}

asm_status asm_monte_carlo(const asm_model* model, const asm_policy* policy, size_t runs,
                           uint64_t seed, asm_log_base log_base, asm_metrics* out) {
  return guarded([&] {
    require(model && policy && out, "null argument");
    *out = to_c(monte_carlo(model->problem.model, model->problem.costs, policy->rule(), runs, seed,
                            entropy(log_base)));
  });
}

asm_status asm_compare(const asm_model* model, const asm_policy* const* policies, size_t count,
                       size_t runs, uint64_t seed, asm_log_base log_base, asm_metrics* out) {
  return guarded([&] {
    require(model && policies && out, "null argument");
    std::vector<NamedPolicy> named;
    for (size_t i = 0; i < count; ++i) {
      require(policies[i] != nullptr, "policy is null");
      named.push_back({std::to_string(i), policies[i]->rule()});
    }
    const auto summaries = compare_policies(model->problem.model, model->problem.costs, named,
                                            runs, seed, entropy(log_base));
    for (size_t i = 0; i < count; ++i) out[i] = to_c(summaries[i]);
  });
}

asm_status asm_exact_metrics(const asm_model* model, const asm_policy* policy,
                             asm_log_base log_base, asm_metrics* out) {
  return guarded([&] {
    require(model && policy && out, "null argument");
    *out = to_c(exact_policy_metrics(model->problem.model, model->problem.costs, policy->rule(),
                                     entropy(log_base)));
  });
}

asm_status asm_rollout_json(const asm_model* model, const asm_policy* policy, uint64_t seed,
                            asm_log_base log_base, long initial_state, char** out) {
  return guarded([&] {
    require(model && policy && out, "null argument");
    std::optional<std::size_t> x0;
    if (initial_state >= 0) x0 = static_cast<std::size_t>(initial_state);
    const RolloutRecord r = rollout(model->problem.model, model->problem.costs, policy->rule(),
                                    seed, entropy(log_base), x0);
    nlohmann::json doc;
    doc["seed"] = r.seed;
    doc["states"] = r.states;
    doc["observations"] = r.observations;
    doc["controls"] = r.controls;
    doc["beliefs"] = nlohmann::json::array();
    for (const auto& b : r.beliefs) doc["beliefs"].push_back(vector_json(b));
    doc["belief_entropies"] = r.belief_entropies;
    doc["stage_costs"] = r.stage_costs;
    doc["terminal_cost"] = r.terminal_cost;
    doc["smoother_entropy"] = r.smoother_entropy;
    doc["total_belief_entropy"] = r.total_belief_entropy();
    doc["total_cost"] = r.total_cost();
    *out = duplicate(doc.dump());
  });
}

uint64_t asm_derive_run_seed(uint64_t base_seed, uint64_t run) {
  return derive_run_seed(base_seed, run);
}

const char* asm_rng_description(void) { return kRngDescription; }

}  // extern "C"
