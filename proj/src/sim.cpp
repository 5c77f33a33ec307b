#include "asmooth/sim.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <random>

#include "asmooth/belief.hpp"
#include "asmooth/error.hpp"
#include "asmooth/solver.hpp"

namespace asmooth {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

// Inverse-CDF draw from a probability column.
std::size_t sample(const Vector& probabilities, double u) {
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
    if (probabilities(i) <= 0.0) continue;
    last_positive = static_cast<std::size_t>(i);
    cumulative += probabilities(i);
    if (u < cumulative) return last_positive;
  }
  return last_positive;
}

Estimate estimate(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  Estimate e;
  e.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) {
    e.standard_error = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - e.mean) * (v - e.mean);
  e.standard_error = std::sqrt(ss / (n - 1.0) / n);
  return e;
}

}  // namespace

DecisionRule fixed_action(std::size_t control) {
  return [control](const Belief&, int) { return control; };
}

DecisionRule greedy(const ValuePolicy& policy) {
  auto shared = std::make_shared<const ValuePolicy>(policy);
  return [shared](const Belief& belief, int stage) { return best_action(*shared, belief, stage); };
}

std::uint64_t derive_run_seed(std::uint64_t base_seed, std::uint64_t run) {
  return splitmix64(base_seed + 0x9e3779b97f4a7c15ULL * (run + 1));
}

double RolloutRecord::total_belief_entropy() const {
  return std::accumulate(belief_entropies.begin(), belief_entropies.end(), 0.0);
}

double RolloutRecord::accumulated_cost() const {
  return terminal_cost + std::accumulate(stage_costs.begin(), stage_costs.end(), 0.0);
}

RolloutRecord rollout(const ControlledHmm& model, const CostModel& costs, const DecisionRule& rule,
                      std::uint64_t seed, const EntropyConfig& config,
                      std::optional<std::size_t> initial_state) {
  if (initial_state && *initial_state >= model.n_states)
    throw UsageError("initial state out of range");
  const int horizon = costs.horizon;
  std::mt19937_64 engine(seed);
  RolloutRecord r;
  r.seed = seed;

  const double u_state = uniform(engine);
  const double u_obs = uniform(engine);
  std::size_t x = initial_state ? *initial_state : sample(model.prior, u_state);
  std::size_t y = sample(model.initial_observation.row(static_cast<Eigen::Index>(x)).transpose(), u_obs);
  Belief belief = initial_update(model, y);
  r.states.push_back(x);
  r.observations.push_back(y);
  r.beliefs.push_back(belief);
  r.belief_entropies.push_back(belief_entropy(belief, config));

  for (int k = 0; k < horizon; ++k) {
    const std::size_t u = rule(belief, k);
    check_control(model, u);
    r.controls.push_back(u);
    r.stage_costs.push_back(costs.stage(k, x, u));
    const double u_next = uniform(engine);
    const double u_y = uniform(engine);
    x = sample(model.transition[u].col(static_cast<Eigen::Index>(x)), u_next);
    y = sample(model.observation[u].row(static_cast<Eigen::Index>(x)).transpose(), u_y);
    belief = step(model, belief, u, y, k + 1);
    r.states.push_back(x);
    r.observations.push_back(y);
    r.beliefs.push_back(belief);
    r.belief_entropies.push_back(belief_entropy(belief, config));
  }
  r.terminal_cost = costs.terminal_cost(static_cast<Eigen::Index>(x));
  r.smoother_entropy = pointwise_smoother_entropy(model, r.observations, r.controls, config);
  return r;
}

MetricsSummary monte_carlo(const ControlledHmm& model, const CostModel& costs,
                           const DecisionRule& rule, std::size_t runs, std::uint64_t base_seed,
                           const EntropyConfig& config) {
  if (runs == 0) throw UsageError("monte carlo needs at least one run");
  std::vector<double> terminal(runs), stage(runs), tbe(runs), smoother(runs), total(runs);
  for (std::size_t run = 0; run < runs; ++run) {
    const RolloutRecord r = rollout(model, costs, rule, derive_run_seed(base_seed, run), config);
    terminal[run] = r.terminal_cost;
    stage[run] = r.accumulated_cost() - r.terminal_cost;
    tbe[run] = r.total_belief_entropy();
    smoother[run] = r.smoother_entropy;
    total[run] = r.total_cost();
  }
  MetricsSummary s;
  s.runs = runs;
  s.terminal_cost = estimate(terminal);
  s.stage_cost = estimate(stage);
  s.total_belief_entropy = estimate(tbe);
  s.smoother_entropy = estimate(smoother);
  s.total_cost = estimate(total);
  return s;
}

void for_each_observation_path(const ControlledHmm& model, int horizon, const DecisionRule& rule,
                               const std::function<void(const ObservationPath&)>& visit) {
  ObservationPath path;
  const std::function<void(int)> descend = [&](int k) {
    if (k == horizon) {
      visit(path);
      return;
    }
    const Belief belief = path.beliefs.back();
    const std::size_t u = rule(belief, k);
    check_control(model, u);
    const Vector marginal = observation_marginal(model, belief, u);
    const double base_probability = path.probability;
    for (std::size_t y = 0; y < model.n_observations; ++y) {
      const double py = marginal(static_cast<Eigen::Index>(y));
      if (!(py > 0.0)) continue;
      path.probability = base_probability * py;
      path.controls.push_back(u);
      path.observations.push_back(y);
      path.beliefs.push_back(step(model, belief, u, y, k + 1));
      descend(k + 1);
      path.beliefs.pop_back();
      path.observations.pop_back();
      path.controls.pop_back();
    }
    path.probability = base_probability;
  };

  const Vector initial_marginal = model.initial_observation.transpose() * model.prior;
  for (std::size_t y = 0; y < model.n_observations; ++y) {
    const double py = initial_marginal(static_cast<Eigen::Index>(y));
    if (!(py > 0.0)) continue;
    path.probability = py;
    path.observations = {y};
    path.controls.clear();
    path.beliefs = {initial_update(model, y)};
    descend(0);
  }
}

double brute_force_smoother_entropy(const ControlledHmm& model,
                                    std::span<const std::size_t> observations,
                                    std::span<const std::size_t> controls,
                                    const EntropyConfig& config) {
  if (observations.empty() || controls.size() + 1 != observations.size())
    throw UsageError("expected y_0..y_T and u_0..u_{T-1}");
  const std::size_t n = model.n_states;
  const std::size_t length = observations.size();
  std::vector<double> weights;
  std::vector<std::size_t> xs(length, 0);
  double total = 0.0;
  // Odometer over all state sequences.
  for (;;) {
    double w = model.prior(Eigen::Index(xs[0])) *
               model.initial_observation(Eigen::Index(xs[0]), Eigen::Index(observations[0]));
    for (std::size_t k = 0; k + 1 < length && w > 0.0; ++k) {
      const std::size_t u = controls[k];
      w *= model.transition[u](Eigen::Index(xs[k + 1]), Eigen::Index(xs[k])) *
           model.observation[u](Eigen::Index(xs[k + 1]), Eigen::Index(observations[k + 1]));
    }
    weights.push_back(w);
    total += w;
    std::size_t pos = 0;
    while (pos < length && ++xs[pos] == n) xs[pos++] = 0;
    if (pos == length) break;
  }
  if (!(total > 0.0)) throw ImpossibleEvidence(observations.back(), static_cast<int>(length) - 1);
  double h = 0.0;
  for (double w : weights)
    if (w > 0.0) h -= (w / total) * std::log(w / total);
  return std::max(h, 0.0) * config.unit();
}

MetricsSummary exact_policy_metrics(const ControlledHmm& model, const CostModel& costs,
                                    const DecisionRule& rule, const EntropyConfig& config,
                                    double term_limit) {
  const int horizon = costs.horizon;
  const double terms = std::pow(double(model.n_observations), horizon + 1) *
                       std::pow(double(model.n_states), horizon + 1);
  if (terms > term_limit) throw SizeGuardError(terms, term_limit);

  double terminal = 0.0, stage = 0.0, tbe = 0.0, smoother = 0.0;
  for_each_observation_path(model, horizon, rule, [&](const ObservationPath& path) {
    const double p = path.probability;
    terminal += p * path.beliefs.back().dot(costs.terminal_cost);
    for (int k = 0; k < horizon; ++k)
      stage += p * path.beliefs[std::size_t(k)].dot(costs.stage_vector(k, path.controls[std::size_t(k)]));
    for (const auto& b : path.beliefs) tbe += p * belief_entropy(b, config);
    smoother += p * brute_force_smoother_entropy(model, path.observations, path.controls, config);
  });

  MetricsSummary s;
  s.exact = true;
  s.runs = 0;
  s.terminal_cost = {terminal, 0.0};
  s.stage_cost = {stage, 0.0};
  s.total_belief_entropy = {tbe, 0.0};
  s.smoother_entropy = {smoother, 0.0};
  s.total_cost = {smoother + stage + terminal, 0.0};
  return s;
}

std::vector<MetricsSummary> compare_policies(const ControlledHmm& model, const CostModel& costs,
                                             std::span<const NamedPolicy> policies,
                                             std::size_t runs, std::uint64_t base_seed,
                                             const EntropyConfig& config) {
  std::vector<MetricsSummary> out;
  out.reserve(policies.size());
  for (const auto& p : policies) {
    MetricsSummary s = monte_carlo(model, costs, p.rule, runs, base_seed, config);
    s.name = p.name;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace asmooth
