#pragma once

#include <cstdint>
#include <random>

#include "asmooth/model.hpp"
#include "asmooth/sim.hpp"

namespace asmooth::testing {

inline double uniform01(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Flat Dirichlet draw, bounded away from zero so filters never hit
// impossible evidence.
inline Vector random_simplex(std::mt19937_64& rng, Eigen::Index n, double floor = 1e-3) {
  std::gamma_distribution<double> gamma(1.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = gamma(rng) + floor;
  return v / v.sum();
}

inline Problem random_problem(std::mt19937_64& rng, std::size_t n, std::size_t n_controls,
                              std::size_t n_obs, int horizon) {
  Problem p;
  auto& m = p.model;
  m.n_states = n;
  m.n_controls = n_controls;
  m.n_observations = n_obs;
  const auto N = static_cast<Eigen::Index>(n);
  const auto Y = static_cast<Eigen::Index>(n_obs);
  m.prior = random_simplex(rng, N);
  for (std::size_t u = 0; u < n_controls; ++u) {
    Matrix a(N, N), b(N, Y);
    for (Eigen::Index j = 0; j < N; ++j) a.col(j) = random_simplex(rng, N);
    for (Eigen::Index i = 0; i < N; ++i) b.row(i) = random_simplex(rng, Y).transpose();
    m.transition.push_back(a);
    m.observation.push_back(b);
  }
  m.initial_observation = m.observation.front();
  p.costs.horizon = horizon;
  Matrix c(N, static_cast<Eigen::Index>(n_controls));
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = uniform01(rng);
  p.costs.stage_cost = {c};
  p.costs.terminal_cost = Vector(N);
  for (Eigen::Index i = 0; i < N; ++i) p.costs.terminal_cost(i) = uniform01(rng);
  return p;
}

// Same model with every transition column replaced by one shared
// distribution, so consecutive states are independent.
inline Problem with_independent_states(Problem p, std::mt19937_64& rng) {
  const auto N = static_cast<Eigen::Index>(p.model.n_states);
  for (auto& a : p.model.transition) {
    const Vector column = random_simplex(rng, N);
    for (Eigen::Index j = 0; j < N; ++j) a.col(j) = column;
  }
  return p;
}

// Deterministic policy from a random table indexed by stage and the most
// likely state.
inline DecisionRule random_table_rule(std::mt19937_64& rng, const Problem& p) {
  std::vector<std::vector<std::size_t>> table(static_cast<std::size_t>(p.costs.horizon));
  std::uniform_int_distribution<std::size_t> pick(0, p.model.n_controls - 1);
  for (auto& row : table)
    for (std::size_t i = 0; i < p.model.n_states; ++i) row.push_back(pick(rng));
  return [table](const Belief& b, int k) {
    Eigen::Index arg;
    b.maxCoeff(&arg);
    return table[static_cast<std::size_t>(k)][static_cast<std::size_t>(arg)];
  };
}

// Expected smoother entropy by enumerating state sequences on every
// observation branch.
inline double brute_force_expected_smoother_entropy(const Problem& p, const DecisionRule& rule) {
  double total = 0.0;
  for_each_observation_path(p.model, p.costs.horizon, rule, [&](const ObservationPath& path) {
    total += path.probability * brute_force_smoother_entropy(p.model, path.observations, path.controls);
  });
  return total;
}

}  // namespace asmooth::testing
