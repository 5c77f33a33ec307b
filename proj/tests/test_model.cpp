#include "doctest.h"

#include <random>

#include "asmooth/error.hpp"
#include "asmooth/model.hpp"
#include "support.hpp"

using namespace asmooth;

TEST_CASE("grid agent is a valid model") {
  const Problem p = build_grid_agent();
  CHECK(validate_model(p.model).empty());
  CHECK(validate_costs(p.model, p.costs).empty());
  CHECK(p.model.n_states == 4);
  CHECK(p.model.n_controls == 3);
  CHECK(p.model.n_observations == 2);
  CHECK(p.costs.horizon == 3);
  CHECK(p.costs.stage_costs_vanish());
}

TEST_CASE("grid agent transitions") {
  const Problem p = build_grid_agent();
  const auto& a = p.model.transition;
  // First column is the west-most cell.
  CHECK(a[grid::kEast].col(0).isApprox(Vector((Vector(4) << 0.2, 0.8, 0, 0).finished())));
  CHECK(a[grid::kStay].isApprox(Matrix::Identity(4, 4)));
  CHECK(a[grid::kWest].col(0).isApprox(Vector((Vector(4) << 1, 0, 0, 0).finished())));
  CHECK(a[grid::kEast].col(3).isApprox(Vector((Vector(4) << 0, 0, 0, 1).finished())));
  CHECK(a[grid::kWest](1, 2) == doctest::Approx(0.8));
  CHECK(a[grid::kWest](2, 2) == doctest::Approx(0.2));
}

TEST_CASE("grid agent sensor and terminal costs") {
  const Problem at_goal = build_grid_agent(grid::GoalCost::kAtGoal);
  const Problem miss_goal = build_grid_agent(grid::GoalCost::kMissGoal);
  for (const auto& b : at_goal.model.observation) {
    CHECK(b(0, 0) == doctest::Approx(0.8));
    CHECK(b(1, 0) == doctest::Approx(0.8));
    CHECK(b(2, 1) == doctest::Approx(0.8));
    CHECK(b(3, 1) == doctest::Approx(0.8));
  }
  CHECK(at_goal.costs.terminal_cost.isApprox(Vector((Vector(4) << 0, 0, 0, 1).finished())));
  CHECK(miss_goal.costs.terminal_cost.isApprox(Vector((Vector(4) << 1, 1, 1, 0).finished())));
}

TEST_CASE("validation names the offending column and prior index") {
  Problem p = build_grid_agent();
  p.model.transition[0](1, 2) -= 0.1;
  auto v = validate_model(p.model);
  REQUIRE(v.size() == 1);
  CHECK(v[0].where.find("transition[0]") != std::string::npos);
  CHECK(v[0].where.find("column 2") != std::string::npos);
  CHECK(v[0].residual == doctest::Approx(-0.1));

  Problem q = build_grid_agent();
  q.model.prior << -0.1, 0.35, 0.35, 0.4;
  v = validate_model(q.model);
  REQUIRE(v.size() == 1);
  CHECK(v[0].where == "prior index 0");
}

TEST_CASE("validation catches shapes and cost tables") {
  Problem p = build_grid_agent();
  p.model.observation[1] = Matrix::Constant(4, 3, 1.0 / 3.0);
  CHECK_FALSE(validate_model(p.model).empty());

  Problem q = build_grid_agent();
  q.costs.stage_cost = {Matrix::Zero(4, 3), Matrix::Zero(4, 3)};
  CHECK_FALSE(validate_costs(q.model, q.costs).empty());
  q.costs.stage_cost.push_back(Matrix::Zero(4, 3));
  CHECK(validate_costs(q.model, q.costs).empty());
  CHECK(q.costs.stage_table(2).rows() == 4);
}

TEST_CASE("column-stochastic transitions preserve the simplex") {
  std::mt19937_64 rng(7);
  const Problem p = build_grid_agent();
  for (int trial = 0; trial < 100; ++trial) {
    const Belief b = testing::random_simplex(rng, 4, 0.0);
    for (const auto& a : p.model.transition) CHECK(on_simplex(a * b, 1e-10));
  }
}

TEST_CASE("index checks") {
  const Problem p = build_grid_agent();
  CHECK_NOTHROW(check_control(p.model, 2));
  CHECK_THROWS_AS(check_control(p.model, 3), UsageError);
  CHECK_THROWS_AS(check_observation(p.model, 2), UsageError);
}
