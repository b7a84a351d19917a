#include <gtest/gtest.h>

#include <random>

#include "cctp/errors.hpp"
#include "cctp/evaluation.hpp"
#include "oracles.hpp"

using namespace cctp;

namespace {

struct Toy : ::testing::Test {
  Instance inst = load_instance(oracle::data_path("toy4.ttp"));
  Tour square{0, 1, 2, 3};
};

PackingPlan random_plan(std::size_t m, std::mt19937_64& rng, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  PackingPlan plan(m);
  for (std::size_t j = 0; j < m; ++j) plan[j] = coin(rng);
  return plan;
}

}  // namespace

TEST_F(Toy, DeterministicObjective) {
  EXPECT_DOUBLE_EQ(deterministic_objective(inst, inst.nominal_weights, {square, {0, 0, 0}}), -14);
  EXPECT_NEAR(deterministic_objective(inst, inst.nominal_weights, {square, {0, 0, 1}}),
              60 - (11 + 3 / 0.55), 1e-12);
  EXPECT_NEAR(43.5454545, deterministic_objective(inst, inst.nominal_weights, {square, {0, 0, 1}}), 1e-6);
  EXPECT_THROW(deterministic_objective(inst, inst.nominal_weights, {square, {1, 0, 1}}), ContractViolation);
}

TEST_F(Toy, ZeroRentingRateGivesProfit) {
  inst.renting_rate = 0;
  EXPECT_EQ(deterministic_objective(inst, inst.nominal_weights, {square, {1, 1, 0}}), 130);
}

TEST_F(Toy, ChanceRateWorkedValues) {
  EXPECT_EQ(chance_rate(inst, generate_scenarios(inst, 0.5, ScenarioLabel::A), {0, 0, 0}), 1.0);
  // Plan weights per scenario (4,4,4,6,6) against B = 4.
  ScenarioSet s;
  s.probs = {0.2, 0.2, 0.2, 0.2, 0.2};
  s.weights = {{2, 9, 2}, {2, 9, 2}, {2, 9, 2}, {3, 9, 3}, {3, 9, 3}};
  EXPECT_DOUBLE_EQ(chance_rate(inst, s, {1, 0, 1}), 0.6);
  s.probs = {0.3, 0.3, 0.2, 0.1, 0.1};
  EXPECT_DOUBLE_EQ(chance_rate(inst, s, {1, 0, 1}), 0.8);
}

TEST_F(Toy, PlanFeasibleInFirstFourScenarios) {
  const auto set = generate_scenarios(inst, 0.5, ScenarioLabel::A);
  const Solution sol{square, {1, 1, 0}};  // weights 2.5, 3, 3.5, 4, 4.5
  const Evaluation e = evaluate(inst, set, sol, 0.8);
  EXPECT_DOUBLE_EQ(e.feasibility_rate, 0.8);
  EXPECT_TRUE(e.feasible());
  EXPECT_EQ(e.per_scenario_feasible, (std::vector<bool>{true, true, true, true, false}));
  double expect = 130;
  for (std::size_t s = 0; s < 4; ++s) {
    expect -= 0.2 * oracle::travel_time(inst, square, sol.plan, set.weights[s]);
  }
  EXPECT_NEAR(e.expected_z, expect, 1e-12);
  EXPECT_TRUE(std::isinf(e.per_scenario_travel_time[4]));
  EXPECT_FALSE(evaluate(inst, set, sol, 0.9).feasible());
}

TEST_F(Toy, NoFeasibleScenarioIsSentinel) {
  const auto set = generate_scenarios(inst, 0, ScenarioLabel::A);  // 5.5 > 4 everywhere
  const Evaluation e = evaluate(inst, set, {square, {1, 1, 1}}, 0.5);
  EXPECT_EQ(e.feasibility_rate, 0);
  EXPECT_EQ(e.expected_z, kInfeasibleObjective);
  EXPECT_FALSE(e.feasible());
}

TEST_F(Toy, ZeroDeltaMatchesDeterministic) {
  const auto set = generate_scenarios(inst, 0, ScenarioLabel::B);
  for (unsigned long mask = 0; mask < 8; ++mask) {
    const Solution sol{square, oracle::plan_from_mask(3, mask)};
    double w = 0;
    for (std::size_t j = 0; j < 3; ++j) w += sol.plan[j] ? inst.nominal_weights[j] : 0;
    if (w > inst.capacity) continue;
    EXPECT_NEAR(evaluate(inst, set, sol, 1).expected_z,
                deterministic_objective(inst, inst.nominal_weights, sol), 1e-12);
  }
}

TEST_F(Toy, EmptyPlanIsTourCost) {
  for (auto label : {ScenarioLabel::A, ScenarioLabel::B, ScenarioLabel::C}) {
    const auto set = generate_scenarios(inst, 0.5, label);
    EXPECT_DOUBLE_EQ(evaluate(inst, set, {{0, 3, 2, 1}, {0, 0, 0}}, 1).expected_z, -14);
  }
}

TEST_F(Toy, MatchesOracleEverywhere) {
  for (auto label : {ScenarioLabel::A, ScenarioLabel::B, ScenarioLabel::C}) {
    const auto set = generate_scenarios(inst, 0.5, label);
    for (Tour t : {Tour{0, 1, 2, 3}, Tour{0, 3, 2, 1}, Tour{0, 2, 1, 3}}) {
      for (unsigned long mask = 0; mask < 8; ++mask) {
        const auto plan = oracle::plan_from_mask(3, mask);
        const auto o = oracle::expected(inst, set, t, plan);
        const auto e = evaluate(inst, set, {t, plan}, 0.8);
        EXPECT_EQ(e.feasibility_rate, o.rate);
        if (std::isinf(o.z)) {
          EXPECT_EQ(e.expected_z, o.z);
        } else {
          EXPECT_NEAR(e.expected_z, o.z, 1e-9);
        }
      }
    }
  }
}

TEST_F(Toy, TourValidation) {
  const auto set = generate_scenarios(inst, 0.5, ScenarioLabel::A);
  EXPECT_THROW(evaluate(inst, set, {{1, 0, 2, 3}, {0, 0, 0}}, 0.8), ContractViolation);
  EXPECT_THROW(evaluate(inst, set, {{0, 1, 1, 3}, {0, 0, 0}}, 0.8), ContractViolation);
  EXPECT_THROW(evaluate(inst, set, {{0, 1, 2}, {0, 0, 0}}, 0.8), ContractViolation);
  EXPECT_THROW(evaluate(inst, set, {square, {0, 0}}, 0.8), ContractViolation);
}

TEST(Evaluation, PlanEvaluatorAgreesOnToy) {
  const Instance inst = load_instance(oracle::data_path("toy4.ttp"));
  const auto set = generate_scenarios(inst, 0.5, ScenarioLabel::C);
  std::mt19937_64 rng(3);
  const Tour tour{0, 2, 1, 3};
  PlanEvaluator ctx(inst, set, tour);
  EXPECT_EQ(ctx.evaluate(PackingPlan(3, false), 0.8).feasibility_rate, 1.0);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto plan = random_plan(3, rng);
    const auto a = ctx.evaluate(plan, 0.8);
    const auto b = evaluate(inst, set, {tour, plan}, 0.8);
    EXPECT_EQ(a.feasibility_rate, b.feasibility_rate);
    if (std::isfinite(b.expected_z)) worst = std::max(worst, std::abs(a.expected_z - b.expected_z));
    else EXPECT_EQ(a.expected_z, b.expected_z);
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(Evaluation, PlanEvaluatorAgreesOn51Cities) {
  const Instance inst = load_instance(oracle::data_path("gen51_bsc.ttp"));
  const auto set = generate_scenarios(inst, 20, ScenarioLabel::B);
  std::mt19937_64 rng(9);
  Tour tour(inst.num_cities());
  std::iota(tour.begin(), tour.end(), std::size_t{0});
  std::shuffle(tour.begin() + 1, tour.end(), rng);
  PlanEvaluator ctx(inst, set, tour);
  for (int i = 0; i < 300; ++i) {
    const auto plan = random_plan(inst.num_items(), rng, 0.15);
    const auto a = ctx.evaluate(plan, 0.8);
    const auto b = evaluate(inst, set, {tour, plan}, 0.8);
    const auto o = oracle::expected(inst, set, tour, plan);
    EXPECT_EQ(a.feasibility_rate, b.feasibility_rate);
    EXPECT_EQ(b.feasibility_rate, o.rate);
    if (std::isfinite(o.z)) {
      EXPECT_NEAR(a.expected_z, b.expected_z, 1e-9);
      EXPECT_NEAR(b.expected_z, o.z, 1e-9);
    }
  }
}

TEST(Evaluation, ChanceRateMonotoneUnderAdding) {
  const Instance inst = load_instance(oracle::data_path("gen51_bsc.ttp"));
  const auto set = generate_scenarios(inst, 20, ScenarioLabel::A);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto plan = random_plan(inst.num_items(), rng, 0.2);
    const double before = chance_rate(inst, set, plan);
    plan[rng() % plan.size()] = true;
    EXPECT_LE(chance_rate(inst, set, plan), before);
  }
}

TEST(Evaluation, SpeedsStayInRange) {
  const Instance inst = load_instance(oracle::data_path("gen51_bsc.ttp"));
  // Pack close to the capacity; travel time is bounded by length / v_min.
  PackingPlan plan(inst.num_items(), false);
  double w = 0;
  for (std::size_t j = 0; j < inst.num_items(); ++j) {
    if (w + inst.nominal_weights[j] <= inst.capacity) {
      plan[j] = true;
      w += inst.nominal_weights[j];
    }
  }
  Tour tour(inst.num_cities());
  std::iota(tour.begin(), tour.end(), std::size_t{0});
  const double g = total_profit(inst, plan);
  const double z = deterministic_objective(inst, inst.nominal_weights, {tour, plan});
  const double time = (g - z) / inst.renting_rate;
  const double len = tour_length(inst, tour);
  EXPECT_GE(time, len / inst.v_max - 1e-9);
  EXPECT_LE(time, len / inst.v_min + 1e-9);
}
