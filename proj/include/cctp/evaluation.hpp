#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "cctp/instance.hpp"
#include "cctp/scenarios.hpp"

namespace cctp {

/// City visiting order; tour[0] == 0.
using Tour = std::vector<std::size_t>;
/// One bit per item.
using PackingPlan = std::vector<bool>;

struct Solution {
  Tour tour;
  PackingPlan plan;
};

inline constexpr double kInfeasibleObjective = -std::numeric_limits<double>::infinity();

struct Evaluation {
  double expected_z = kInfeasibleObjective;
  double feasibility_rate = 0.0;
  double total_profit = 0.0;
  std::vector<bool> per_scenario_feasible;
  // +inf for scenarios that exceed the capacity.
  std::vector<double> per_scenario_travel_time;
  double alpha = 1.0;

  bool feasible() const { return feasibility_rate >= alpha; }
};

/// Throws ContractViolation unless `tour` is a permutation of all cities
/// starting at the depot.
void validate_tour(const Instance& instance, std::span<const std::size_t> tour);

double tour_length(const Instance& instance, std::span<const std::size_t> tour);

double total_profit(const Instance& instance, const PackingPlan& plan);

/// Classical TTP objective under a single weight profile. Throws
/// ContractViolation when the packed weight exceeds the capacity.
double deterministic_objective(const Instance& instance, std::span<const double> weights,
                               const Solution& solution);

/// Probability mass of scenarios in which the plan fits the knapsack.
double chance_rate(const Instance& instance, const ScenarioSet& scenarios, const PackingPlan& plan);

Evaluation evaluate(const Instance& instance, const ScenarioSet& scenarios, const Solution& solution,
                    double alpha);

/// Evaluates many plans against one fixed tour.
///
/// Precomputes the leg lengths, the tour position of every item and the
/// remaining distance from each position back to the depot. Results agree
/// with evaluate() to within floating-point reassociation.
class PlanEvaluator {
 public:
  PlanEvaluator(const Instance& instance, const ScenarioSet& scenarios, Tour tour);

  Evaluation evaluate(const PackingPlan& plan, double alpha) const;

  /// Per-scenario packed weight of a plan.
  std::vector<double> scenario_totals(const PackingPlan& plan) const;

  /// C(y) from per-scenario totals, summed in scenario order.
  double rate_from_totals(std::span<const double> totals) const;

  const Tour& tour() const { return tour_; }
  const Instance& instance() const { return *instance_; }
  const ScenarioSet& scenarios() const { return *scenarios_; }

  /// Distance from the city at tour position `pos` to the end of the tour.
  double remaining_distance(std::size_t pos) const { return remaining_[pos]; }
  std::size_t item_position(std::size_t item) const { return item_position_[item]; }

 private:
  const Instance* instance_;
  const ScenarioSet* scenarios_;
  Tour tour_;
  std::vector<double> leg_;              // leg_[p]: tour[p] -> tour[p+1] (wrapping)
  std::vector<double> remaining_;        // sum of leg_[p..n-1]
  std::vector<std::size_t> item_position_;
  std::vector<std::vector<std::size_t>> items_at_position_;
};

}  // namespace cctp
