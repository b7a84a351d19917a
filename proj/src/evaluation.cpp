#include "cctp/evaluation.hpp"

#include <string>

#include "cctp/errors.hpp"

namespace cctp {
namespace {

void check_plan(const Instance& instance, const PackingPlan& plan) {
  if (plan.size() != instance.num_items()) {
    throw ContractViolation("packing plan has " + std::to_string(plan.size()) + " bits, expected " +
                            std::to_string(instance.num_items()));
  }
}

// Travel time of the closed tour when `city_weight[c]` is picked up at city c.
double travel_time(const Instance& instance, std::span<const std::size_t> tour,
                   const std::vector<double>& city_weight) {
  const std::size_t n = tour.size();
  const double nu = instance.nu();
  double carried = 0.0;
  double time = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t from = tour[i];
    const std::size_t to = tour[(i + 1) % n];
    carried += city_weight[from];
    time += instance.distance(from, to) / (instance.v_max - nu * carried);
  }
  return time;
}

double packed_weight(std::span<const double> weights, const PackingPlan& plan) {
  double total = 0.0;
  for (std::size_t j = 0; j < plan.size(); ++j) {
    if (plan[j]) total += weights[j];
  }
  return total;
}

}  // namespace

void validate_tour(const Instance& instance, std::span<const std::size_t> tour) {
  const std::size_t n = instance.num_cities();
  if (tour.size() != n) throw ContractViolation("tour does not visit every city exactly once");
  if (tour.front() != 0) throw ContractViolation("tour must start at the depot");
  std::vector<bool> seen(n, false);
  for (std::size_t c : tour) {
    if (c >= n || seen[c]) throw ContractViolation("tour is not a permutation of the cities");
    seen[c] = true;
  }
}

double tour_length(const Instance& instance, std::span<const std::size_t> tour) {
  double length = 0.0;
  for (std::size_t i = 0; i < tour.size(); ++i) {
    length += instance.distance(tour[i], tour[(i + 1) % tour.size()]);
  }
  return length;
}

double total_profit(const Instance& instance, const PackingPlan& plan) {
  check_plan(instance, plan);
  double g = 0.0;
  for (std::size_t j = 0; j < plan.size(); ++j) {
    if (plan[j]) g += instance.profits[j];
  }
  return g;
}

double deterministic_objective(const Instance& instance, std::span<const double> weights,
                               const Solution& solution) {
  validate_tour(instance, solution.tour);
  check_plan(instance, solution.plan);
  if (weights.size() != instance.num_items()) {
    throw ContractViolation("weight vector length differs from the item count");
  }
  if (packed_weight(weights, solution.plan) > instance.capacity) {
    throw ContractViolation("deterministic_objective: packed weight exceeds the capacity");
  }
  std::vector<double> city_weight(instance.num_cities(), 0.0);
  for (std::size_t j = 0; j < solution.plan.size(); ++j) {
    if (solution.plan[j]) city_weight[instance.item_city[j]] += weights[j];
  }
  const double time = travel_time(instance, solution.tour, city_weight);
  return total_profit(instance, solution.plan) - instance.renting_rate * (1.0 * time);
}

double chance_rate(const Instance& instance, const ScenarioSet& scenarios, const PackingPlan& plan) {
  check_plan(instance, plan);
  double rate = 0.0;
  for (std::size_t s = 0; s < scenarios.k(); ++s) {
    if (packed_weight(scenarios.weights[s], plan) <= instance.capacity) rate += scenarios.probs[s];
  }
  return rate;
}

Evaluation evaluate(const Instance& instance, const ScenarioSet& scenarios, const Solution& solution,
                    double alpha) {
  validate_tour(instance, solution.tour);
  check_plan(instance, solution.plan);
  const std::size_t k = scenarios.k();

  Evaluation ev;
  ev.alpha = alpha;
  ev.total_profit = total_profit(instance, solution.plan);
  ev.per_scenario_feasible.assign(k, false);
  ev.per_scenario_travel_time.assign(k, std::numeric_limits<double>::infinity());

  bool any_feasible = false;
  double weighted_time = 0.0;
  std::vector<double> city_weight(instance.num_cities());
  for (std::size_t s = 0; s < k; ++s) {
    const auto& w = scenarios.weights[s];
    if (packed_weight(w, solution.plan) > instance.capacity) continue;
    any_feasible = true;
    ev.per_scenario_feasible[s] = true;
    ev.feasibility_rate += scenarios.probs[s];

    std::fill(city_weight.begin(), city_weight.end(), 0.0);
    for (std::size_t j = 0; j < solution.plan.size(); ++j) {
      if (solution.plan[j]) city_weight[instance.item_city[j]] += w[j];
    }
    ev.per_scenario_travel_time[s] = travel_time(instance, solution.tour, city_weight);
    weighted_time += scenarios.probs[s] * ev.per_scenario_travel_time[s];
  }
  if (any_feasible) ev.expected_z = ev.total_profit - instance.renting_rate * weighted_time;
  return ev;
}

PlanEvaluator::PlanEvaluator(const Instance& instance, const ScenarioSet& scenarios, Tour tour)
    : instance_(&instance), scenarios_(&scenarios), tour_(std::move(tour)) {
  validate_tour(instance, tour_);
  scenarios.validate_for(instance);
  const std::size_t n = tour_.size();
  leg_.resize(n);
  for (std::size_t p = 0; p < n; ++p) leg_[p] = instance.distance(tour_[p], tour_[(p + 1) % n]);
  remaining_.assign(n + 1, 0.0);
  for (std::size_t p = n; p-- > 0;) remaining_[p] = remaining_[p + 1] + leg_[p];

  std::vector<std::size_t> position(n);
  for (std::size_t p = 0; p < n; ++p) position[tour_[p]] = p;
  item_position_.resize(instance.num_items());
  items_at_position_.assign(n, {});
  for (std::size_t j = 0; j < instance.num_items(); ++j) {
    item_position_[j] = position[instance.item_city[j]];
    items_at_position_[item_position_[j]].push_back(j);
  }
}

std::vector<double> PlanEvaluator::scenario_totals(const PackingPlan& plan) const {
  std::vector<double> totals(scenarios_->k(), 0.0);
  for (std::size_t s = 0; s < totals.size(); ++s) {
    totals[s] = packed_weight(scenarios_->weights[s], plan);
  }
  return totals;
}

double PlanEvaluator::rate_from_totals(std::span<const double> totals) const {
  double rate = 0.0;
  for (std::size_t s = 0; s < totals.size(); ++s) {
    if (totals[s] <= instance_->capacity) rate += scenarios_->probs[s];
  }
  return rate;
}

Evaluation PlanEvaluator::evaluate(const PackingPlan& plan, double alpha) const {
  check_plan(*instance_, plan);
  const std::size_t k = scenarios_->k();
  const std::size_t n = tour_.size();
  const double nu = instance_->nu();
  const double v_max = instance_->v_max;

  Evaluation ev;
  ev.alpha = alpha;
  ev.total_profit = total_profit(*instance_, plan);
  ev.per_scenario_feasible.assign(k, false);
  ev.per_scenario_travel_time.assign(k, std::numeric_limits<double>::infinity());

  const auto totals = scenario_totals(plan);
  bool any_feasible = false;
  double weighted_time = 0.0;
  for (std::size_t s = 0; s < k; ++s) {
    if (totals[s] > instance_->capacity) continue;
    any_feasible = true;
    ev.per_scenario_feasible[s] = true;
    ev.feasibility_rate += scenarios_->probs[s];

    const auto& w = scenarios_->weights[s];
    double carried = 0.0;
    double time = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t j : items_at_position_[p]) {
        if (plan[j]) carried += w[j];
      }
      time += leg_[p] / (v_max - nu * carried);
    }
    ev.per_scenario_travel_time[s] = time;
    weighted_time += scenarios_->probs[s] * time;
  }
  if (any_feasible) ev.expected_z = ev.total_profit - instance_->renting_rate * weighted_time;
  return ev;
}

}  // namespace cctp
