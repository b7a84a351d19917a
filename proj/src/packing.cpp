#include "cctp/packing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cctp/errors.hpp"

namespace cctp {

void PackConfig::validate() const {
  if (!(exp >= 0.0)) throw ContractViolation("pack exponent must be >= 0");
  if (tau < 1) throw ContractViolation("tau must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ContractViolation("alpha must be in (0, 1]");
}

std::vector<double> item_scores(const Instance& instance, const ScenarioSet& scenarios,
                                const Tour& tour, double exp) {
  const PlanEvaluator ctx(instance, scenarios, tour);
  const auto mean = scenarios.mean_weights();
  std::vector<double> scores(instance.num_items());
  for (std::size_t j = 0; j < scores.size(); ++j) {
    const double remaining = ctx.remaining_distance(ctx.item_position(j));
    if (mean[j] == 0.0 || remaining == 0.0) {
      scores[j] = std::numeric_limits<double>::infinity();
      continue;
    }
    scores[j] = std::pow(instance.profits[j], exp) / (std::pow(mean[j], exp) * remaining);
  }
  return scores;
}

namespace {

void add_item(std::vector<double>& totals, const ScenarioSet& scenarios, std::size_t item) {
  for (std::size_t s = 0; s < totals.size(); ++s) totals[s] += scenarios.weights[s][item];
}

PackingPlan pack_with(const PlanEvaluator& ctx, const PackConfig& config) {
  config.validate();
  const Instance& instance = ctx.instance();
  const ScenarioSet& scenarios = ctx.scenarios();
  const std::size_t m = instance.num_items();

  const auto scores = item_scores(instance, scenarios, ctx.tour(), config.exp);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::size_t omega = std::max<std::size_t>(1, m / static_cast<std::size_t>(config.tau));
  PackingPlan plan(m, false);
  PackingPlan best(m, false);
  double best_z = kInfeasibleObjective;
  std::vector<double> totals(scenarios.k(), 0.0);
  std::vector<double> best_totals = totals;
  std::vector<double> trial;

  std::size_t t = 0;
  std::size_t t_best = 0;
  std::size_t pending = 0;  // additions since the last checkpoint
  while (t < m && omega >= 1) {
    const std::size_t item = order[t];
    trial = totals;
    add_item(trial, scenarios, item);
    if (ctx.rate_from_totals(trial) >= config.alpha) {
      plan[item] = true;
      totals.swap(trial);
      ++pending;
    }
    ++t;

    if (pending == 0 || (pending < omega && t < m)) continue;
    pending = 0;
    const Evaluation ev = ctx.evaluate(plan, config.alpha);
    if (ev.expected_z < best_z || !ev.feasible()) {
      plan = best;
      totals = best_totals;
      t = t_best;
      omega /= 2;
    } else {
      best = plan;
      totals = ctx.scenario_totals(plan);
      best_totals = totals;
      t_best = t;
      best_z = ev.expected_z;
    }
  }
  return best;
}

}  // namespace

PackingPlan pack_ws(const Instance& instance, const ScenarioSet& scenarios, const Tour& tour,
                    const PackConfig& config) {
  const PlanEvaluator ctx(instance, scenarios, tour);
  return pack_with(ctx, config);
}

PackIterativeResult pack_iterative_ws(const Instance& instance, const ScenarioSet& scenarios,
                                      const Tour& tour, double alpha,
                                      const PackIterativeConfig& config, const PackBudget& budget) {
  if (!(config.exp_low >= 0.0) || config.exp_high < config.exp_low) {
    throw ContractViolation("exponent interval must satisfy 0 <= low <= high");
  }
  if (budget.max_pack_calls && *budget.max_pack_calls == 0) {
    throw ContractViolation("pack_iterative_ws needs a budget of at least one pack call");
  }
  const PlanEvaluator ctx(instance, scenarios, tour);
  PackIterativeResult result;
  result.plan.assign(instance.num_items(), false);

  auto run = [&](double exp) {
    PackConfig pc;
    pc.exp = exp;
    pc.tau = config.tau;
    pc.alpha = alpha;
    PackingPlan plan = pack_with(ctx, pc);
    ++result.pack_calls;
    const double z = ctx.evaluate(plan, alpha).expected_z;
    if (z > result.expected_z || (z == result.expected_z && exp < result.best_exp)) {
      result.expected_z = z;
      result.best_exp = exp;
      result.plan = std::move(plan);
    }
    return z;
  };
  auto budget_left = [&] {
    if (budget.max_pack_calls && result.pack_calls >= *budget.max_pack_calls) return false;
    return !expired(budget.deadline);
  };

  double lo = config.exp_low;
  double hi = config.exp_high;
  double mid = 0.5 * (lo + hi);
  double z_mid = run(mid);
  if (!budget_left()) return result;
  double z_lo = run(lo);
  if (!budget_left()) return result;
  double z_hi = run(hi);

  for (int r = 0; r < config.refinements; ++r) {
    if (hi - lo < config.min_width || !budget_left()) break;
    if (z_lo >= z_hi) {
      hi = mid;
      z_hi = z_mid;
    } else {
      lo = mid;
      z_lo = z_mid;
    }
    mid = 0.5 * (lo + hi);
    z_mid = run(mid);
  }
  return result;
}

PackingPlan bitflip_step(const Instance& instance, const ScenarioSet& scenarios,
                         const Solution& solution, double alpha) {
  const PlanEvaluator ctx(instance, scenarios, solution.tour);
  PackingPlan plan = solution.plan;
  Evaluation current = ctx.evaluate(plan, alpha);
  std::vector<double> totals = ctx.scenario_totals(plan);
  for (std::size_t j = 0; j < plan.size(); ++j) {
    std::vector<double> trial = totals;
    const double sign = plan[j] ? -1.0 : 1.0;
    for (std::size_t s = 0; s < trial.size(); ++s) trial[s] += sign * scenarios.weights[s][j];
    // Cheap screen; the full evaluation below decides.
    if (ctx.rate_from_totals(trial) < alpha && !plan[j]) continue;
    plan[j] = !plan[j];
    Evaluation ev = ctx.evaluate(plan, alpha);
    if (ev.feasible() && ev.expected_z > current.expected_z) {
      current = std::move(ev);
      totals = ctx.scenario_totals(plan);
    } else {
      plan[j] = !plan[j];
    }
  }
  return plan;
}

}  // namespace cctp
