#include "cctp/evolutionary.hpp"

#include <sstream>

#include "cctp/errors.hpp"

namespace cctp {

void EAConfig::validate() const {
  if (mutation_rate && !(*mutation_rate > 0.0 && *mutation_rate <= 1.0)) {
    throw ContractViolation("mutation rate must be in (0, 1]");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ContractViolation("alpha must be in (0, 1]");
  if (!max_iterations && !time_limit_seconds) {
    throw ContractViolation("EA needs an iteration cap or a time limit");
  }
}

std::string EATrace::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,best_z\n";
  for (const auto& [t, z] : improvements) out << t << ',' << z << '\n';
  return out.str();
}

std::size_t mutate(PackingPlan& plan, double rate, Rng& rng) {
  std::bernoulli_distribution flip(rate);
  std::size_t flipped = 0;
  for (std::size_t j = 0; j < plan.size(); ++j) {
    if (flip(rng)) {
      plan[j] = !plan[j];
      ++flipped;
    }
  }
  return flipped;
}

EAResult ea_run(const Instance& instance, const ScenarioSet& scenarios, const Tour& tour,
                const EAConfig& config) {
  config.validate();
  const PlanEvaluator ctx(instance, scenarios, tour);
  const std::size_t m = instance.num_items();
  const double rate = config.mutation_rate.value_or(m > 0 ? 1.0 / static_cast<double>(m) : 1.0);
  std::optional<Deadline> deadline;
  if (config.time_limit_seconds) deadline = deadline_after(*config.time_limit_seconds);

  Rng rng(config.rng_seed);
  EAResult result;
  EATrace& trace = result.trace;
  PackingPlan current(m, false);
  trace.best_plan = current;

  PackingPlan offspring;
  while (true) {
    if (config.max_iterations && trace.iterations >= *config.max_iterations) break;
    if (deadline && (trace.iterations & 63) == 0 && expired(deadline)) break;
    ++trace.iterations;

    offspring = current;
    mutate(offspring, rate, rng);
    const Evaluation ev = ctx.evaluate(offspring, config.alpha);
    if (ev.feasible() && ev.expected_z >= trace.best_z) {
      if (ev.expected_z > trace.best_z) trace.improvements.emplace_back(trace.iterations, ev.expected_z);
      trace.best_z = ev.expected_z;
      trace.best_plan = offspring;
      current.swap(offspring);
      ++trace.acceptances;
    }
  }
  result.plan = trace.best_plan;
  return result;
}

}  // namespace cctp
