#include "cctp/pipelines.hpp"

#include <algorithm>
#include <string>

#include "cctp/errors.hpp"
#include "cctp/evolutionary.hpp"

namespace cctp {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::EA_ws: return "EA_ws";
    case Algorithm::S5_ws: return "S5_ws";
    case Algorithm::C5_ws: return "C5_ws";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "EA_ws" || text == "ea" || text == "EA") return Algorithm::EA_ws;
  if (text == "S5_ws" || text == "s5" || text == "S5") return Algorithm::S5_ws;
  if (text == "C5_ws" || text == "c5" || text == "C5") return Algorithm::C5_ws;
  throw InputError("unknown algorithm '" + std::string(text) + "'");
}

int algorithm_index(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::EA_ws: return 1;
    case Algorithm::S5_ws: return 2;
    case Algorithm::C5_ws: return 3;
  }
  return 0;
}

void PipelineConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ContractViolation("alpha must be in (0, 1]");
  if (!(budget_seconds > 0.0)) throw ContractViolation("budget_seconds must be positive");
  if (max_restarts && *max_restarts == 0) throw ContractViolation("max_restarts must be >= 1");
  if (max_pack_reinvocations < 0) throw ContractViolation("max_pack_reinvocations must be >= 0");
  tour.validate();
}

namespace {

Deadline tour_deadline(const PipelineConfig& config) {
  return deadline_after(config.tour.time_share * config.budget_seconds);
}

// PackIterative, re-run on a window of half the width around the previous
// best exponent while the objective strictly improves.
PackIterativeResult optimise_packing(const Instance& instance, const ScenarioSet& scenarios,
                                     const Tour& tour, const PipelineConfig& config) {
  PackIterativeResult best = pack_iterative_ws(instance, scenarios, tour, config.alpha, config.pack);
  double width = config.pack.exp_high - config.pack.exp_low;
  for (int r = 0; r < config.max_pack_reinvocations; ++r) {
    width *= 0.5;
    PackIterativeConfig window = config.pack;
    window.exp_low = std::max(0.0, best.best_exp - 0.5 * width);
    window.exp_high = best.best_exp + 0.5 * width;
    PackIterativeResult next = pack_iterative_ws(instance, scenarios, tour, config.alpha, window);
    if (!(next.expected_z > best.expected_z)) break;
    best = std::move(next);
  }
  return best;
}

TourSearchConfig restart_tour_config(const PipelineConfig& config, std::size_t restart_index) {
  TourSearchConfig tc = config.tour;
  tc.rng_seed = split_seed(config.rng_seed, restart_index);
  return tc;
}

template <typename Restart>
SolveResult restart_loop(const Instance& instance, const ScenarioSet& scenarios,
                         const PipelineConfig& config, Restart restart) {
  config.validate();
  scenarios.validate_for(instance);
  const auto start = Clock::now();
  const Deadline deadline = deadline_after(config.budget_seconds);
  const TourImprover improver(instance);

  SolveResult result;
  RestartResult best;
  for (std::size_t r = 0;; ++r) {
    if (r > 0) {
      if (config.max_restarts && r >= *config.max_restarts) break;
      if (Clock::now() >= deadline) {
        result.stopped_by_clock = true;
        break;
      }
    }
    RestartResult current = restart(improver, scenarios, config, r, tour_deadline(config));
    ++result.restarts;
    if (current.expected_z > best.expected_z || best.solution.tour.empty()) best = std::move(current);
  }

  result.solution = std::move(best.solution);
  result.evaluation = evaluate(instance, scenarios, result.solution, config.alpha);
  if (!result.evaluation.feasible()) {
    result.solution.plan.assign(instance.num_items(), false);
    result.fallback_empty_plan = true;
    result.evaluation = evaluate(instance, scenarios, result.solution, config.alpha);
  }
  result.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace

RestartResult s5_restart(const TourImprover& improver, const ScenarioSet& scenarios,
                         const PipelineConfig& config, std::size_t restart_index,
                         std::optional<Deadline> deadline) {
  const Instance& instance = improver.instance();
  RestartResult out;
  out.solution.tour = improver.construct(restart_tour_config(config, restart_index), deadline);
  PackIterativeResult packed = optimise_packing(instance, scenarios, out.solution.tour, config);
  out.solution.plan = std::move(packed.plan);
  out.expected_z = packed.expected_z;
  return out;
}

RestartResult c5_restart(const TourImprover& improver, const ScenarioSet& scenarios,
                         const PipelineConfig& config, std::size_t restart_index,
                         std::optional<Deadline> deadline) {
  const Instance& instance = improver.instance();
  RestartResult out = s5_restart(improver, scenarios, config, restart_index, deadline);
  out.solution.plan = bitflip_step(instance, scenarios, out.solution, config.alpha);
  out.solution = insertion_step(instance, scenarios, out.solution, config.alpha);
  out.expected_z = evaluate(instance, scenarios, out.solution, config.alpha).expected_z;
  return out;
}

SolveResult s5_ws(const Instance& instance, const ScenarioSet& scenarios,
                  const PipelineConfig& config) {
  return restart_loop(instance, scenarios, config, s5_restart);
}

SolveResult c5_ws(const Instance& instance, const ScenarioSet& scenarios,
                  const PipelineConfig& config) {
  return restart_loop(instance, scenarios, config, c5_restart);
}

SolveResult ea_ws(const Instance& instance, const ScenarioSet& scenarios,
                  const PipelineConfig& config) {
  config.validate();
  scenarios.validate_for(instance);
  const auto start = Clock::now();
  const TourImprover improver(instance);

  SolveResult result;
  result.solution.tour = improver.construct(restart_tour_config(config, 0), tour_deadline(config));
  result.restarts = 1;

  EAConfig ea;
  ea.alpha = config.alpha;
  ea.max_iterations = config.ea_max_iterations;
  ea.rng_seed = split_seed(config.rng_seed, 1);
  const double used = std::chrono::duration<double>(Clock::now() - start).count();
  ea.time_limit_seconds = std::max(0.0, config.budget_seconds - used);
  EAResult run = ea_run(instance, scenarios, result.solution.tour, ea);

  result.solution.plan = std::move(run.plan);
  result.iterations = run.trace.iterations;
  result.stopped_by_clock = !config.ea_max_iterations || run.trace.iterations < *config.ea_max_iterations;
  result.evaluation = evaluate(instance, scenarios, result.solution, config.alpha);
  result.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

SolveResult solve(const Instance& instance, const ScenarioSet& scenarios,
                  const PipelineConfig& config) {
  switch (config.algorithm) {
    case Algorithm::EA_ws: return ea_ws(instance, scenarios, config);
    case Algorithm::S5_ws: return s5_ws(instance, scenarios, config);
    case Algorithm::C5_ws: return c5_ws(instance, scenarios, config);
  }
  throw ContractViolation("unknown algorithm");
}

}  // namespace cctp
