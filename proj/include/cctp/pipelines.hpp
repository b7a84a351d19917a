#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "cctp/evaluation.hpp"
#include "cctp/packing.hpp"
#include "cctp/tour_search.hpp"

namespace cctp {

enum class Algorithm { EA_ws, S5_ws, C5_ws };

std::string_view to_string(Algorithm algorithm);
/// Accepts "EA_ws"/"ea", "S5_ws"/"s5", "C5_ws"/"c5".
Algorithm parse_algorithm(std::string_view text);
/// 1-based column number used in result tables.
int algorithm_index(Algorithm algorithm);

struct PipelineConfig {
  Algorithm algorithm = Algorithm::S5_ws;
  double alpha = 0.8;
  double budget_seconds = 600.0;
  std::uint64_t rng_seed = 1;
  // Extra deterministic stop for the restart loops.
  std::optional<std::size_t> max_restarts;
  // Extra deterministic stop for the EA.
  std::optional<std::uint64_t> ea_max_iterations;
  int max_pack_reinvocations = 5;
  TourSearchConfig tour;
  PackIterativeConfig pack;

  void validate() const;
};

struct SolveResult {
  Solution solution;
  Evaluation evaluation;
  std::size_t restarts = 0;
  std::uint64_t iterations = 0;
  double elapsed_seconds = 0.0;
  bool stopped_by_clock = false;
  // The best plan found missed the chance constraint and was replaced by the empty plan.
  bool fallback_empty_plan = false;
};

struct RestartResult {
  Solution solution;
  double expected_z = kInfeasibleObjective;
};

/// One S5 restart: fresh tour, then PackIterative re-run while it strictly improves.
RestartResult s5_restart(const TourImprover& improver, const ScenarioSet& scenarios,
                         const PipelineConfig& config, std::size_t restart_index,
                         std::optional<Deadline> deadline = std::nullopt);

/// The S5 restart followed by one BitFlip pass and one Insertion pass.
RestartResult c5_restart(const TourImprover& improver, const ScenarioSet& scenarios,
                         const PipelineConfig& config, std::size_t restart_index,
                         std::optional<Deadline> deadline = std::nullopt);

SolveResult s5_ws(const Instance& instance, const ScenarioSet& scenarios,
                  const PipelineConfig& config);
SolveResult c5_ws(const Instance& instance, const ScenarioSet& scenarios,
                  const PipelineConfig& config);
/// Tour from the chained 2-opt, then the (1+1) EA for the rest of the budget.
SolveResult ea_ws(const Instance& instance, const ScenarioSet& scenarios,
                  const PipelineConfig& config);

SolveResult solve(const Instance& instance, const ScenarioSet& scenarios,
                  const PipelineConfig& config);

}  // namespace cctp
