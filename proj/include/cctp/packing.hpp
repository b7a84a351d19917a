#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cctp/evaluation.hpp"
#include "cctp/instance.hpp"
#include "cctp/rng.hpp"
#include "cctp/scenarios.hpp"

namespace cctp {

struct PackConfig {
  double exp = 1.0;
  int tau = 10;
  double alpha = 0.8;

  void validate() const;
};

/// Per-item desirability p^exp / (wbar^exp * d), where wbar is the
/// probability-weighted mean weight and d the distance still to travel after
/// picking the item. Zero wbar or zero d scores +inf.
std::vector<double> item_scores(const Instance& instance, const ScenarioSet& scenarios,
                                const Tour& tour, double exp);

/// Greedy score-ordered packing with periodic objective checkpoints and
/// rollback. The result always satisfies C(y) >= alpha.
PackingPlan pack_ws(const Instance& instance, const ScenarioSet& scenarios, const Tour& tour,
                    const PackConfig& config);

struct PackIterativeConfig {
  double exp_low = 0.0;
  double exp_high = 10.0;
  int refinements = 10;
  double min_width = 0.1;
  int tau = 10;
};

struct PackBudget {
  std::optional<std::size_t> max_pack_calls;
  std::optional<Deadline> deadline;
};

struct PackIterativeResult {
  PackingPlan plan;
  double expected_z = kInfeasibleObjective;
  double best_exp = 0.0;
  std::size_t pack_calls = 0;
};

/// Bisection over the scoring exponent, keeping the best pack_ws plan.
PackIterativeResult pack_iterative_ws(const Instance& instance, const ScenarioSet& scenarios,
                                      const Tour& tour, double alpha,
                                      const PackIterativeConfig& config = {},
                                      const PackBudget& budget = {});

/// One pass over the bits in index order keeping strictly improving feasible flips.
PackingPlan bitflip_step(const Instance& instance, const ScenarioSet& scenarios,
                         const Solution& solution, double alpha);

}  // namespace cctp
