#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cctp/evaluation.hpp"
#include "cctp/rng.hpp"

namespace cctp {

struct EAConfig {
  std::optional<double> mutation_rate;  // defaults to 1/m
  double alpha = 0.8;
  std::optional<std::uint64_t> max_iterations;
  std::optional<double> time_limit_seconds;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

struct EATrace {
  std::uint64_t iterations = 0;
  double best_z = kInfeasibleObjective;
  PackingPlan best_plan;
  std::uint64_t acceptances = 0;
  std::vector<std::pair<std::uint64_t, double>> improvements;

  /// "iteration,best_z" rows with a header line.
  std::string to_csv() const;
};

struct EAResult {
  PackingPlan plan;
  EATrace trace;
};

/// Flips every bit independently with probability `rate`; returns the number flipped.
std::size_t mutate(PackingPlan& plan, double rate, Rng& rng);

/// (1+1) EA on the packing plan over a fixed tour.
EAResult ea_run(const Instance& instance, const ScenarioSet& scenarios, const Tour& tour,
                const EAConfig& config);

}  // namespace cctp
