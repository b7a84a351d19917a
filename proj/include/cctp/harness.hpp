#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cctp/pipelines.hpp"

namespace cctp {

struct ExperimentConfig {
  std::vector<std::filesystem::path> instances;
  std::vector<std::string> scenario_labels{"A", "B", "C"};
  std::vector<std::filesystem::path> scenario_files;
  double delta = 20.0;
  std::vector<double> alphas{0.8, 0.9};
  std::vector<Algorithm> algorithms{Algorithm::EA_ws, Algorithm::S5_ws, Algorithm::C5_ws};
  int repetitions = 30;
  double budget_seconds = 600.0;
  std::uint64_t master_seed = 0;
  std::filesystem::path output_dir = "results";
  std::optional<std::size_t> max_restarts;
  std::optional<std::uint64_t> ea_max_iterations;
  unsigned workers = 0;  // 0: hardware concurrency

  void validate() const;
  /// Relative paths resolve against `base_dir`.
  static ExperimentConfig from_json(const nlohmann::json& json,
                                    const std::filesystem::path& base_dir = {});
  nlohmann::json to_json() const;
};

ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct RunRecord {
  std::string instance;
  std::string scenario_set;
  Algorithm algorithm = Algorithm::S5_ws;
  double alpha = 0.8;
  int repetition = 0;
  std::uint64_t seed = 0;
  double expected_z = kInfeasibleObjective;
  double feasibility_rate = 0.0;
  std::vector<double> plan_weight_per_scenario;
  double wall_clock_seconds = 0.0;
  std::uint64_t iterations = 0;
  std::size_t restarts = 0;
  bool stopped_by_clock = false;
  bool fallback_empty_plan = false;
  Tour tour;                          // 1-based in JSON
  std::vector<std::size_t> picked;    // 1-based in JSON

  nlohmann::json to_json() const;
  static RunRecord from_json(const nlohmann::json& json);
};

/// Seed of one experiment cell.
std::uint64_t cell_seed(std::uint64_t master_seed, const std::string& instance,
                        const std::string& scenario_set, Algorithm algorithm, double alpha,
                        int repetition);

inline constexpr const char* kRecordsFile = "records.jsonl";

/// Reads every *.jsonl file under `dir` (or the file itself).
std::vector<RunRecord> load_records(const std::filesystem::path& dir);

struct ExperimentOutcome {
  std::vector<RunRecord> records;  // every record present after the run
  std::size_t executed = 0;
  std::size_t skipped = 0;
  std::vector<std::string> errors;
};

/// Runs every (instance, scenario set, algorithm, alpha, repetition) cell not
/// already present in the output directory, appending one JSON line per
/// finished cell.
ExperimentOutcome run_experiment(const ExperimentConfig& config, std::ostream* log = nullptr);

}  // namespace cctp
