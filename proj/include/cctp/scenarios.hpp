#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cctp/instance.hpp"

namespace cctp {

enum class ScenarioLabel { A, B, C, Custom };

std::string_view to_string(ScenarioLabel label);
ScenarioLabel parse_scenario_label(std::string_view text);

/// k weight profiles over the same items, each with an occurrence probability.
struct ScenarioSet {
  ScenarioLabel label = ScenarioLabel::Custom;
  double delta = 0.0;
  std::vector<double> probs;
  std::vector<std::vector<double>> weights;  // weights[s][item]

  std::size_t k() const { return probs.size(); }
  std::size_t num_items() const { return weights.empty() ? 0 : weights.front().size(); }

  /// Probability-weighted mean weight of every item.
  std::vector<double> mean_weights() const;

  /// Throws InputError on empty sets, ragged or negative weights, or
  /// probabilities that do not sum to 1 within 1e-12.
  void validate() const;
  void validate_for(const Instance& instance) const;
};

/// Occurrence probabilities of the five shifted scenarios for sets A, B and C.
std::array<double, 5> label_probabilities(ScenarioLabel label);

/// Five scenarios shifting each nominal weight by -delta, -delta/2, 0,
/// +delta/2, +delta; downward shifts are skipped when they would go negative.
ScenarioSet generate_scenarios(const Instance& instance, double delta, ScenarioLabel label);

/// A single scenario with probability 1 carrying the nominal weights.
ScenarioSet nominal_scenario(const Instance& instance);

std::string serialize_scenarios(const ScenarioSet& set);
ScenarioSet parse_scenarios(std::string_view text);
ScenarioSet load_scenarios(const std::filesystem::path& path);

}  // namespace cctp
