#include "cctp/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cctp/errors.hpp"

namespace cctp {

std::string_view to_string(ScenarioLabel label) {
  switch (label) {
    case ScenarioLabel::A: return "A";
    case ScenarioLabel::B: return "B";
    case ScenarioLabel::C: return "C";
    case ScenarioLabel::Custom: return "custom";
  }
  return "custom";
}

ScenarioLabel parse_scenario_label(std::string_view text) {
  if (text == "A" || text == "a") return ScenarioLabel::A;
  if (text == "B" || text == "b") return ScenarioLabel::B;
  if (text == "C" || text == "c") return ScenarioLabel::C;
  if (text == "custom") return ScenarioLabel::Custom;
  throw InputError("unknown scenario label '" + std::string(text) + "'");
}

std::array<double, 5> label_probabilities(ScenarioLabel label) {
  switch (label) {
    case ScenarioLabel::A: return {0.2, 0.2, 0.2, 0.2, 0.2};
    case ScenarioLabel::B: return {0.1, 0.1, 0.2, 0.3, 0.3};
    case ScenarioLabel::C: return {0.3, 0.3, 0.2, 0.1, 0.1};
    case ScenarioLabel::Custom: break;
  }
  throw ContractViolation("custom scenario sets have no predefined probabilities");
}

std::vector<double> ScenarioSet::mean_weights() const {
  std::vector<double> mean(num_items(), 0.0);
  for (std::size_t s = 0; s < k(); ++s) {
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += probs[s] * weights[s][i];
  }
  return mean;
}

void ScenarioSet::validate() const {
  if (probs.empty()) throw InputError("scenario set is empty");
  if (weights.size() != probs.size()) {
    throw InputError("scenario set has " + std::to_string(probs.size()) + " probabilities but " +
                     std::to_string(weights.size()) + " weight vectors");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("scenario probability outside [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw InputError("scenario probabilities sum to " + std::to_string(sum) + ", not 1");
  }
  const std::size_t m = weights.front().size();
  for (const auto& row : weights) {
    if (row.size() != m) throw InputError("scenario weight vectors differ in length");
    for (double w : row) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw InputError("negative or non-finite scenario weight");
    }
  }
  if (!(delta >= 0.0)) throw InputError("scenario delta must be non-negative");
}

void ScenarioSet::validate_for(const Instance& instance) const {
  validate();
  if (num_items() != instance.num_items()) {
    throw InputError("scenario set has " + std::to_string(num_items()) + " items, instance has " +
                     std::to_string(instance.num_items()));
  }
}

ScenarioSet generate_scenarios(const Instance& instance, double delta, ScenarioLabel label) {
  if (!(delta >= 0.0)) throw ContractViolation("generate_scenarios: delta must be >= 0");
  const auto probs = label_probabilities(label);
  ScenarioSet set;
  set.label = label;
  set.delta = delta;
  set.probs.assign(probs.begin(), probs.end());
  const auto& a = instance.nominal_weights;
  const double half = delta / 2.0;
  set.weights.assign(5, std::vector<double>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    set.weights[0][i] = a[i] >= delta ? a[i] - delta : a[i];
    set.weights[1][i] = a[i] >= half ? a[i] - half : a[i];
    set.weights[2][i] = a[i];
    set.weights[3][i] = a[i] + half;
    set.weights[4][i] = a[i] + delta;
  }
  return set;
}

ScenarioSet nominal_scenario(const Instance& instance) {
  ScenarioSet set;
  set.label = ScenarioLabel::Custom;
  set.probs = {1.0};
  set.weights = {instance.nominal_weights};
  return set;
}

std::string serialize_scenarios(const ScenarioSet& set) {
  nlohmann::json j;
  j["label"] = std::string(to_string(set.label));
  j["delta"] = set.delta;
  j["probs"] = set.probs;
  j["weights"] = set.weights;
  return j.dump(1) + "\n";
}

ScenarioSet parse_scenarios(std::string_view text) {
  ScenarioSet set;
  try {
    const auto j = nlohmann::json::parse(text);
    set.label = parse_scenario_label(j.at("label").get<std::string>());
    set.delta = j.at("delta").get<double>();
    set.probs = j.at("probs").get<std::vector<double>>();
    set.weights = j.at("weights").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed scenario file: ") + e.what());
  }
  set.validate();
  return set;
}

ScenarioSet load_scenarios(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenarios(buf.str());
}

}  // namespace cctp
