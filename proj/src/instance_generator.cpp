#include "cctp/instance_generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cctp/errors.hpp"
#include "cctp/evaluation.hpp"
#include "cctp/rng.hpp"
#include "cctp/tour_search.hpp"

namespace cctp {

Instance generate_instance(const GeneratorOptions& options) {
  if (options.cities < 2) throw ContractViolation("generator needs at least two cities");
  if (options.capacity_factor < 1) throw ContractViolation("capacity factor must be >= 1");

  Rng rng(options.seed);
  std::uniform_int_distribution<int> coord(0, static_cast<int>(options.grid) - 1);
  std::uniform_int_distribution<int> value(1, 1000);

  Instance inst;
  const bool bsc = options.correlation == ItemCorrelation::BoundedStronglyCorrelated;
  inst.knapsack_type = bsc ? "bounded strongly corr" : "uncorrelated";
  inst.name = options.name.empty()
                  ? std::string(bsc ? "bsc" : "unc") + "-" + std::to_string(options.cities)
                  : options.name;
  inst.coords.resize(options.cities);
  for (auto& p : inst.coords) p = Point{double(coord(rng)), double(coord(rng))};

  double total_weight = 0.0;
  for (std::size_t c = 1; c < options.cities; ++c) {
    const double w = value(rng);
    const double p = bsc ? w + 100.0 : double(value(rng));
    inst.profits.push_back(p);
    inst.nominal_weights.push_back(w);
    inst.item_city.push_back(c);
    total_weight += w;
  }
  inst.capacity = std::floor(options.capacity_factor * total_weight / 11.0);
  inst.v_min = 0.1;
  inst.v_max = 1.0;
  inst.renting_rate = 1.0;

  // Reference solution: chained 2-opt tour and greedy profit/weight packing.
  TourSearchConfig tc;
  tc.rng_seed = options.seed;
  const Tour tour = construct_tour(inst, tc);
  std::vector<std::size_t> order(inst.num_items());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.profits[a] / inst.nominal_weights[a] > inst.profits[b] / inst.nominal_weights[b];
  });
  PackingPlan plan(inst.num_items(), false);
  double load = 0.0;
  for (std::size_t j : order) {
    if (load + inst.nominal_weights[j] <= inst.capacity) {
      plan[j] = true;
      load += inst.nominal_weights[j];
    }
  }
  // With R = 1 the objective is g - T, so R = g / T zeroes it.
  const double g = total_profit(inst, plan);
  const double time = g - deterministic_objective(inst, inst.nominal_weights, Solution{tour, plan});
  inst.renting_rate = std::round(100.0 * g / time) / 100.0;
  return inst;
}

}  // namespace cctp
