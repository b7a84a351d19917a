#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "cctp/instance.hpp"

namespace cctp {

enum class ItemCorrelation { BoundedStronglyCorrelated, Uncorrelated };

struct GeneratorOptions {
  std::size_t cities = 51;
  ItemCorrelation correlation = ItemCorrelation::BoundedStronglyCorrelated;
  int capacity_factor = 1;  // capacity = factor * total weight / 11
  double grid = 100.0;      // coordinates drawn from [0, grid)
  std::uint64_t seed = 1;
  std::string name;
};

/// Synthetic benchmark-style instance with one item per non-depot city.
/// The renting rate is set so a reference solution (chained 2-opt tour,
/// greedy profit/weight packing) scores zero.
Instance generate_instance(const GeneratorOptions& options);

}  // namespace cctp
