#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cctp {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// A travelling thief instance in the CEIL_2D benchmark convention.
///
/// Cities are 0-based internally: city 0 is the depot where every tour starts
/// and ends (city 1 in the file format). Items are 0-based as well and
/// `item_city[i]` is never 0.
struct Instance {
  std::string name;
  std::string knapsack_type;
  std::vector<Point> coords;
  std::vector<double> profits;
  std::vector<double> nominal_weights;
  std::vector<std::size_t> item_city;
  double capacity = 0.0;
  double v_min = 0.0;
  double v_max = 0.0;
  double renting_rate = 0.0;

  std::size_t num_cities() const { return coords.size(); }
  std::size_t num_items() const { return profits.size(); }

  /// Speed lost per unit of carried weight.
  double nu() const { return (v_max - v_min) / capacity; }

  /// Ceiling of the Euclidean distance. Throws ContractViolation on a bad index.
  double distance(std::size_t i, std::size_t j) const;

  /// Throws InputError if any structural invariant is broken.
  void validate() const;
};

Instance parse_instance(std::istream& in);
Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);

/// Renders the instance in the benchmark text format.
std::string write_instance(const Instance& instance);

}  // namespace cctp
