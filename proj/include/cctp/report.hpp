#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cctp/harness.hpp"

namespace cctp {

struct CellSummary {
  std::string instance;
  std::string scenario_set;
  double alpha = 0.0;
  Algorithm algorithm = Algorithm::S5_ws;
  std::size_t runs = 0;
  double mean = 0.0;
  double stddev = 0.0;  // population
  std::string stat;     // e.g. "2(-) 3(-)"
};

std::vector<CellSummary> summarize(const std::vector<RunRecord>& records,
                                   double significance = 0.05);

/// "mean | std | stat" with two decimals.
std::string format_cell(double mean, double stddev, const std::string& stat);

std::string render_text(const std::vector<CellSummary>& cells);
std::string render_csv(const std::vector<CellSummary>& cells);
std::string render_json(const std::vector<CellSummary>& cells);

}  // namespace cctp
