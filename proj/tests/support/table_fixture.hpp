#pragma once

// Synthetic records for a bsc 51 comparison at alpha = 0.8:
// per set, (1+1) EA_ws with the given mean and population std, and constant
// S5_ws / C5_ws values. EA values sit on two points (28 high, 2 low), all
// below the other algorithms.

#include <cmath>
#include <string>
#include <vector>

#include "cctp/harness.hpp"

namespace fixture {

struct Row {
  std::string set;
  double ea_mean, ea_std, s5, c5;
};

inline const std::vector<Row>& bsc51_rows() {
  static const std::vector<Row> rows{
      {"A", 3642.27, 38.11, 3673.13, 3783.87},
      {"B", 3601.67, 42.75, 3613.85, 3613.85},
      {"C", 3695.67, 26.62, 3715.02, 3817.95},
  };
  return rows;
}

inline std::vector<cctp::RunRecord> bsc51_records() {
  std::vector<cctp::RunRecord> out;
  auto add = [&](const std::string& set, cctp::Algorithm a, int rep, double z) {
    cctp::RunRecord r;
    r.instance = "bsc 51";
    r.scenario_set = set;
    r.algorithm = a;
    r.alpha = 0.8;
    r.repetition = rep;
    r.expected_z = z;
    r.feasibility_rate = 0.8;
    out.push_back(r);
  };
  for (const Row& row : bsc51_rows()) {
    const double hi = row.ea_mean + row.ea_std * std::sqrt(2.0 / 28.0);
    const double lo = row.ea_mean - row.ea_std * std::sqrt(28.0 / 2.0);
    for (int i = 0; i < 30; ++i) {
      add(row.set, cctp::Algorithm::EA_ws, i, i < 28 ? hi : lo);
      add(row.set, cctp::Algorithm::S5_ws, i, row.s5);
      add(row.set, cctp::Algorithm::C5_ws, i, row.c5);
    }
  }
  return out;
}

}  // namespace fixture
