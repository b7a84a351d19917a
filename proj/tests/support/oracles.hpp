#pragma once

// Reference implementations written straight from the model definitions.
// They share no code with the library beyond the plain data types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "cctp/evaluation.hpp"
#include "cctp/instance.hpp"
#include "cctp/scenarios.hpp"

namespace oracle {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(CCTP_TEST_DATA_DIR) / name;
}

inline double dist(const cctp::Instance& inst, std::size_t a, std::size_t b) {
  const double dx = inst.coords[a].x - inst.coords[b].x;
  const double dy = inst.coords[a].y - inst.coords[b].y;
  return std::ceil(std::sqrt(dx * dx + dy * dy));
}

struct Outcome {
  double z = -std::numeric_limits<double>::infinity();
  double rate = 0.0;
};

/// Travel time of a tour when the thief picks `plan` using per-item `weights`.
inline double travel_time(const cctp::Instance& inst, const std::vector<std::size_t>& tour,
                          const std::vector<bool>& plan, const std::vector<double>& weights) {
  const double nu = (inst.v_max - inst.v_min) / inst.capacity;
  double carried = 0.0, time = 0.0;
  for (std::size_t p = 0; p < tour.size(); ++p) {
    for (std::size_t j = 0; j < plan.size(); ++j) {
      if (plan[j] && inst.item_city[j] == tour[p]) carried += weights[j];
    }
    const std::size_t next = tour[(p + 1) % tour.size()];
    time += dist(inst, tour[p], next) / (inst.v_max - nu * carried);
  }
  return time;
}

inline Outcome expected(const cctp::Instance& inst, const cctp::ScenarioSet& set,
                        const std::vector<std::size_t>& tour, const std::vector<bool>& plan) {
  double profit = 0.0;
  for (std::size_t j = 0; j < plan.size(); ++j) profit += plan[j] ? inst.profits[j] : 0.0;
  Outcome out;
  double cost = 0.0;
  bool any = false;
  for (std::size_t s = 0; s < set.probs.size(); ++s) {
    double w = 0.0;
    for (std::size_t j = 0; j < plan.size(); ++j) w += plan[j] ? set.weights[s][j] : 0.0;
    if (w <= inst.capacity) {
      out.rate += set.probs[s];
      cost += set.probs[s] * travel_time(inst, tour, plan, set.weights[s]);
      any = true;
    }
  }
  if (any) out.z = profit - inst.renting_rate * cost;
  return out;
}

inline std::vector<bool> plan_from_mask(std::size_t m, unsigned long mask) {
  std::vector<bool> plan(m);
  for (std::size_t j = 0; j < m; ++j) plan[j] = (mask >> j) & 1UL;
  return plan;
}

struct Best {
  double z = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> tour;
  std::vector<bool> plan;
};

/// Best feasible plan on a fixed tour by enumerating all 2^m plans.
inline Best best_plan(const cctp::Instance& inst, const cctp::ScenarioSet& set,
                      const std::vector<std::size_t>& tour, double alpha) {
  Best best;
  const std::size_t m = inst.profits.size();
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    auto plan = plan_from_mask(m, mask);
    const Outcome o = expected(inst, set, tour, plan);
    if (o.rate >= alpha && o.z > best.z) best = {o.z, tour, plan};
  }
  return best;
}

/// Best feasible (tour, plan) over every tour starting at the depot.
inline Best best_solution(const cctp::Instance& inst, const cctp::ScenarioSet& set, double alpha) {
  std::vector<std::size_t> rest(inst.coords.size() - 1);
  std::iota(rest.begin(), rest.end(), std::size_t{1});
  Best best;
  do {
    std::vector<std::size_t> tour{0};
    tour.insert(tour.end(), rest.begin(), rest.end());
    Best b = best_plan(inst, set, tour, alpha);
    if (b.z > best.z) best = b;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

// Rank statistics by definition: rank(x) = #{y < x} + (#{y == x} + 1) / 2.

struct RankTest {
  double h = 0.0;
  double p = 1.0;
  std::vector<double> mean_rank;
  std::vector<std::vector<double>> z;
  std::vector<std::vector<double>> adjusted_p;
  // +1 row better, -1 row worse, 0 no difference.
  std::vector<std::vector<int>> verdict;
};

inline double chi2_sf_small(double x, int dof) {
  if (x <= 0) return 1.0;
  switch (dof) {
    case 1: return std::erfc(std::sqrt(x / 2));
    case 2: return std::exp(-x / 2);
    case 3: return std::erfc(std::sqrt(x / 2)) + std::sqrt(2 * x / M_PI) * std::exp(-x / 2);
    case 4: return std::exp(-x / 2) * (1 + x / 2);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

inline RankTest rank_test(const std::vector<std::vector<double>>& groups, double level) {
  std::vector<double> all;
  for (const auto& g : groups) all.insert(all.end(), g.begin(), g.end());
  const double n = static_cast<double>(all.size());
  auto rank_of = [&](double x) {
    double less = 0, equal = 0;
    for (double y : all) {
      less += y < x;
      equal += y == x;
    }
    return less + (equal + 1) / 2;
  };
  std::map<double, double> counts;
  for (double y : all) counts[y] += 1;
  double ties = 0;
  for (const auto& [v, t] : counts) ties += t * t * t - t;

  RankTest out;
  const std::size_t g = groups.size();
  for (const auto& grp : groups) {
    double s = 0;
    for (double x : grp) s += rank_of(x);
    out.mean_rank.push_back(s / grp.size());
  }
  const double c = 1 - ties / (n * n * n - n);
  double between = 0;
  for (std::size_t i = 0; i < g; ++i) {
    const double d = out.mean_rank[i] - (n + 1) / 2;
    between += groups[i].size() * d * d;
  }
  if (c > 0) {
    out.h = 12 / (n * (n + 1)) * between / c;
    out.p = chi2_sf_small(out.h, static_cast<int>(g - 1));
  }
  const bool gate = out.p < level;
  const double m = g * (g - 1) / 2.0;
  out.z.assign(g, std::vector<double>(g, 0));
  out.adjusted_p.assign(g, std::vector<double>(g, 1));
  out.verdict.assign(g, std::vector<int>(g, 0));
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) {
      if (i == j) continue;
      const double var = (n * (n + 1) / 12 - ties / (12 * (n - 1))) *
                         (1.0 / groups[i].size() + 1.0 / groups[j].size());
      const double z = var > 0 ? (out.mean_rank[i] - out.mean_rank[j]) / std::sqrt(var) : 0;
      out.z[i][j] = z;
      out.adjusted_p[i][j] = std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)) * m);
      if (gate && out.adjusted_p[i][j] < level) out.verdict[i][j] = z > 0 ? 1 : -1;
    }
  }
  return out;
}

}  // namespace oracle
