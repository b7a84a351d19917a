#include "cctp/tour_search.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "cctp/errors.hpp"

namespace cctp {

void TourSearchConfig::validate() const {
  if (max_chain_kicks < 0) throw ContractViolation("max_chain_kicks must be >= 0");
  if (!(time_share > 0.0 && time_share <= 1.0)) throw ContractViolation("time_share must be in (0, 1]");
}

TourImprover::TourImprover(const Instance& instance, std::size_t neighbours)
    : instance_(&instance) {
  const std::size_t n = instance.num_cities();
  const std::size_t k = std::min(neighbours, n - 1);
  neighbours_.resize(n);
  std::vector<std::size_t> others;
  for (std::size_t a = 0; a < n; ++a) {
    others.clear();
    for (std::size_t b = 0; b < n; ++b) {
      if (b != a) others.push_back(b);
    }
    std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(k), others.end(),
                      [&](std::size_t x, std::size_t y) {
                        const double dx = instance.distance(a, x), dy = instance.distance(a, y);
                        return dx < dy || (dx == dy && x < y);
                      });
    neighbours_[a].assign(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(k));
  }
}

Tour TourImprover::nearest_neighbor() const {
  const std::size_t n = instance_->num_cities();
  Tour tour{0};
  tour.reserve(n);
  std::vector<bool> visited(n, false);
  visited[0] = true;
  std::size_t current = 0;
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t best = n;
    double best_d = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      if (visited[c]) continue;
      const double d = instance_->distance(current, c);
      if (best == n || d < best_d) {
        best = c;
        best_d = d;
      }
    }
    visited[best] = true;
    tour.push_back(best);
    current = best;
  }
  return tour;
}

void TourImprover::two_opt(Tour& tour, bool dont_look_bits,
                           const std::vector<std::size_t>& seeds) const {
  const std::size_t n = tour.size();
  if (n < 4) return;
  const Instance& inst = *instance_;
  std::vector<std::size_t> pos(n);
  for (std::size_t p = 0; p < n; ++p) pos[tour[p]] = p;

  auto next = [&](std::size_t c) { return tour[(pos[c] + 1) % n]; };
  auto prev = [&](std::size_t c) { return tour[(pos[c] + n - 1) % n]; };

  // Reverses positions i..j walking forward; the complement is reversed
  // instead when shorter, which yields the same cycle.
  auto reverse = [&](std::size_t i, std::size_t j) {
    std::size_t len = (j + n - i) % n + 1;
    if (2 * len > n) {
      const std::size_t ni = (j + 1) % n;
      j = (i + n - 1) % n;
      i = ni;
      len = n - len;
    }
    for (std::size_t s = 0; s < len / 2; ++s) {
      std::swap(tour[i], tour[j]);
      pos[tour[i]] = i;
      pos[tour[j]] = j;
      i = (i + 1) % n;
      j = (j + n - 1) % n;
    }
  };

  // Applies the first improving move around `a`; fills `touched` on success.
  auto improve_city = [&](std::size_t a, std::array<std::size_t, 4>& touched) {
    for (int dir = 0; dir < 2; ++dir) {
      const std::size_t b = dir == 0 ? next(a) : prev(a);
      const double d_ab = inst.distance(a, b);
      for (std::size_t c : neighbours_[a]) {
        const double d_ac = inst.distance(a, c);
        if (d_ac >= d_ab) break;
        if (c == b) continue;
        const std::size_t d = dir == 0 ? next(c) : prev(c);
        if (d == a) continue;
        const double delta = d_ac + inst.distance(b, d) - d_ab - inst.distance(c, d);
        if (delta < -1e-9) {
          if (dir == 0) {
            reverse(pos[b], pos[c]);
          } else {
            reverse(pos[a], pos[d]);
          }
          touched = {a, b, c, d};
          return true;
        }
      }
    }
    return false;
  };

  std::array<std::size_t, 4> touched{};
  if (!dont_look_bits) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t a = 0; a < n; ++a) {
        while (improve_city(a, touched)) improved = true;
      }
    }
    return;
  }

  std::deque<std::size_t> active;
  std::vector<bool> queued(n, false);
  auto push = [&](std::size_t c) {
    if (!queued[c]) {
      queued[c] = true;
      active.push_back(c);
    }
  };
  if (seeds.empty()) {
    for (std::size_t c : tour) push(c);
  } else {
    for (std::size_t c : seeds) push(c);
  }
  while (!active.empty()) {
    const std::size_t a = active.front();
    active.pop_front();
    queued[a] = false;
    if (improve_city(a, touched)) {
      for (std::size_t c : touched) push(c);
    }
  }
}

void rotate_to_depot(Tour& tour) {
  const auto it = std::find(tour.begin(), tour.end(), std::size_t{0});
  std::rotate(tour.begin(), it, tour.end());
}

Tour TourImprover::construct(const TourSearchConfig& config, std::optional<Deadline> deadline) const {
  config.validate();
  Tour best = nearest_neighbor();
  two_opt(best, config.dont_look_bits);
  rotate_to_depot(best);
  const std::size_t n = best.size();
  if (n < 8) return best;

  double best_length = tour_length(*instance_, best);
  Rng rng(config.rng_seed);
  std::uniform_int_distribution<std::size_t> cut(1, n - 1);
  for (int kick = 0; kick < config.max_chain_kicks; ++kick) {
    if (expired(deadline)) break;
    std::array<std::size_t, 3> p{};
    do {
      p = {cut(rng), cut(rng), cut(rng)};
      std::sort(p.begin(), p.end());
    } while (p[0] == p[1] || p[1] == p[2]);

    Tour candidate;
    candidate.reserve(n);
    const auto b = best.begin();
    candidate.insert(candidate.end(), b, b + static_cast<std::ptrdiff_t>(p[0]));
    candidate.insert(candidate.end(), b + static_cast<std::ptrdiff_t>(p[1]), b + static_cast<std::ptrdiff_t>(p[2]));
    candidate.insert(candidate.end(), b + static_cast<std::ptrdiff_t>(p[0]), b + static_cast<std::ptrdiff_t>(p[1]));
    candidate.insert(candidate.end(), b + static_cast<std::ptrdiff_t>(p[2]), best.end());

    const std::vector<std::size_t> seeds{best[p[0] - 1], best[p[0]], best[p[1] - 1], best[p[1]],
                                         best[p[2] - 1], best[p[2]], best[n - 1],     best[0]};
    two_opt(candidate, config.dont_look_bits, seeds);
    const double length = tour_length(*instance_, candidate);
    if (length < best_length) {
      rotate_to_depot(candidate);
      best = std::move(candidate);
      best_length = length;
    }
  }
  return best;
}

Tour construct_tour(const Instance& instance, const TourSearchConfig& config) {
  if (instance.num_cities() < 2) throw ContractViolation("construct_tour needs at least two cities");
  return TourImprover(instance).construct(config);
}

Solution insertion_step(const Instance& instance, const ScenarioSet& scenarios,
                        const Solution& solution, double alpha) {
  const Evaluation before = evaluate(instance, scenarios, solution, alpha);
  if (!before.feasible() || before.expected_z == kInfeasibleObjective) return solution;

  const Tour& tour = solution.tour;
  const std::size_t n = tour.size();
  const double nu = instance.nu();
  const double v_max = instance.v_max;
  auto speed = [&](double carried) { return v_max - nu * carried; };

  std::vector<bool> holds_pick(n, false);
  for (std::size_t j = 0; j < solution.plan.size(); ++j) {
    if (solution.plan[j]) holds_pick[instance.item_city[j]] = true;
  }

  // Only scenarios the plan fits in contribute to the expected objective.
  std::vector<std::size_t> active;
  for (std::size_t s = 0; s < scenarios.k(); ++s) {
    if (before.per_scenario_feasible[s]) active.push_back(s);
  }
  const std::size_t f = active.size();
  std::vector<std::vector<double>> city_weight(f, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> cumulative(f, std::vector<double>(n, 0.0));
  for (std::size_t a = 0; a < f; ++a) {
    const auto& w = scenarios.weights[active[a]];
    for (std::size_t j = 0; j < solution.plan.size(); ++j) {
      if (solution.plan[j]) city_weight[a][instance.item_city[j]] += w[j];
    }
    double carried = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      carried += city_weight[a][tour[p]];
      cumulative[a][p] = carried;
    }
  }
  std::vector<double> leg(n);
  for (std::size_t p = 0; p < n; ++p) leg[p] = instance.distance(tour[p], tour[(p + 1) % n]);

  double best_gain = 0.0;
  std::size_t best_from = 0, best_to = 0;
  std::vector<double> base(f), shifted(f);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::size_t city = tour[i];
    if (!holds_pick[city]) continue;
    const std::size_t before_city = tour[i - 1];
    const std::size_t after_city = tour[i + 1];
    for (std::size_t a = 0; a < f; ++a) {
      const double w_prev = cumulative[a][i - 1];
      base[a] = instance.distance(before_city, after_city) / speed(w_prev) -
                leg[i - 1] / speed(w_prev) - leg[i] / speed(cumulative[a][i]);
      shifted[a] = 0.0;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t at = tour[j];
      const std::size_t following = tour[(j + 1) % n];
      double delta_time = 0.0;
      for (std::size_t a = 0; a < f; ++a) {
        const double wc = city_weight[a][city];
        if (j > i + 1) {
          const std::size_t q = j - 1;
          shifted[a] += leg[q] / speed(cumulative[a][q] - wc) - leg[q] / speed(cumulative[a][q]);
        }
        const double w_j = cumulative[a][j];
        const double tail = instance.distance(at, city) / speed(w_j - wc) +
                            instance.distance(city, following) / speed(w_j) - leg[j] / speed(w_j);
        delta_time += scenarios.probs[active[a]] * (base[a] + shifted[a] + tail);
      }
      const double gain = -instance.renting_rate * delta_time;
      if (gain > best_gain || (gain == best_gain && gain > 0.0 && j < best_to)) {
        best_gain = gain;
        best_from = i;
        best_to = j;
      }
    }
  }
  if (best_gain <= 0.0) return solution;

  Solution moved = solution;
  const std::size_t city = moved.tour[best_from];
  moved.tour.erase(moved.tour.begin() + static_cast<std::ptrdiff_t>(best_from));
  moved.tour.insert(moved.tour.begin() + static_cast<std::ptrdiff_t>(best_to), city);
  const Evaluation after = evaluate(instance, scenarios, moved, alpha);
  return after.expected_z > before.expected_z ? moved : solution;
}

}  // namespace cctp
