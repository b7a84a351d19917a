#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cctp/evaluation.hpp"
#include "cctp/instance.hpp"
#include "cctp/rng.hpp"
#include "cctp/scenarios.hpp"

namespace cctp {

struct TourSearchConfig {
  std::uint64_t rng_seed = 1;
  int max_chain_kicks = 50;
  bool dont_look_bits = true;
  // Fraction of a pipeline budget the kick loop may use.
  double time_share = 1.0;

  void validate() const;
};

/// Chained 2-opt: nearest neighbour from the depot, 2-opt to a local optimum,
/// then double-bridge kicks each followed by re-optimisation, keeping the
/// shortest tour. Neighbour lists are built once per instance.
class TourImprover {
 public:
  explicit TourImprover(const Instance& instance, std::size_t neighbours = 12);

  Tour nearest_neighbor() const;

  /// First-improvement 2-opt. With `dont_look_bits` only the cities in
  /// `seeds` start active (all cities when empty); otherwise full passes are
  /// repeated until no move improves.
  void two_opt(Tour& tour, bool dont_look_bits, const std::vector<std::size_t>& seeds = {}) const;

  const Instance& instance() const { return *instance_; }

  Tour construct(const TourSearchConfig& config,
                 std::optional<Deadline> deadline = std::nullopt) const;

 private:
  const Instance* instance_;
  std::vector<std::vector<std::size_t>> neighbours_;
};

Tour construct_tour(const Instance& instance, const TourSearchConfig& config);

/// Rotates a cyclic tour so it starts at the depot.
void rotate_to_depot(Tour& tour);

/// One pass of the pickup-delaying move: every city carrying a picked item is
/// tried at each later tour position and the single best strictly improving
/// move is applied. The plan is untouched, so C(y) is preserved.
Solution insertion_step(const Instance& instance, const ScenarioSet& scenarios,
                        const Solution& solution, double alpha);

}  // namespace cctp
