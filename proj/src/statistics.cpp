#include "cctp/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "cctp/errors.hpp"

namespace cctp {
namespace {

void check_groups(std::span<const SampleGroup> groups) {
  if (groups.size() < 2) throw ContractViolation("rank tests need at least two groups");
  for (const auto& g : groups) {
    if (g.values.empty()) throw ContractViolation("group '" + g.label + "' is empty");
  }
}

struct Pooled {
  std::vector<std::vector<double>> ranks;
  double n = 0.0;
  double tie_sum = 0.0;  // sum of t^3 - t over tie blocks
};

Pooled pool(std::span<const SampleGroup> groups) {
  struct Entry {
    double value;
    std::size_t group;
    std::size_t index;
  };
  std::vector<Entry> all;
  Pooled out;
  out.ranks.resize(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    out.ranks[g].resize(groups[g].values.size());
    for (std::size_t i = 0; i < groups[g].values.size(); ++i) {
      all.push_back({groups[g].values[i], g, i});
    }
  }
  std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) { return a.value < b.value; });
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i;
    while (j < all.size() && all[j].value == all[i].value) ++j;
    const double rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
    for (std::size_t q = i; q < j; ++q) out.ranks[all[q].group][all[q].index] = rank;
    const double t = static_cast<double>(j - i);
    out.tie_sum += t * t * t - t;
    i = j;
  }
  out.n = static_cast<double>(all.size());
  return out;
}

}  // namespace

char verdict_symbol(Verdict verdict) {
  switch (verdict) {
    case Verdict::Better: return '+';
    case Verdict::Worse: return '-';
    case Verdict::Same: return '*';
  }
  return '*';
}

double chi_squared_survival(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

double normal_survival(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

std::vector<std::vector<double>> midranks(std::span<const SampleGroup> groups) {
  return pool(groups).ranks;
}

KruskalWallisResult kruskal_wallis(std::span<const SampleGroup> groups) {
  check_groups(groups);
  const Pooled pooled = pool(groups);
  const double n = pooled.n;
  const double correction = 1.0 - pooled.tie_sum / (n * n * n - n);
  if (!(correction > 0.0)) return {0.0, 1.0};

  double sum = 0.0;
  for (const auto& r : pooled.ranks) {
    const double rank_sum = std::accumulate(r.begin(), r.end(), 0.0);
    sum += rank_sum * rank_sum / static_cast<double>(r.size());
  }
  double h = (12.0 / (n * (n + 1.0)) * sum - 3.0 * (n + 1.0)) / correction;
  h = std::max(h, 0.0);
  return {h, chi_squared_survival(h, static_cast<double>(groups.size() - 1))};
}

ComparisonResult dunn_bonferroni(std::span<const SampleGroup> groups, double significance) {
  check_groups(groups);
  if (!(significance > 0.0 && significance < 1.0)) {
    throw ContractViolation("significance must be in (0, 1)");
  }
  const std::size_t g = groups.size();
  const Pooled pooled = pool(groups);
  const double n = pooled.n;

  ComparisonResult result;
  result.omnibus = kruskal_wallis(groups);
  result.omnibus_significant = result.omnibus.p < significance;
  result.mean_ranks.resize(g);
  for (std::size_t i = 0; i < g; ++i) {
    const auto& r = pooled.ranks[i];
    result.mean_ranks[i] = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
  }

  const double pairs = static_cast<double>(g * (g - 1) / 2);
  const double spread = n * (n + 1.0) / 12.0 - pooled.tie_sum / (12.0 * (n - 1.0));
  result.pairwise.assign(g, std::vector<PairwiseComparison>(g));
  result.verdicts.assign(g, std::vector<Verdict>(g, Verdict::Same));
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) {
      if (i == j) continue;
      PairwiseComparison& pc = result.pairwise[i][j];
      const double se2 = spread * (1.0 / static_cast<double>(groups[i].values.size()) +
                                   1.0 / static_cast<double>(groups[j].values.size()));
      const double diff = result.mean_ranks[i] - result.mean_ranks[j];
      if (se2 > 0.0 && diff != 0.0) {
        pc.z = diff / std::sqrt(se2);
        pc.raw_p = std::min(1.0, 2.0 * normal_survival(std::abs(pc.z)));
      }
      pc.adjusted_p = std::min(1.0, pc.raw_p * pairs);
      if (result.omnibus_significant && pc.adjusted_p < significance) {
        result.verdicts[i][j] = diff > 0.0 ? Verdict::Better : Verdict::Worse;
      }
    }
  }
  return result;
}

}  // namespace cctp
