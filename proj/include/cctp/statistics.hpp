#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cctp {

struct SampleGroup {
  std::string label;
  std::vector<double> values;
};

struct KruskalWallisResult {
  double h = 0.0;
  double p = 1.0;
};

enum class Verdict { Better, Worse, Same };

char verdict_symbol(Verdict verdict);

struct PairwiseComparison {
  double z = 0.0;           // (mean rank row - mean rank col) / SE
  double raw_p = 1.0;       // two-sided
  double adjusted_p = 1.0;  // Bonferroni
};

struct ComparisonResult {
  KruskalWallisResult omnibus;
  bool omnibus_significant = false;
  std::vector<double> mean_ranks;
  // Indexed [row][col]; the diagonal is unused.
  std::vector<std::vector<PairwiseComparison>> pairwise;
  std::vector<std::vector<Verdict>> verdicts;
};

/// Midranks (1-based) of the pooled values of all groups, per group.
std::vector<std::vector<double>> midranks(std::span<const SampleGroup> groups);

/// H with tie correction and its chi-squared(g - 1) upper-tail p-value.
KruskalWallisResult kruskal_wallis(std::span<const SampleGroup> groups);

/// Dunn's pairwise test with Bonferroni-adjusted two-sided p-values, gated on
/// the Kruskal-Wallis omnibus test. A verdict is Better when the row group's
/// mean rank is significantly higher.
ComparisonResult dunn_bonferroni(std::span<const SampleGroup> groups, double significance = 0.05);

double chi_squared_survival(double x, double dof);
double normal_survival(double z);

}  // namespace cctp
