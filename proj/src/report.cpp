#include "cctp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "cctp/errors.hpp"
#include "cctp/statistics.hpp"

namespace cctp {
using nlohmann::json;

namespace {

constexpr Algorithm kAllAlgorithms[] = {Algorithm::EA_ws, Algorithm::S5_ws, Algorithm::C5_ws};

std::string two_decimals(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  return s == "-0.00" ? "0.00" : s;
}

std::string display_name(Algorithm a) {
  switch (a) {
    case Algorithm::EA_ws: return "(1+1) EA_ws (1)";
    case Algorithm::S5_ws: return "S5_ws (2)";
    case Algorithm::C5_ws: return "C5_ws (3)";
  }
  return "?";
}

std::string alpha_text(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return buf;
}

}  // namespace

std::vector<CellSummary> summarize(const std::vector<RunRecord>& records, double significance) {
  using GroupKey = std::tuple<std::string, std::string, double>;
  std::map<GroupKey, std::map<int, std::vector<double>>> groups;
  for (const auto& r : records) {
    groups[{r.instance, r.scenario_set, r.alpha}][algorithm_index(r.algorithm)].push_back(r.expected_z);
  }

  std::vector<CellSummary> out;
  for (const auto& [key, by_alg] : groups) {
    std::vector<SampleGroup> samples;
    std::vector<int> present;
    for (const auto& [idx, values] : by_alg) {
      samples.push_back({std::to_string(idx), values});
      present.push_back(idx);
    }
    std::optional<ComparisonResult> cmp;
    if (samples.size() >= 2) cmp = dunn_bonferroni(samples, significance);

    for (std::size_t row = 0; row < samples.size(); ++row) {
      const auto& v = samples[row].values;
      CellSummary c;
      c.instance = std::get<0>(key);
      c.scenario_set = std::get<1>(key);
      c.alpha = std::get<2>(key);
      c.algorithm = kAllAlgorithms[present[row] - 1];
      c.runs = v.size();
      double sum = 0.0;
      for (double x : v) sum += x;
      c.mean = sum / static_cast<double>(v.size());
      double sq = 0.0;
      for (double x : v) sq += (x - c.mean) * (x - c.mean);
      c.stddev = std::sqrt(sq / static_cast<double>(v.size()));

      std::string stat;
      for (Algorithm other : kAllAlgorithms) {
        const int j = algorithm_index(other);
        if (j == present[row]) continue;
        if (!stat.empty()) stat += ' ';
        auto it = std::find(present.begin(), present.end(), j);
        if (it == present.end() || !cmp) {
          stat += std::to_string(j) + "(n/a)";
        } else {
          const auto col = static_cast<std::size_t>(it - present.begin());
          stat += std::to_string(j) + "(" + verdict_symbol(cmp->verdicts[row][col]) + ")";
        }
      }
      c.stat = std::move(stat);
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::string format_cell(double mean, double stddev, const std::string& stat) {
  return two_decimals(mean) + " | " + two_decimals(stddev) + " | " + stat;
}

std::string render_text(const std::vector<CellSummary>& cells) {
  // One block per alpha; rows are (instance, algorithm), columns are scenario sets.
  std::map<double, std::vector<const CellSummary*>> by_alpha;
  for (const auto& c : cells) by_alpha[c.alpha].push_back(&c);

  std::ostringstream os;
  bool first_block = true;
  for (const auto& [alpha, block] : by_alpha) {
    std::vector<std::string> sets;
    std::vector<std::pair<std::string, int>> rows;
    for (const auto* c : block) {
      if (std::find(sets.begin(), sets.end(), c->scenario_set) == sets.end()) sets.push_back(c->scenario_set);
      std::pair<std::string, int> row{c->instance, algorithm_index(c->algorithm)};
      if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
    }
    std::sort(sets.begin(), sets.end());
    std::sort(rows.begin(), rows.end());

    std::vector<std::vector<std::string>> table;
    std::vector<std::string> header{"Instance", "Algorithm"};
    for (const auto& s : sets) header.push_back("Set " + s + ": mean | std | stat");
    table.push_back(header);
    for (const auto& [inst, idx] : rows) {
      std::vector<std::string> line{inst, display_name(kAllAlgorithms[idx - 1])};
      for (const auto& s : sets) {
        auto it = std::find_if(block.begin(), block.end(), [&](const CellSummary* c) {
          return c->instance == inst && algorithm_index(c->algorithm) == idx && c->scenario_set == s;
        });
        line.push_back(it == block.end() ? "-" : format_cell((*it)->mean, (*it)->stddev, (*it)->stat));
      }
      table.push_back(std::move(line));
    }

    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& line : table) {
      for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    }
    if (!first_block) os << '\n';
    first_block = false;
    os << "alpha = " << alpha_text(alpha) << '\n';
    for (const auto& line : table) {
      std::string text;
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (i) text += " || ";
        text += line[i];
        if (i + 1 < line.size()) text.append(width[i] - line[i].size(), ' ');
      }
      os << text << '\n';
    }
  }
  return os.str();
}

std::string render_csv(const std::vector<CellSummary>& cells) {
  std::ostringstream os;
  os << "instance,scenario_set,alpha,algorithm,runs,mean,std,stat\n";
  for (const auto& c : cells) {
    os << c.instance << ',' << c.scenario_set << ',' << alpha_text(c.alpha) << ','
       << to_string(c.algorithm) << ',' << c.runs << ',' << two_decimals(c.mean) << ','
       << two_decimals(c.stddev) << ',' << c.stat << '\n';
  }
  return os.str();
}

std::string render_json(const std::vector<CellSummary>& cells) {
  json arr = json::array();
  for (const auto& c : cells) {
    arr.push_back({{"instance", c.instance},
                   {"scenario_set", c.scenario_set},
                   {"alpha", c.alpha},
                   {"algorithm", std::string(to_string(c.algorithm))},
                   {"runs", c.runs},
                   {"mean", std::isfinite(c.mean) ? json(c.mean) : json(nullptr)},
                   {"std", std::isfinite(c.stddev) ? json(c.stddev) : json(nullptr)},
                   {"stat", c.stat},
                   {"cell", format_cell(c.mean, c.stddev, c.stat)}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace cctp
