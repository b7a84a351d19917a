#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "cctp/errors.hpp"
#include "cctp/harness.hpp"
#include "oracles.hpp"

using namespace cctp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("cctp_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ExperimentConfig toy_config(const fs::path& out) {
  ExperimentConfig c;
  c.instances = {oracle::data_path("toy4.ttp")};
  c.scenario_labels = {"A"};
  c.delta = 0.5;
  c.alphas = {0.8};
  c.algorithms = {Algorithm::S5_ws};
  c.repetitions = 3;
  c.budget_seconds = 10;
  c.max_restarts = 3;
  c.ea_max_iterations = 2000;
  c.master_seed = 7;
  c.output_dir = out;
  c.workers = 2;
  return c;
}

std::multiset<double> zs(const std::vector<RunRecord>& rs) {
  std::multiset<double> out;
  for (const auto& r : rs) out.insert(r.expected_z);
  return out;
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Harness, CellCount) {
  TempDir dir("count");
  const auto out = run_experiment(toy_config(dir.path));
  EXPECT_EQ(out.records.size(), 3u);
  EXPECT_EQ(out.executed, 3u);
  EXPECT_EQ(out.skipped, 0u);
  EXPECT_TRUE(out.errors.empty());
  EXPECT_EQ(lines_of(dir.path / kRecordsFile).size(), 3u);
  for (const auto& r : out.records) {
    EXPECT_EQ(r.instance, "toy4");
    EXPECT_EQ(r.scenario_set, "A");
    EXPECT_TRUE(r.feasibility_rate >= r.alpha || r.fallback_empty_plan);
    EXPECT_EQ(r.plan_weight_per_scenario.size(), 5u);
    EXPECT_EQ(r.tour.front(), 0u);
  }
}

TEST(Harness, FullGridAndResume) {
  TempDir dir("resume");
  ExperimentConfig c = toy_config(dir.path);
  c.scenario_labels = {"A", "B", "C"};
  c.alphas = {0.8, 0.9};
  c.algorithms = {Algorithm::EA_ws, Algorithm::S5_ws, Algorithm::C5_ws};
  c.repetitions = 2;
  const auto first = run_experiment(c);
  ASSERT_EQ(first.records.size(), 3u * 3 * 2 * 2);

  // Drop every other line and rerun: only the missing cells execute.
  auto lines = lines_of(dir.path / kRecordsFile);
  {
    std::ofstream out(dir.path / kRecordsFile, std::ios::trunc);
    for (std::size_t i = 0; i < lines.size(); i += 2) out << lines[i] << '\n';
  }
  const auto second = run_experiment(c);
  EXPECT_EQ(second.executed, lines.size() / 2);
  EXPECT_EQ(second.skipped, (lines.size() + 1) / 2);
  EXPECT_EQ(second.records.size(), first.records.size());
  EXPECT_EQ(lines_of(dir.path / kRecordsFile).size(), lines.size());
  EXPECT_EQ(zs(first.records), zs(second.records));

  // A further rerun does nothing and never duplicates.
  const auto third = run_experiment(c);
  EXPECT_EQ(third.executed, 0u);
  EXPECT_EQ(third.records.size(), first.records.size());
}

TEST(Harness, TornLastLineIsRedone) {
  TempDir dir("torn");
  const auto c = toy_config(dir.path);
  run_experiment(c);
  auto lines = lines_of(dir.path / kRecordsFile);
  {
    std::ofstream out(dir.path / kRecordsFile, std::ios::trunc);
    out << lines[0] << '\n' << lines[1] << '\n' << lines[2].substr(0, 20);
  }
  const auto again = run_experiment(c);
  EXPECT_EQ(again.executed, 1u);
  EXPECT_EQ(lines_of(dir.path / kRecordsFile).size(), 3u);
  EXPECT_EQ(load_records(dir.path).size(), 3u);
}

TEST(Harness, SameSeedSameResults) {
  TempDir a("det_a"), b("det_b");
  ExperimentConfig ca = toy_config(a.path);
  ca.algorithms = {Algorithm::EA_ws, Algorithm::C5_ws};
  ExperimentConfig cb = ca;
  cb.output_dir = b.path;
  cb.workers = 1;
  EXPECT_EQ(zs(run_experiment(ca).records), zs(run_experiment(cb).records));
}

TEST(Harness, UnreadableInstanceIsSkipped) {
  TempDir dir("bad");
  ExperimentConfig c = toy_config(dir.path);
  c.instances.push_back(dir.path / "missing.ttp");
  std::ostringstream log;
  const auto out = run_experiment(c, &log);
  EXPECT_EQ(out.records.size(), 3u);
  ASSERT_EQ(out.errors.size(), 1u);
  EXPECT_NE(log.str().find("missing.ttp"), std::string::npos);
}

TEST(Harness, CellSeedsDiffer) {
  const auto s = cell_seed(1, "x", "A", Algorithm::S5_ws, 0.8, 0);
  EXPECT_EQ(s, cell_seed(1, "x", "A", Algorithm::S5_ws, 0.8, 0));
  EXPECT_NE(s, cell_seed(2, "x", "A", Algorithm::S5_ws, 0.8, 0));
  EXPECT_NE(s, cell_seed(1, "y", "A", Algorithm::S5_ws, 0.8, 0));
  EXPECT_NE(s, cell_seed(1, "x", "B", Algorithm::S5_ws, 0.8, 0));
  EXPECT_NE(s, cell_seed(1, "x", "A", Algorithm::C5_ws, 0.8, 0));
  EXPECT_NE(s, cell_seed(1, "x", "A", Algorithm::S5_ws, 0.9, 0));
  EXPECT_NE(s, cell_seed(1, "x", "A", Algorithm::S5_ws, 0.8, 1));
}

TEST(Harness, RecordJsonRoundTrip) {
  RunRecord r;
  r.instance = "i";
  r.scenario_set = "B";
  r.algorithm = Algorithm::C5_ws;
  r.alpha = 0.9;
  r.repetition = 4;
  r.seed = 0xffffffffffffffffULL;
  r.expected_z = 12.5;
  r.feasibility_rate = 0.9;
  r.plan_weight_per_scenario = {1, 2};
  r.tour = {0, 2, 1};
  r.picked = {0, 3};
  const auto j = r.to_json();
  EXPECT_EQ(j["tour"], nlohmann::json::parse("[1,3,2]"));
  EXPECT_EQ(j["picked"], nlohmann::json::parse("[1,4]"));
  const RunRecord b = RunRecord::from_json(j);
  EXPECT_EQ(b.seed, r.seed);
  EXPECT_EQ(b.tour, r.tour);
  EXPECT_EQ(b.picked, r.picked);
  EXPECT_EQ(b.expected_z, r.expected_z);
  EXPECT_EQ(b.algorithm, r.algorithm);

  r.expected_z = kInfeasibleObjective;
  EXPECT_TRUE(r.to_json()["expected_z"].is_null());
  EXPECT_EQ(RunRecord::from_json(r.to_json()).expected_z, kInfeasibleObjective);
}

TEST(Harness, ConfigParsing) {
  const auto j = nlohmann::json::parse(R"({
    "instances": ["a.ttp"], "alphas": [0.9], "algorithms": ["s5", "C5_ws"],
    "repetitions": 10, "budget_seconds": 60, "master_seed": 3, "output_dir": "out",
    "max_restarts": 50})");
  const auto c = ExperimentConfig::from_json(j, "/base");
  EXPECT_EQ(c.instances[0], fs::path("/base/a.ttp"));
  EXPECT_EQ(c.output_dir, fs::path("/base/out"));
  EXPECT_EQ(c.scenario_labels, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(c.delta, 20);
  EXPECT_EQ(c.algorithms.size(), 2u);
  EXPECT_EQ(*c.max_restarts, 50u);
  const auto back = ExperimentConfig::from_json(c.to_json());
  EXPECT_EQ(back.instances, c.instances);
  EXPECT_EQ(back.alphas, c.alphas);

  EXPECT_THROW(ExperimentConfig::from_json(nlohmann::json::parse(R"({"instances": []})")), InputError);
  EXPECT_THROW(ExperimentConfig::from_json(nlohmann::json::parse(R"({"instances": ["a"], "repetitions": 0})")),
               InputError);
  EXPECT_THROW(ExperimentConfig::from_json(nlohmann::json::parse(R"({"instances": ["a"], "alphas": [1.2]})")),
               InputError);
  EXPECT_THROW(ExperimentConfig::from_json(nlohmann::json::parse(R"({"instances": ["a"], "colour": 1})")),
               InputError);
  EXPECT_THROW(ExperimentConfig::from_json(nlohmann::json::parse(R"({"instances": ["a"], "algorithms": ["x"]})")),
               InputError);
}

TEST(Harness, ScenarioFilesAsSets) {
  TempDir dir("files");
  const Instance inst = load_instance(oracle::data_path("toy4.ttp"));
  {
    std::ofstream out(dir.path / "mine.json");
    out << serialize_scenarios(generate_scenarios(inst, 0.25, ScenarioLabel::B));
  }
  ExperimentConfig c = toy_config(dir.path / "out");
  c.scenario_labels.clear();
  c.scenario_files = {dir.path / "mine.json"};
  const auto out = run_experiment(c);
  ASSERT_EQ(out.records.size(), 3u);
  EXPECT_EQ(out.records[0].scenario_set, "mine");
}
