#include "cctp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "cctp/errors.hpp"
#include "cctp/instance.hpp"
#include "cctp/rng.hpp"
#include "cctp/scenarios.hpp"

namespace cctp {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string alpha_key(double alpha) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, alpha);
  return std::string(buf, end);
}

using CellKey = std::tuple<std::string, std::string, std::string, std::string, int>;

CellKey key_of(const RunRecord& r) {
  return {r.instance, r.scenario_set, std::string(to_string(r.algorithm)), alpha_key(r.alpha),
          r.repetition};
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  return p.is_relative() && !base.empty() ? base / p : p;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (instances.empty()) throw InputError("config: no instances");
  if (algorithms.empty()) throw InputError("config: no algorithms");
  if (alphas.empty()) throw InputError("config: no alphas");
  if (scenario_labels.empty() && scenario_files.empty()) throw InputError("config: no scenario sets");
  if (repetitions < 1) throw InputError("config: repetitions must be >= 1");
  if (!(budget_seconds > 0.0)) throw InputError("config: budget_seconds must be positive");
  if (!(delta >= 0.0)) throw InputError("config: delta must be non-negative");
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 1.0)) throw InputError("config: alpha " + alpha_key(a) + " outside (0, 1]");
  }
  for (const auto& l : scenario_labels) {
    if (l != "A" && l != "B" && l != "C") throw InputError("config: unknown scenario set '" + l + "'");
  }
  if (max_restarts && *max_restarts == 0) throw InputError("config: max_restarts must be >= 1");
  if (ea_max_iterations && *ea_max_iterations == 0) {
    throw InputError("config: ea_max_iterations must be >= 1");
  }
}

ExperimentConfig ExperimentConfig::from_json(const json& j, const fs::path& base_dir) {
  static const std::set<std::string> known{
      "instances", "scenario_sets", "scenario_files", "delta", "alphas", "algorithms",
      "repetitions", "budget_seconds", "master_seed", "output_dir", "max_restarts",
      "ea_max_iterations", "workers"};
  if (!j.is_object()) throw InputError("config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw InputError("config: unknown key '" + key + "'");
  }
  ExperimentConfig c;
  try {
    for (const auto& p : j.at("instances")) c.instances.push_back(resolve(p.get<std::string>(), base_dir));
    if (j.contains("scenario_sets")) c.scenario_labels = j.at("scenario_sets").get<std::vector<std::string>>();
    if (j.contains("scenario_files")) {
      for (const auto& p : j.at("scenario_files")) {
        c.scenario_files.push_back(resolve(p.get<std::string>(), base_dir));
      }
      if (!j.contains("scenario_sets")) c.scenario_labels.clear();
    }
    c.delta = get_or(j, "delta", c.delta);
    if (j.contains("alphas")) c.alphas = j.at("alphas").get<std::vector<double>>();
    if (j.contains("algorithms")) {
      c.algorithms.clear();
      for (const auto& a : j.at("algorithms")) c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    c.repetitions = get_or(j, "repetitions", c.repetitions);
    c.budget_seconds = get_or(j, "budget_seconds", c.budget_seconds);
    c.master_seed = get_or(j, "master_seed", c.master_seed);
    c.output_dir = resolve(get_or<std::string>(j, "output_dir", c.output_dir.string()), base_dir);
    if (j.contains("max_restarts") && !j.at("max_restarts").is_null()) {
      c.max_restarts = j.at("max_restarts").get<std::size_t>();
    }
    if (j.contains("ea_max_iterations") && !j.at("ea_max_iterations").is_null()) {
      c.ea_max_iterations = j.at("ea_max_iterations").get<std::uint64_t>();
    }
    c.workers = get_or(j, "workers", c.workers);
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  } catch (const ContractViolation& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

json ExperimentConfig::to_json() const {
  json j;
  j["instances"] = json::array();
  for (const auto& p : instances) j["instances"].push_back(p.string());
  j["scenario_sets"] = scenario_labels;
  j["scenario_files"] = json::array();
  for (const auto& p : scenario_files) j["scenario_files"].push_back(p.string());
  j["delta"] = delta;
  j["alphas"] = alphas;
  j["algorithms"] = json::array();
  for (Algorithm a : algorithms) j["algorithms"].push_back(std::string(to_string(a)));
  j["repetitions"] = repetitions;
  j["budget_seconds"] = budget_seconds;
  j["master_seed"] = master_seed;
  j["output_dir"] = output_dir.string();
  j["max_restarts"] = max_restarts ? json(*max_restarts) : json(nullptr);
  j["ea_max_iterations"] = ea_max_iterations ? json(*ea_max_iterations) : json(nullptr);
  j["workers"] = workers;
  return j;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("config " + path.string() + ": " + e.what());
  }
  return ExperimentConfig::from_json(j, path.parent_path());
}

json RunRecord::to_json() const {
  json j;
  j["instance"] = instance;
  j["scenario_set"] = scenario_set;
  j["algorithm"] = std::string(to_string(algorithm));
  j["alpha"] = alpha;
  j["repetition"] = repetition;
  j["seed"] = seed;
  j["expected_z"] = std::isfinite(expected_z) ? json(expected_z) : json(nullptr);
  j["feasibility_rate"] = feasibility_rate;
  j["plan_weight_per_scenario"] = plan_weight_per_scenario;
  j["wall_clock_seconds"] = wall_clock_seconds;
  j["iterations"] = iterations;
  j["restarts"] = restarts;
  j["stopped_by_clock"] = stopped_by_clock;
  j["fallback_empty_plan"] = fallback_empty_plan;
  json t = json::array();
  for (auto c : tour) t.push_back(c + 1);
  j["tour"] = std::move(t);
  json p = json::array();
  for (auto i : picked) p.push_back(i + 1);
  j["picked"] = std::move(p);
  return j;
}

RunRecord RunRecord::from_json(const json& j) {
  RunRecord r;
  try {
    r.instance = j.at("instance").get<std::string>();
    r.scenario_set = j.at("scenario_set").get<std::string>();
    r.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    r.alpha = j.at("alpha").get<double>();
    r.repetition = j.at("repetition").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    const json& z = j.at("expected_z");
    r.expected_z = z.is_null() ? kInfeasibleObjective : z.get<double>();
    r.feasibility_rate = j.at("feasibility_rate").get<double>();
    r.plan_weight_per_scenario = get_or(j, "plan_weight_per_scenario", std::vector<double>{});
    r.wall_clock_seconds = get_or(j, "wall_clock_seconds", 0.0);
    r.iterations = get_or<std::uint64_t>(j, "iterations", 0);
    r.restarts = get_or<std::size_t>(j, "restarts", 0);
    r.stopped_by_clock = get_or(j, "stopped_by_clock", false);
    r.fallback_empty_plan = get_or(j, "fallback_empty_plan", false);
    for (auto c : get_or(j, "tour", std::vector<std::size_t>{})) {
      if (c == 0) throw InputError("record: tour cities are 1-based");
      r.tour.push_back(c - 1);
    }
    for (auto i : get_or(j, "picked", std::vector<std::size_t>{})) {
      if (i == 0) throw InputError("record: item indices are 1-based");
      r.picked.push_back(i - 1);
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("record: ") + e.what());
  } catch (const ContractViolation& e) {
    throw InputError(std::string("record: ") + e.what());
  }
  return r;
}

std::uint64_t cell_seed(std::uint64_t master_seed, const std::string& instance,
                        const std::string& scenario_set, Algorithm algorithm, double alpha,
                        int repetition) {
  std::uint64_t h = hash_combine(master_seed, instance);
  h = hash_combine(h, scenario_set);
  h = hash_combine(h, to_string(algorithm));
  h = hash_combine(h, alpha_key(alpha));
  return hash_combine(h, static_cast<std::uint64_t>(repetition));
}

namespace {

// A crash can leave a partial last line; it is dropped and rewritten on resume.
std::vector<RunRecord> read_jsonl(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot read records " + file.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(std::move(line));
  }
  std::vector<RunRecord> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    json j = json::parse(lines[i], nullptr, false);
    if (j.is_discarded()) {
      if (i + 1 == lines.size()) break;
      throw ParseError(i + 1, "malformed record in " + file.string());
    }
    out.push_back(RunRecord::from_json(j));
  }
  return out;
}

}  // namespace

std::vector<RunRecord> load_records(const fs::path& dir) {
  if (fs::is_regular_file(dir)) return read_jsonl(dir);
  if (!fs::is_directory(dir)) throw InputError("no records at " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".jsonl") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<RunRecord> out;
  for (const auto& f : files) {
    auto part = read_jsonl(f);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

namespace {

struct NamedSet {
  std::string name;
  ScenarioSet set;
};

struct Job {
  const Instance* instance;
  const NamedSet* scenarios;
  Algorithm algorithm;
  double alpha;
  int repetition;
};

RunRecord run_job(const Job& job, const ExperimentConfig& config) {
  PipelineConfig pc;
  pc.algorithm = job.algorithm;
  pc.alpha = job.alpha;
  pc.budget_seconds = config.budget_seconds;
  pc.max_restarts = config.max_restarts;
  pc.ea_max_iterations = config.ea_max_iterations;
  pc.rng_seed = cell_seed(config.master_seed, job.instance->name, job.scenarios->name,
                          job.algorithm, job.alpha, job.repetition);

  const auto start = Clock::now();
  SolveResult res = solve(*job.instance, job.scenarios->set, pc);
  const double wall = std::chrono::duration<double>(Clock::now() - start).count();

  RunRecord r;
  r.instance = job.instance->name;
  r.scenario_set = job.scenarios->name;
  r.algorithm = job.algorithm;
  r.alpha = job.alpha;
  r.repetition = job.repetition;
  r.seed = pc.rng_seed;
  r.expected_z = res.evaluation.expected_z;
  r.feasibility_rate = res.evaluation.feasibility_rate;
  const ScenarioSet& s = job.scenarios->set;
  r.plan_weight_per_scenario.assign(s.k(), 0.0);
  for (std::size_t i = 0; i < res.solution.plan.size(); ++i) {
    if (!res.solution.plan[i]) continue;
    r.picked.push_back(i);
    for (std::size_t q = 0; q < s.k(); ++q) r.plan_weight_per_scenario[q] += s.weights[q][i];
  }
  r.wall_clock_seconds = wall;
  r.iterations = res.iterations;
  r.restarts = res.restarts;
  r.stopped_by_clock = res.stopped_by_clock;
  r.fallback_empty_plan = res.fallback_empty_plan;
  r.tour = res.solution.tour;
  return r;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& config, std::ostream* log) {
  config.validate();
  ExperimentOutcome outcome;
  std::mutex mu;
  auto note = [&](const std::string& msg) {
    std::lock_guard lock(mu);
    if (log) *log << msg << '\n' << std::flush;
  };

  fs::create_directories(config.output_dir);
  const fs::path records_path = config.output_dir / kRecordsFile;

  std::vector<RunRecord> existing;
  if (fs::exists(records_path)) {
    existing = read_jsonl(records_path);
    // Rewrite without a possibly torn last line so appends start on a fresh line.
    std::ofstream out(records_path, std::ios::trunc);
    for (const auto& r : existing) out << r.to_json().dump() << '\n';
  }
  std::set<CellKey> done;
  for (const auto& r : existing) done.insert(key_of(r));

  std::vector<Instance> instances;
  instances.reserve(config.instances.size());
  for (const auto& path : config.instances) {
    try {
      instances.push_back(load_instance(path));
      if (instances.back().name.empty()) instances.back().name = path.stem().string();
    } catch (const std::exception& e) {
      std::string msg = "skipping instance " + path.string() + ": " + e.what();
      outcome.errors.push_back(msg);
      note(msg);
    }
  }

  std::vector<fs::path> scenario_files = config.scenario_files;
  std::vector<std::vector<NamedSet>> sets(instances.size());
  std::vector<bool> usable(instances.size(), true);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    try {
      for (const auto& l : config.scenario_labels) {
        sets[i].push_back({l, generate_scenarios(instances[i], config.delta, parse_scenario_label(l))});
      }
      for (const auto& f : scenario_files) {
        NamedSet ns{f.stem().string(), load_scenarios(f)};
        ns.set.validate_for(instances[i]);
        sets[i].push_back(std::move(ns));
      }
    } catch (const std::exception& e) {
      std::string msg = "skipping instance " + instances[i].name + ": " + e.what();
      outcome.errors.push_back(msg);
      note(msg);
      usable[i] = false;
    }
  }

  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!usable[i]) continue;
    for (const auto& ns : sets[i]) {
      for (Algorithm a : config.algorithms) {
        for (double alpha : config.alphas) {
          for (int rep = 0; rep < config.repetitions; ++rep) {
            CellKey key{instances[i].name, ns.name, std::string(to_string(a)), alpha_key(alpha), rep};
            if (done.count(key)) {
              ++outcome.skipped;
              continue;
            }
            done.insert(key);
            jobs.push_back({&instances[i], &ns, a, alpha, rep});
          }
        }
      }
    }
  }

  std::vector<RunRecord> fresh;
  std::atomic<std::size_t> next{0};
  std::ofstream out(records_path, std::ios::app);
  if (!out) throw InputError("cannot write " + records_path.string());

  auto worker = [&] {
    for (std::size_t idx = next++; idx < jobs.size(); idx = next++) {
      const Job& job = jobs[idx];
      try {
        RunRecord r = run_job(job, config);
        const std::string line = r.to_json().dump() + "\n";
        std::lock_guard lock(mu);
        out.write(line.data(), static_cast<std::streamsize>(line.size()));
        out.flush();
        fresh.push_back(std::move(r));
        ++outcome.executed;
        if (log) {
          *log << job.instance->name << ' ' << job.scenarios->name << ' ' << to_string(job.algorithm)
               << " alpha=" << job.alpha << " rep=" << job.repetition
               << " z=" << fresh.back().expected_z << '\n' << std::flush;
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        outcome.errors.push_back(job.instance->name + ": " + e.what());
        if (log) *log << "error: " << outcome.errors.back() << '\n' << std::flush;
      }
    }
  };

  unsigned n = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
  }

  outcome.records = std::move(existing);
  outcome.records.insert(outcome.records.end(), fresh.begin(), fresh.end());
  std::sort(outcome.records.begin(), outcome.records.end(),
            [](const RunRecord& a, const RunRecord& b) { return key_of(a) < key_of(b); });
  return outcome;
}

}  // namespace cctp
