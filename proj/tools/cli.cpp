#include "cli.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "cctp/errors.hpp"
#include "cctp/harness.hpp"
#include "cctp/instance.hpp"
#include "cctp/instance_generator.hpp"
#include "cctp/report.hpp"
#include "cctp/scenarios.hpp"

namespace cctp::cli {
namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("failed writing " + path);
}

struct GenScenariosArgs {
  std::string instance, out, set = "A";
  double delta = 20.0;
};

struct SolveArgs {
  std::string instance, scenarios, algorithm = "s5";
  double alpha = 0.8, budget = 600.0;
  std::uint64_t seed = 1;
  std::optional<std::size_t> max_restarts;
  std::optional<std::uint64_t> ea_iterations;
};

struct ReportArgs {
  std::string records, format = "text", out;
  double significance = 0.05;
};

struct GenInstanceArgs {
  std::size_t cities = 51;
  std::string type = "bsc", name, out;
  int capacity_factor = 1;
  std::uint64_t seed = 1;
};

int gen_scenarios(const GenScenariosArgs& a, std::ostream& out) {
  const Instance inst = load_instance(a.instance);
  const ScenarioSet set = generate_scenarios(inst, a.delta, parse_scenario_label(a.set));
  write_file(a.out, serialize_scenarios(set));
  out << "wrote " << set.k() << " scenarios for " << inst.num_items() << " items to " << a.out << '\n';
  return kOk;
}

int solve_cmd(const SolveArgs& a, std::ostream& out) {
  const Instance inst = load_instance(a.instance);
  const ScenarioSet set = load_scenarios(a.scenarios);
  set.validate_for(inst);
  PipelineConfig pc;
  pc.algorithm = parse_algorithm(a.algorithm);
  pc.alpha = a.alpha;
  pc.budget_seconds = a.budget;
  pc.rng_seed = a.seed;
  pc.max_restarts = a.max_restarts;
  pc.ea_max_iterations = a.ea_iterations;
  const SolveResult res = solve(inst, set, pc);

  RunRecord r;
  r.instance = inst.name;
  r.scenario_set = set.label == ScenarioLabel::Custom
                       ? std::filesystem::path(a.scenarios).stem().string()
                       : std::string(to_string(set.label));
  r.algorithm = pc.algorithm;
  r.alpha = a.alpha;
  r.seed = a.seed;
  r.expected_z = res.evaluation.expected_z;
  r.feasibility_rate = res.evaluation.feasibility_rate;
  r.plan_weight_per_scenario.assign(set.k(), 0.0);
  for (std::size_t i = 0; i < res.solution.plan.size(); ++i) {
    if (!res.solution.plan[i]) continue;
    r.picked.push_back(i);
    for (std::size_t s = 0; s < set.k(); ++s) r.plan_weight_per_scenario[s] += set.weights[s][i];
  }
  r.wall_clock_seconds = res.elapsed_seconds;
  r.iterations = res.iterations;
  r.restarts = res.restarts;
  r.stopped_by_clock = res.stopped_by_clock;
  r.fallback_empty_plan = res.fallback_empty_plan;
  r.tour = res.solution.tour;
  out << r.to_json().dump() << '\n';
  return kOk;
}

int experiment_cmd(const std::string& config_path, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = load_experiment_config(config_path);
  const ExperimentOutcome outcome = run_experiment(config, &err);
  out << "executed " << outcome.executed << ", skipped " << outcome.skipped << ", records "
      << outcome.records.size() << " in " << (config.output_dir / kRecordsFile).string() << '\n';
  if (!outcome.errors.empty()) {
    for (const auto& e : outcome.errors) err << "error: " << e << '\n';
    return kInputError;
  }
  return kOk;
}

int report_cmd(const ReportArgs& a, std::ostream& out) {
  const auto records = load_records(a.records);
  if (records.empty()) throw InputError("no records under " + a.records);
  const auto cells = summarize(records, a.significance);
  std::string text;
  if (a.format == "csv") {
    text = render_csv(cells);
  } else if (a.format == "json") {
    text = render_json(cells);
  } else {
    text = render_text(cells);
  }
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
  }
  return kOk;
}

int gen_instance_cmd(const GenInstanceArgs& a, std::ostream& out) {
  GeneratorOptions opt;
  opt.cities = a.cities;
  opt.correlation = a.type == "unc" ? ItemCorrelation::Uncorrelated : ItemCorrelation::BoundedStronglyCorrelated;
  opt.capacity_factor = a.capacity_factor;
  opt.seed = a.seed;
  opt.name = a.name;
  const std::string text = write_instance(generate_instance(opt));
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chance-constrained travelling thief solver and experiment harness", "cctp"};
  app.require_subcommand(1);

  GenScenariosArgs gs;
  auto* c_gs = app.add_subcommand("gen-scenarios", "Write the five-scenario weight set of an instance");
  c_gs->add_option("--instance", gs.instance, "Instance file")->required();
  c_gs->add_option("--delta", gs.delta, "Weight shift")->check(CLI::NonNegativeNumber);
  c_gs->add_option("--set", gs.set, "Scenario set")->check(CLI::IsMember({"A", "B", "C"}));
  c_gs->add_option("--out", gs.out, "Output JSON file")->required();

  SolveArgs sv;
  auto* c_sv = app.add_subcommand("solve", "Run one algorithm and print a JSON record");
  c_sv->add_option("--instance", sv.instance, "Instance file")->required();
  c_sv->add_option("--scenarios", sv.scenarios, "Scenario JSON file")->required();
  c_sv->add_option("--algorithm", sv.algorithm, "ea, s5 or c5")
      ->check(CLI::IsMember({"ea", "s5", "c5", "EA_ws", "S5_ws", "C5_ws"}));
  c_sv->add_option("--alpha", sv.alpha, "Chance-constraint level")->check(CLI::Range(0.0, 1.0));
  c_sv->add_option("--budget", sv.budget, "Time budget in seconds")->check(CLI::PositiveNumber);
  c_sv->add_option("--seed", sv.seed, "Random seed");
  c_sv->add_option("--max-restarts", sv.max_restarts, "Restart cap for s5/c5")->check(CLI::PositiveNumber);
  c_sv->add_option("--ea-iterations", sv.ea_iterations, "Iteration cap for ea")->check(CLI::PositiveNumber);

  std::string config_path;
  auto* c_ex = app.add_subcommand("experiment", "Run (or resume) an experiment grid");
  c_ex->add_option("--config", config_path, "Experiment JSON config")->required();

  ReportArgs rp;
  auto* c_rp = app.add_subcommand("report", "Summarise records into result tables");
  c_rp->add_option("--records", rp.records, "Records directory or .jsonl file")->required();
  c_rp->add_option("--format", rp.format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
  c_rp->add_option("--significance", rp.significance, "Test level")->check(CLI::Range(0.0, 1.0));
  c_rp->add_option("--out", rp.out, "Write to a file instead of stdout");

  GenInstanceArgs gi;
  auto* c_gi = app.add_subcommand("gen-instance", "Generate a synthetic benchmark-style instance");
  c_gi->add_option("--cities", gi.cities, "Number of cities")->check(CLI::Range(2, 100000));
  c_gi->add_option("--type", gi.type, "bsc or unc")->check(CLI::IsMember({"bsc", "unc"}));
  c_gi->add_option("--capacity-factor", gi.capacity_factor, "Capacity factor")->check(CLI::Range(1, 10));
  c_gi->add_option("--seed", gi.seed, "Random seed");
  c_gi->add_option("--name", gi.name, "Problem name");
  c_gi->add_option("--out", gi.out, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*c_gs) return gen_scenarios(gs, out);
    if (*c_sv) {
      if (sv.alpha <= 0.0) {
        err << "--alpha must be in (0, 1]\n";
        return kUsage;
      }
      return solve_cmd(sv, out);
    }
    if (*c_ex) return experiment_cmd(config_path, out, err);
    if (*c_rp) {
      if (rp.significance <= 0.0 || rp.significance >= 1.0) {
        err << "--significance must be in (0, 1)\n";
        return kUsage;
      }
      return report_cmd(rp, out);
    }
    if (*c_gi) return gen_instance_cmd(gi, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const ContractViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariant;
  }
  return kUsage;
}

}  // namespace cctp::cli
