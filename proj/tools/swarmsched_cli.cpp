// Command-line front end: generate, solve, validate, simulate, bench, plot.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "swarmsched/bench.hpp"
#include "swarmsched/errors.hpp"
#include "swarmsched/exact.hpp"
#include "swarmsched/generator.hpp"
#include "swarmsched/greedy.hpp"
#include "swarmsched/io.hpp"
#include "swarmsched/plot.hpp"
#include "swarmsched/simulate.hpp"
#include "swarmsched/validator.hpp"

namespace {

using namespace swarmsched;

enum ExitCode { kOk = 0, kInvalid = 1, kUsage = 2, kLimitHit = 3 };

void emit(const json& doc, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << doc.dump(2) << '\n';
  else
    write_json_file(out, doc);
}

// Accepts a bare schedule or a solve result carrying one.
Schedule read_schedule(const std::string& path) {
  json doc = read_json_file(path);
  if (doc.is_object() && doc.contains("schedule")) return schedule_from_json(doc["schedule"]);
  return schedule_from_json(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coalition scheduling for heterogeneous multi-skilled robot swarms"};
  app.require_subcommand(1);

  std::string mode_name = "corrected";

  GeneratorConfig gen;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Generate a random instance");
  generate->add_option("--l", gen.l, "number of skills")->required();
  generate->add_option("--m", gen.m, "number of tasks")->required();
  generate->add_option("--n", gen.n, "number of robots")->required();
  generate->add_option("--seed", gen.seed, "random seed")->required();
  generate->add_option("--epsilon", gen.epsilon, "on-time probability target");
  generate->add_flag("--full-circle", gen.full_circle, "spread robot starts over 2 pi");
  generate->add_option("--out", gen_out, "output file (default stdout)");

  std::string method = "greedy", instance_path, solve_out;
  double time_limit = 300.0;
  std::uint64_t node_limit = 10'000'000;
  bool warm_start = false;
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("--method", method)->check(CLI::IsMember({"exact", "greedy"}));
  solve->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);
  solve->add_option("--out", solve_out, "result file (default stdout)");
  solve->add_option("--buffer-mode", mode_name)->check(CLI::IsMember({"corrected", "paper"}));
  solve->add_option("--time-limit", time_limit, "wall seconds")->check(CLI::PositiveNumber);
  solve->add_option("--node-limit", node_limit)->check(CLI::PositiveNumber);
  solve->add_flag("--warm-start", warm_start, "seed the exact search with the greedy schedule");

  std::string schedule_path, validate_out;
  auto* validate_cmd = app.add_subcommand("validate", "Check a schedule against an instance");
  validate_cmd->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);
  validate_cmd->add_option("--schedule", schedule_path)->required()->check(CLI::ExistingFile);
  validate_cmd->add_option("--buffer-mode", mode_name)->check(CLI::IsMember({"corrected", "paper"}));
  validate_cmd->add_option("--out", validate_out, "report file (default stdout)");

  std::uint64_t trials = 10'000, sim_seed = 0;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo replay of a schedule");
  simulate->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);
  simulate->add_option("--schedule", schedule_path)->required()->check(CLI::ExistingFile);
  simulate->add_option("--trials", trials)->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_seed);
  simulate->add_option("--buffer-mode", mode_name)->check(CLI::IsMember({"corrected", "paper"}));
  simulate->add_option("--out", sim_out, "statistics file (default stdout)");

  std::string suite_path, bench_out, relative_out;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  bench->add_option("--suite", suite_path)->required()->check(CLI::ExistingFile);
  bench->add_option("--out", bench_out, "results CSV")->required();
  bench->add_option("--relative-out", relative_out, "greedy/exact comparison CSV");

  std::string csv_path, plot_dir;
  auto* plot = app.add_subcommand("plot", "Render SVG summaries of a results CSV");
  plot->add_option("--csv", csv_path)->required()->check(CLI::ExistingFile);
  plot->add_option("--out-dir", plot_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const BufferMode mode = buffer_mode_from_string(mode_name);

    if (*generate) {
      emit(instance_to_json(generate_instance(gen)), gen_out);
      return kOk;
    }

    if (*solve) {
      const Instance instance = load_instance(instance_path);
      if (method == "greedy") {
        emit(greedy_result_to_json(solve_greedy(instance, mode)), solve_out);
        return kOk;
      }
      SolveOptions options;
      options.time_limit = time_limit;
      options.node_limit = node_limit;
      options.mode = mode;
      options.warm_start = warm_start;
      const ExactResult result = solve_exact(instance, options);
      emit(exact_result_to_json(result), solve_out);
      switch (result.status) {
        case SolveStatus::Infeasible: return kInvalid;
        case SolveStatus::IncumbentOnly: return kLimitHit;
        default: return kOk;
      }
    }

    if (*validate_cmd) {
      const Instance instance = load_instance(instance_path);
      const ValidationReport report = validate(instance, read_schedule(schedule_path), mode);
      emit(report_to_json(report), validate_out);
      return report.feasible ? kOk : kInvalid;
    }

    if (*simulate) {
      const Instance instance = load_instance(instance_path);
      const Schedule schedule = read_schedule(schedule_path);
      const ValidationReport report = validate(instance, schedule, mode);
      if (!report.feasible) {
        std::cerr << "schedule is infeasible; run validate for details\n";
        return kInvalid;
      }
      emit(simulation_to_json(simulate_execution(instance, schedule, trials, sim_seed, mode)),
           sim_out);
      return kOk;
    }

    if (*bench) {
      const SuiteConfig suite = suite_from_json(read_json_file(suite_path));
      std::ofstream out(bench_out);
      if (!out) throw Error("cannot write " + bench_out);
      const auto records = run_benchmark(suite, &out);
      if (!relative_out.empty()) {
        std::ofstream rel(relative_out);
        write_relative_csv(rel, relative_performance(records));
      }
      bool limit_hit = false;
      for (const auto& r : records) limit_hit = limit_hit || r.status == "incumbent";
      return limit_hit ? kLimitHit : kOk;
    }

    if (*plot) {
      for (const auto& path : emit_plots(read_csv(csv_path), plot_dir))
        std::cout << path.string() << '\n';
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}
