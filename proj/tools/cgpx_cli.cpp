// cgpx command line: run CGP symbolic-regression experiments, analyze the
// resulting logs, and list the built-in benchmark problems.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "cgpx/experiment.hpp"
#include "cgpx/problems.hpp"
#include "cgpx/serialize.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitAnalysis = 3;

std::vector<std::string> default_problem_names() {
  std::vector<std::string> names;
  for (const cgpx::ProblemSpec& p : cgpx::problem_suite()) names.push_back(p.name);
  return names;
}

std::vector<std::string> default_operator_tags() {
  std::vector<std::string> tags;
  for (const cgpx::OperatorSpec& op : cgpx::standard_operators()) {
    tags.push_back(op.tag);
  }
  return tags;
}

int cmd_problems_list() {
  std::printf("%-10s %-7s %-20s %s\n", "name", "points", "domain", "function");
  for (const cgpx::ProblemSpec& p : cgpx::problem_suite()) {
    const std::string domain =
        "[" + cgpx::format_double(p.lo) + ", " + cgpx::format_double(p.hi) + "]";
    std::printf("%-10s %-7d %-20s %s\n", p.name.c_str(), p.n_points,
                domain.c_str(), p.formula.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cgpx: Cartesian GP engine comparing node-preserving and "
               "flattened variation operators on regression benchmarks"};
  app.require_subcommand(1);

  // --- run ---
  auto* run = app.add_subcommand("run", "Run an experiment grid");
  std::vector<std::string> problems = default_problem_names();
  std::vector<std::string> operator_tags = default_operator_tags();
  int replicates = 50;
  int generations = 6000;
  std::uint64_t seed = 1;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  std::string out_dir;
  bool force = false;
  bool shared_dataset = false;
  int n_nodes = 64;
  int tournament_size = 2;
  double crossover_rate = -1.0;
  double mutation_rate = -1.0;
  run->set_config("--config", "", "Read options from a key=value file");
  run->add_option("--problems", problems, "Problems to run (default: all)")
      ->delimiter(',');
  run->add_option("--operators", operator_tags,
                  "Operator tags like 1x-pm, none-nm (default: all 12)")
      ->delimiter(',');
  run->add_option("--replicates", replicates, "Replicates per cell");
  run->add_option("--generations", generations, "Generations per replicate");
  run->add_option("--seed", seed, "Base seed for the whole experiment");
  run->add_option("--jobs", jobs, "Max concurrent replicates");
  run->add_option("--out-dir", out_dir, "Output directory")->required();
  run->add_flag("--force", force, "Redo completed replicates");
  run->add_flag("--shared-dataset", shared_dataset,
                "One dataset per problem instead of one per replicate");
  run->add_option("--nodes", n_nodes, "Function nodes in the genome");
  run->add_option("--tournament-size", tournament_size, "Tournament size");
  run->add_option("--crossover-rate", crossover_rate,
                  "Override the per-operator crossover rate");
  run->add_option("--mutation-rate", mutation_rate,
                  "Override the per-operator mutation rate");

  // --- analyze ---
  auto* analyze = app.add_subcommand(
      "analyze", "Summarize run output: medians, Plackett-Luce worths, "
                 "pairwise rank-sum tests");
  std::string in_dir;
  bool pl_regularize = false;
  analyze->add_option("in_dir", in_dir, "Directory written by `run`")
      ->required();
  analyze->add_flag("--pl-regularize", pl_regularize,
                    "Regularize degenerate (totally separated) rankings "
                    "instead of failing");

  // --- problems ---
  auto* problems_cmd = app.add_subcommand("problems", "Benchmark info");
  auto* list_cmd = problems_cmd->add_subcommand("list", "List the built-in problems");
  problems_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) {
      cgpx::ExperimentConfig config;
      config.problems = problems;
      for (const std::string& tag : operator_tags) {
        config.operators.push_back(cgpx::parse_operator_tag(tag));
      }
      config.replicates = replicates;
      config.generations = generations;
      config.base_seed = seed;
      config.jobs = jobs > 0 ? jobs : 1;
      config.out_dir = out_dir;
      config.force = force;
      config.shared_dataset = shared_dataset;
      config.genome_params.n_function_nodes = n_nodes;
      config.tournament_size = tournament_size;
      if (crossover_rate >= 0.0) config.crossover_rate_override = crossover_rate;
      if (mutation_rate >= 0.0) config.mutation_rate_override = mutation_rate;
      cgpx::run_experiment(config, std::cout);
      return 0;
    }
    if (*analyze) {
      cgpx::PlackettLuceOptions pl;
      pl.regularize = pl_regularize;
      cgpx::analyze_experiment(in_dir, pl, std::cout);
      return 0;
    }
    if (*list_cmd) {
      return cmd_problems_list();
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return *analyze ? kExitAnalysis : kExitIo;
  }
  return 0;
}
