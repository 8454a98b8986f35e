#include "cgpx/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "cgpx/serialize.hpp"

namespace cgpx {

OperatorSpec parse_operator_tag(std::string_view tag) {
  const std::size_t dash = tag.rfind('-');
  if (dash == std::string_view::npos) {
    throw std::invalid_argument("operator tag must look like '<crossover>-<mutation>': " +
                                std::string(tag));
  }
  const std::string_view xpart = tag.substr(0, dash);
  const std::string_view mpart = tag.substr(dash + 1);
  const auto mutation = mutation_from_name(mpart);
  if (!mutation) {
    throw std::invalid_argument("unknown mutation tag: " + std::string(mpart));
  }
  OperatorSpec spec;
  spec.tag = std::string(tag);
  spec.mutation = *mutation;
  if (xpart == "none") {
    spec.strategy = Strategy::OnePlusLambda;
    spec.crossover = std::nullopt;
    spec.crossover_rate = 0.0;
    spec.mutation_rate = 1.0;  // a non-mutated clone is useless under (1+4)
    return spec;
  }
  const auto kind = crossover_from_name(xpart);
  if (!kind) {
    throw std::invalid_argument("unknown crossover tag: " + std::string(xpart));
  }
  spec.strategy = Strategy::MuPlusLambda;
  spec.crossover = *kind;
  spec.crossover_rate = 0.5;
  spec.mutation_rate = 0.5;
  return spec;
}

std::vector<OperatorSpec> standard_operators() {
  std::vector<OperatorSpec> out;
  for (const char* mut : {"pm", "nm"}) {
    for (const char* xov : {"none", "1x", "1x1d", "ux", "ux1d", "sgx"}) {
      out.push_back(parse_operator_tag(std::string(xov) + "-" + mut));
    }
  }
  return out;
}

EvoConfig make_evo_config(const ExperimentConfig& config,
                          const OperatorSpec& op, std::uint64_t seed) {
  EvoConfig evo;
  evo.strategy = op.strategy;
  if (op.strategy == Strategy::OnePlusLambda) {
    evo.mu = 1;
    evo.lambda = 4;
  } else {
    evo.mu = 40;
    evo.lambda = 40;
  }
  evo.crossover = op.crossover;
  evo.crossover_rate = config.crossover_rate_override.value_or(op.crossover_rate);
  evo.mutation = op.mutation;
  evo.mutation_rate = config.mutation_rate_override.value_or(op.mutation_rate);
  evo.generations = config.generations;
  evo.tournament_size = config.tournament_size;
  evo.genome_params = config.genome_params;
  evo.seed = seed;
  return evo;
}

std::uint64_t dataset_seed_for(const ExperimentConfig& config,
                               const std::string& problem,
                               const std::string& operator_tag, int replicate) {
  if (config.shared_dataset) {
    return derive_seed(config.base_seed, problem, "shared", 0, "dataset");
  }
  return derive_seed(config.base_seed, problem, operator_tag,
                     static_cast<std::uint64_t>(replicate), "dataset");
}

std::uint64_t evolution_seed_for(const ExperimentConfig& config,
                                 const std::string& problem,
                                 const std::string& operator_tag,
                                 int replicate) {
  return derive_seed(config.base_seed, problem, operator_tag,
                     static_cast<std::uint64_t>(replicate), "evolution");
}

namespace {

std::string replicate_stem(int replicate) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "rep_%03d", replicate);
  return buf;
}

}  // namespace

std::filesystem::path replicate_csv_path(const std::filesystem::path& out_dir,
                                         const std::string& problem,
                                         const std::string& operator_tag,
                                         int replicate) {
  return out_dir / problem / operator_tag / (replicate_stem(replicate) + ".csv");
}

std::filesystem::path replicate_json_path(const std::filesystem::path& out_dir,
                                          const std::string& problem,
                                          const std::string& operator_tag,
                                          int replicate) {
  return out_dir / problem / operator_tag / (replicate_stem(replicate) + ".json");
}

namespace {

struct ReplicateTask {
  std::string problem;
  OperatorSpec op;
  int replicate = 0;
};

void run_one(const ExperimentConfig& config, const ReplicateTask& task) {
  const std::uint64_t ds_seed =
      dataset_seed_for(config, task.problem, task.op.tag, task.replicate);
  const std::uint64_t evo_seed =
      evolution_seed_for(config, task.problem, task.op.tag, task.replicate);
  const Dataset dataset = make_dataset(task.problem, ds_seed);
  const EvoConfig evo = make_evo_config(config, task.op, evo_seed);
  const ReplicateLog log = run_replicate(evo, dataset);

  write_file_atomic(
      replicate_csv_path(config.out_dir, task.problem, task.op.tag, task.replicate),
      replicate_csv(log));
  write_file_atomic(
      replicate_json_path(config.out_dir, task.problem, task.op.tag, task.replicate),
      replicate_sidecar(log, task.problem, task.op.tag, task.replicate, ds_seed)
          .dump(2));
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config, std::ostream& log) {
  if (config.problems.empty() || config.operators.empty()) {
    throw std::invalid_argument("run: need at least one problem and one operator");
  }
  if (config.replicates < 1) {
    throw std::invalid_argument("run: replicates must be >= 1");
  }
  for (const std::string& problem : config.problems) {
    if (find_problem(problem) == nullptr) {
      throw std::invalid_argument("unknown problem: " + problem);
    }
  }

  RunReport report;
  std::vector<ReplicateTask> tasks;
  for (const std::string& problem : config.problems) {
    for (const OperatorSpec& op : config.operators) {
      std::filesystem::create_directories(config.out_dir / problem / op.tag);
      for (int r = 0; r < config.replicates; ++r) {
        const bool done =
            std::filesystem::exists(
                replicate_csv_path(config.out_dir, problem, op.tag, r)) &&
            std::filesystem::exists(
                replicate_json_path(config.out_dir, problem, op.tag, r));
        if (done && !config.force) {
          ++report.skipped;
        } else {
          tasks.push_back({problem, op, r});
        }
      }
    }
  }

  const std::size_t jobs = std::clamp<std::size_t>(
      tasks.size(), 1, static_cast<std::size_t>(std::max(1, config.jobs)));
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        run_one(config, tasks[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(jobs);
  for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);

  report.executed = static_cast<int>(tasks.size());
  log << "executed " << report.executed << " replicates";
  if (report.skipped > 0) {
    log << ", skipped " << report.skipped << " completed replicates";
  }
  log << "\n";
  return report;
}

OutcomeTable load_outcomes(const std::filesystem::path& in_dir) {
  if (!std::filesystem::is_directory(in_dir)) {
    throw std::runtime_error("not a directory: " + in_dir.string());
  }
  OutcomeTable outcomes;
  std::vector<std::string> corrupt;
  std::size_t found = 0;
  for (const auto& entry :
       std::filesystem::recursive_directory_iterator(in_dir)) {
    if (!entry.is_regular_file()) continue;
    const std::filesystem::path& path = entry.path();
    if (path.extension() != ".json" ||
        path.filename().string().rfind("rep_", 0) != 0) {
      continue;
    }
    ++found;
    try {
      SidecarSummary s = read_sidecar(path);
      outcomes[s.problem][s.operator_tag].push_back(s.outcome);
    } catch (const std::exception&) {
      corrupt.push_back(path.string());
    }
  }
  if (!corrupt.empty()) {
    std::string msg = "corrupt replicate logs:";
    for (const std::string& f : corrupt) msg += "\n  " + f;
    throw std::runtime_error(msg);
  }
  if (found == 0) throw std::runtime_error("no replicate logs found");
  return outcomes;
}

namespace {

std::string pairwise_csv(const OutcomeTable& outcomes) {
  std::string out = "problem,operator_a,operator_b,u,p_one_sided\n";
  for (const auto& [problem, by_op] : outcomes) {
    for (const auto& [op_a, rows_a] : by_op) {
      for (const auto& [op_b, rows_b] : by_op) {
        if (op_a == op_b) continue;
        if (rows_a.size() < 5 || rows_b.size() < 5) continue;
        std::vector<double> a, b;
        for (const ReplicateOutcome& r : rows_a) a.push_back(r.final_fitness);
        for (const ReplicateOutcome& r : rows_b) b.push_back(r.final_fitness);
        const MannWhitneyResult res = mann_whitney_u(a, b);
        out += problem + ',' + op_a + ',' + op_b + ',' + format_double(res.u) +
               ',' + format_double(res.p_one_sided) + '\n';
      }
    }
  }
  return out;
}

}  // namespace

void analyze_experiment(const std::filesystem::path& in_dir,
                        const PlackettLuceOptions& pl_options,
                        std::ostream& log) {
  const OutcomeTable outcomes = load_outcomes(in_dir);
  const Summary summary = summarize(outcomes, pl_options);
  write_file_atomic(in_dir / "summary.csv", summary_csv(summary));
  write_file_atomic(in_dir / "pl_worths.csv", worths_csv(summary));
  write_file_atomic(in_dir / "pairwise.csv", pairwise_csv(outcomes));
  log << "wrote " << (in_dir / "summary.csv").string() << "\n";
  log << "wrote " << (in_dir / "pl_worths.csv").string() << "\n";
  log << "wrote " << (in_dir / "pairwise.csv").string() << "\n";
  if (!summary.pl_fitness || !summary.pl_size) {
    log << "note: a worth table was omitted; it needs >= 2 operators with "
           "equal replicate counts on every problem and non-separated "
           "rankings (or --pl-regularize)\n";
  }
}

}  // namespace cgpx
