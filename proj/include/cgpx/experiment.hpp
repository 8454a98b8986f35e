#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cgpx/evolution.hpp"
#include "cgpx/stats.hpp"

namespace cgpx {

// One row of the operator matrix, e.g. "1x-pm" = one-point node-preserving
// crossover with point mutation under (40+40). "none-<m>" is the canonical
// mutation-only (1+4).
struct OperatorSpec {
  std::string tag;
  Strategy strategy = Strategy::MuPlusLambda;
  std::optional<CrossoverKind> crossover;
  double crossover_rate = 0.5;
  MutationKind mutation = MutationKind::Point;
  double mutation_rate = 0.5;
};

// Throws std::invalid_argument on unknown tags.
OperatorSpec parse_operator_tag(std::string_view tag);

// The full 12-operator matrix: {none,1x,1x1d,ux,ux1d,sgx} x {pm,nm}.
std::vector<OperatorSpec> standard_operators();

struct ExperimentConfig {
  std::vector<std::string> problems;
  std::vector<OperatorSpec> operators;
  int replicates = 50;
  int generations = 6000;
  std::uint64_t base_seed = 1;
  int jobs = 1;
  std::filesystem::path out_dir;
  bool force = false;
  bool shared_dataset = false;
  GenomeParams genome_params;
  int tournament_size = 2;
  std::optional<double> crossover_rate_override;
  std::optional<double> mutation_rate_override;
};

EvoConfig make_evo_config(const ExperimentConfig& config,
                          const OperatorSpec& op, std::uint64_t seed);

std::uint64_t dataset_seed_for(const ExperimentConfig& config,
                               const std::string& problem,
                               const std::string& operator_tag, int replicate);
std::uint64_t evolution_seed_for(const ExperimentConfig& config,
                                 const std::string& problem,
                                 const std::string& operator_tag,
                                 int replicate);

std::filesystem::path replicate_csv_path(const std::filesystem::path& out_dir,
                                         const std::string& problem,
                                         const std::string& operator_tag,
                                         int replicate);
std::filesystem::path replicate_json_path(const std::filesystem::path& out_dir,
                                          const std::string& problem,
                                          const std::string& operator_tag,
                                          int replicate);

struct RunReport {
  int executed = 0;
  int skipped = 0;
};

// Runs every (problem, operator, replicate) cell, up to `jobs` replicates
// concurrently, writing one CSV and one JSON sidecar per replicate. Completed
// cells are skipped unless config.force. Deterministic for a given config
// regardless of job count.
RunReport run_experiment(const ExperimentConfig& config, std::ostream& log);

// Reads all replicate sidecars under in_dir into an outcome table. Throws
// std::runtime_error listing offending files when logs are corrupt, or when
// no logs are found.
OutcomeTable load_outcomes(const std::filesystem::path& in_dir);

// Writes summary.csv, pl_worths.csv, and pairwise.csv next to the logs.
void analyze_experiment(const std::filesystem::path& in_dir,
                        const PlackettLuceOptions& pl_options,
                        std::ostream& log);

}  // namespace cgpx
