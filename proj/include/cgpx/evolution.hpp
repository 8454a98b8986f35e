#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cgpx/genome.hpp"
#include "cgpx/problems.hpp"
#include "cgpx/rng.hpp"
#include "cgpx/variation.hpp"

namespace cgpx {

enum class Strategy : std::uint8_t {
  OnePlusLambda,  // canonical mutation-only (1+4)
  MuPlusLambda,   // (40+40) with tournament selection
};

std::string_view strategy_name(Strategy s);

struct EvoConfig {
  Strategy strategy = Strategy::MuPlusLambda;
  int mu = 40;
  int lambda = 40;
  std::optional<CrossoverKind> crossover;  // nullopt = no crossover
  double crossover_rate = 0.5;
  MutationKind mutation = MutationKind::Point;
  double mutation_rate = 0.5;
  int generations = 6000;
  int tournament_size = 2;
  GenomeParams genome_params;
  std::uint64_t seed = 0;
};

// Throws std::invalid_argument when rates leave [0,1], sizes are degenerate,
// or a OnePlusLambda config carries a crossover operator.
void validate_config(const EvoConfig& config);

struct Individual {
  Genome genome;
  double fitness = 1.0;
  Semantics semantics;  // outputs on the training split
  int active_count = 0;
  int birth_generation = 0;
};

Individual make_individual(Genome genome, const Dataset& dataset,
                           int birth_generation);

struct GenerationMetrics {
  int generation = 0;
  double best_fitness = 1.0;
  double median_fitness = 1.0;
  int best_size = 0;
  double median_size = 0.0;
  double semantic_diversity = 1.0;
};

struct ReplicateLog {
  EvoConfig config;
  std::uint64_t seed = 0;
  std::vector<GenerationMetrics> rows;  // one per generation
  Individual champion;
  double test_fitness = 1.0;
};

// k uniform draws with replacement; the lowest-fitness draw wins, fitness
// ties go to the higher birth generation, remaining ties are uniform.
const Individual& tournament_select(const std::vector<Individual>& pool, int k,
                                    Rng& rng);

// Fraction of behaviorally distinct programs: semantics vectors equal
// componentwise within 1e-9 share a class, and all non-finite vectors share
// one "invalid" class.
double semantic_diversity(const std::vector<const Semantics*>& semantics);
double semantic_diversity(const std::vector<Semantics>& semantics);

// One (1+lambda) generation: the best offspring displaces the parent whenever
// its fitness is no worse (neutral drift).
Individual step_one_plus_lambda(const Individual& parent,
                                const EvoConfig& config,
                                const Dataset& dataset, int generation,
                                Rng& rng);

struct StepCounters {
  long crossover_children = 0;
  long cloned_children = 0;
  long mutated_children = 0;
};

// One (mu+lambda) generation: offspring by tournament-selected recombination
// or cloning, per-offspring mutation, then elitist survival with tournament
// refill over the merged pool.
std::vector<Individual> step_mu_plus_lambda(const std::vector<Individual>& pop,
                                            const EvoConfig& config,
                                            const Dataset& dataset,
                                            int generation, Rng& rng,
                                            StepCounters* counters = nullptr);

GenerationMetrics population_metrics(const std::vector<Individual>& pop,
                                     int generation);

// Runs the configured strategy for config.generations iterations. Pure
// function of (config, dataset): replays are bit-identical.
ReplicateLog run_replicate(const EvoConfig& config, const Dataset& dataset);

}  // namespace cgpx
