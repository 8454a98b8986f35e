#include "cgpx/evolution.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace cgpx {

std::string_view strategy_name(Strategy s) {
  return s == Strategy::OnePlusLambda ? "1+lambda" : "mu+lambda";
}

void validate_config(const EvoConfig& config) {
  if (!config.genome_params.valid()) {
    throw std::invalid_argument("config: invalid genome params");
  }
  if (config.mu < 1 || config.lambda < 1) {
    throw std::invalid_argument("config: mu and lambda must be >= 1");
  }
  if (config.crossover_rate < 0.0 || config.crossover_rate > 1.0 ||
      config.mutation_rate < 0.0 || config.mutation_rate > 1.0) {
    throw std::invalid_argument("config: rates must lie in [0, 1]");
  }
  if (config.generations < 0) {
    throw std::invalid_argument("config: generations must be >= 0");
  }
  if (config.tournament_size < 1) {
    throw std::invalid_argument("config: tournament size must be >= 1");
  }
  if (config.strategy == Strategy::OnePlusLambda && config.crossover) {
    throw std::invalid_argument("config: (1+lambda) cannot use crossover");
  }
}

Individual make_individual(Genome genome, const Dataset& dataset,
                           int birth_generation) {
  Individual ind;
  ind.active_count = active_mask(genome).active_count;
  ind.semantics = evaluate_batch(genome, dataset.train_x);
  ind.fitness = fitness(ind.semantics, dataset.train_y);
  ind.genome = std::move(genome);
  ind.birth_generation = birth_generation;
  return ind;
}

namespace {

// Survival order: lower fitness first, then younger (neutral drift).
bool beats(const Individual& a, const Individual& b) {
  if (a.fitness != b.fitness) return a.fitness < b.fitness;
  return a.birth_generation > b.birth_generation;
}

bool ties(const Individual& a, const Individual& b) {
  return a.fitness == b.fitness && a.birth_generation == b.birth_generation;
}

const Individual& best_of(const std::vector<Individual>& pool) {
  const Individual* best = &pool.front();
  for (const Individual& ind : pool) {
    if (beats(ind, *best)) best = &ind;
  }
  return *best;
}

}  // namespace

const Individual& tournament_select(const std::vector<Individual>& pool, int k,
                                    Rng& rng) {
  if (pool.empty()) throw std::invalid_argument("tournament: empty pool");
  if (k < 1) throw std::invalid_argument("tournament: k must be >= 1");
  int winner = rng.index(pool.size());
  std::vector<int> tied_draws;
  for (int j = 1; j < k; ++j) {
    const int draw = rng.index(pool.size());
    if (beats(pool[draw], pool[winner])) {
      winner = draw;
      tied_draws.clear();
    } else if (ties(pool[draw], pool[winner])) {
      if (tied_draws.empty()) tied_draws.push_back(winner);
      tied_draws.push_back(draw);
    }
  }
  if (tied_draws.size() > 1) winner = tied_draws[rng.index(tied_draws.size())];
  return pool[winner];
}

namespace {

bool all_finite(const Semantics& s) {
  for (double v : s.values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

bool same_semantics(const Semantics& a, const Semantics& b) {
  if (a.values.size() != b.values.size()) return false;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (std::abs(a.values[i] - b.values[i]) > 1e-9) return false;
  }
  return true;
}

}  // namespace

double semantic_diversity(const std::vector<const Semantics*>& semantics) {
  if (semantics.empty()) {
    throw std::invalid_argument("semantic_diversity: empty population");
  }
  std::vector<const Semantics*> reps;
  bool invalid_seen = false;
  for (const Semantics* s : semantics) {
    if (!all_finite(*s)) {
      invalid_seen = true;
      continue;
    }
    bool matched = false;
    for (const Semantics* rep : reps) {
      if (same_semantics(*s, *rep)) {
        matched = true;
        break;
      }
    }
    if (!matched) reps.push_back(s);
  }
  const std::size_t classes = reps.size() + (invalid_seen ? 1 : 0);
  return static_cast<double>(classes) / static_cast<double>(semantics.size());
}

double semantic_diversity(const std::vector<Semantics>& semantics) {
  std::vector<const Semantics*> ptrs;
  ptrs.reserve(semantics.size());
  for (const Semantics& s : semantics) ptrs.push_back(&s);
  return semantic_diversity(ptrs);
}

Individual step_one_plus_lambda(const Individual& parent,
                                const EvoConfig& config,
                                const Dataset& dataset, int generation,
                                Rng& rng) {
  std::optional<Individual> best_child;
  for (int k = 0; k < config.lambda; ++k) {
    Genome child_genome = rng.chance(config.mutation_rate)
                              ? mutate(config.mutation, parent.genome, rng)
                              : parent.genome;
    Individual child =
        make_individual(std::move(child_genome), dataset, generation);
    if (!best_child || child.fitness < best_child->fitness) {
      best_child = std::move(child);
    }
  }
  // <= admits equal-fitness offspring: neutral drift across plateaus.
  return best_child->fitness <= parent.fitness ? std::move(*best_child)
                                               : parent;
}

std::vector<Individual> step_mu_plus_lambda(const std::vector<Individual>& pop,
                                            const EvoConfig& config,
                                            const Dataset& dataset,
                                            int generation, Rng& rng,
                                            StepCounters* counters) {
  std::vector<Individual> pool = pop;
  pool.reserve(pop.size() + config.lambda);

  std::vector<Genome> raw;
  raw.reserve(config.lambda);
  while (static_cast<int>(raw.size()) < config.lambda) {
    const bool recombine = config.crossover && rng.chance(config.crossover_rate);
    if (recombine) {
      const Individual& pa = tournament_select(pop, config.tournament_size, rng);
      const Individual& pb = tournament_select(pop, config.tournament_size, rng);
      GenomePair kids = crossover(*config.crossover, pa.genome, pb.genome, rng);
      raw.push_back(std::move(kids.first));
      if (static_cast<int>(raw.size()) < config.lambda) {
        raw.push_back(std::move(kids.second));
      }
      if (counters) counters->crossover_children += 2;
    } else {
      raw.push_back(tournament_select(pop, config.tournament_size, rng).genome);
      if (static_cast<int>(raw.size()) < config.lambda) {
        raw.push_back(tournament_select(pop, config.tournament_size, rng).genome);
      }
      if (counters) counters->cloned_children += 2;
    }
  }
  for (Genome& genome : raw) {
    if (rng.chance(config.mutation_rate)) {
      genome = mutate(config.mutation, genome, rng);
      if (counters) counters->mutated_children += 1;
    }
    pool.push_back(make_individual(std::move(genome), dataset, generation));
  }

#ifndef NDEBUG
  // Spot check: one pool member's cached fitness must match a re-evaluation.
  {
    const Individual& probe = pool[generation % pool.size()];
    assert(probe.fitness ==
           fitness(evaluate_batch(probe.genome, dataset.train_x), dataset.train_y));
  }
#endif

  std::vector<Individual> next;
  next.reserve(pop.size());
  next.push_back(best_of(pool));
  while (next.size() < pop.size()) {
    next.push_back(tournament_select(pool, config.tournament_size, rng));
  }
  return next;
}

GenerationMetrics population_metrics(const std::vector<Individual>& pop,
                                     int generation) {
  GenerationMetrics m;
  m.generation = generation;

  const Individual& best = best_of(pop);
  m.best_fitness = best.fitness;
  m.best_size = best.active_count;

  std::vector<double> fit, size;
  fit.reserve(pop.size());
  size.reserve(pop.size());
  std::vector<const Semantics*> sems;
  sems.reserve(pop.size());
  for (const Individual& ind : pop) {
    fit.push_back(ind.fitness);
    size.push_back(static_cast<double>(ind.active_count));
    sems.push_back(&ind.semantics);
  }
  auto median = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };
  m.median_fitness = median(fit);
  m.median_size = median(size);
  m.semantic_diversity = semantic_diversity(sems);
  return m;
}

ReplicateLog run_replicate(const EvoConfig& config, const Dataset& dataset) {
  validate_config(config);
  Rng rng(config.seed);

  const int mu = config.strategy == Strategy::OnePlusLambda ? 1 : config.mu;
  std::vector<Individual> pop;
  pop.reserve(mu);
  for (int i = 0; i < mu; ++i) {
    pop.push_back(
        make_individual(random_genome(config.genome_params, rng), dataset, 0));
  }

  ReplicateLog log;
  log.config = config;
  log.seed = config.seed;
  log.rows.reserve(config.generations);
  for (int g = 0; g < config.generations; ++g) {
    log.rows.push_back(population_metrics(pop, g));
    if (config.strategy == Strategy::OnePlusLambda) {
      pop[0] = step_one_plus_lambda(pop[0], config, dataset, g + 1, rng);
    } else {
      pop = step_mu_plus_lambda(pop, config, dataset, g + 1, rng);
    }
  }

  log.champion = best_of(pop);
  log.test_fitness =
      fitness(evaluate_batch(log.champion.genome, dataset.test_x), dataset.test_y);
  return log;
}

}  // namespace cgpx
