#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgpx {

// Per-replicate rankings of competing operators, best first.
struct RankingSet {
  std::vector<std::string> items;          // K >= 2 operator identifiers
  std::vector<std::vector<int>> rankings;  // R rows, each a permutation of 0..K-1
};

enum class RankDirection { LowerIsBetter, HigherIsBetter };

// One ranking per replicate index, ordering the items by their r-th value.
// Ties are broken by a seeded random permutation (Plackett-Luce consumes
// strict orders, so no midpoint ranks). All items must have the same number
// of values.
RankingSet build_rankings(const std::vector<std::string>& items,
                          const std::vector<std::vector<double>>& values,
                          RankDirection direction,
                          std::uint64_t tie_seed = 0x5eedf00d);

// Positive worths summing to 1: item i's share is the probability it ranks
// first among the competitors.
struct WorthVector {
  std::vector<std::string> items;
  std::vector<double> worths;
};

struct PlackettLuceOptions {
  double tol = 1e-8;
  int max_iter = 10000;
  // Adds one ranking's worth of synthetic uniform data (the K cyclic orders
  // at weight 1/K). Keeps the MLE finite on separated data; off by default
  // because it biases the worths toward uniform.
  bool regularize = false;
};

struct PlackettLuceError : std::runtime_error {
  PlackettLuceError(const std::string& what, WorthVector last)
      : std::runtime_error(what), last_iterate(std::move(last)) {}
  WorthVector last_iterate;
};

// Maximum-likelihood Plackett-Luce worths via Hunter's MM iteration.
// Throws PlackettLuceError on non-convergence, std::domain_error when the
// data are totally separated and regularization is off.
WorthVector plackett_luce_fit(const RankingSet& rankings,
                              const PlackettLuceOptions& options = {});

struct MannWhitneyResult {
  double u = 0.0;           // U statistic of sample a
  double p_one_sided = 1.0; // P(a stochastically smaller than b)
};

// Rank-sum test with normal approximation, tie correction, and continuity
// correction. Requires at least 5 observations per sample.
MannWhitneyResult mann_whitney_u(std::span<const double> a,
                                 std::span<const double> b);

// Linear-interpolation quantile (the common "type 7" rule). q in [0, 1].
double quantile(std::vector<double> values, double q);

// Final outcome of one replicate, as consumed by the cross-operator summary.
struct ReplicateOutcome {
  double final_fitness = 1.0;
  int champion_size = 0;
  double test_fitness = 1.0;
};

// problem -> operator tag -> per-replicate outcomes
using OutcomeTable =
    std::map<std::string, std::map<std::string, std::vector<ReplicateOutcome>>>;

struct SummaryRow {
  std::string problem;
  std::string op;
  int replicates = 0;
  double median_fitness = 0.0, q1_fitness = 0.0, q3_fitness = 0.0;
  double median_size = 0.0, q1_size = 0.0, q3_size = 0.0;
  double median_test_fitness = 0.0;
};

// Plackett-Luce worths per problem plus the across-problem average and
// standard deviation rows.
struct WorthTable {
  std::vector<std::string> items;
  std::vector<std::string> problems;
  std::vector<std::vector<double>> worths;  // [problem][item]
  std::vector<double> average;              // per item
  std::vector<double> stddev;               // per item, sample sd
};

struct Summary {
  std::vector<SummaryRow> rows;
  std::optional<WorthTable> pl_fitness;  // ranked by final fitness
  std::optional<WorthTable> pl_size;     // ranked by champion size
};

// Medians/quartiles per (problem, operator) plus worth tables when at least
// two operators with equal replicate counts are present everywhere.
Summary summarize(const OutcomeTable& outcomes,
                  const PlackettLuceOptions& pl_options = {});

}  // namespace cgpx
