#include "cgpx/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cgpx/rng.hpp"

namespace cgpx {

RankingSet build_rankings(const std::vector<std::string>& items,
                          const std::vector<std::vector<double>>& values,
                          RankDirection direction, std::uint64_t tie_seed) {
  const std::size_t k = items.size();
  if (k < 2 || values.size() != k) {
    throw std::invalid_argument("build_rankings: need >= 2 items with values");
  }
  const std::size_t r_count = values[0].size();
  for (const auto& v : values) {
    if (v.size() != r_count) {
      throw std::invalid_argument("build_rankings: unequal replicate counts");
    }
  }
  if (r_count == 0) {
    throw std::invalid_argument("build_rankings: no replicates");
  }

  RankingSet set;
  set.items = items;
  set.rankings.reserve(r_count);
  const double sign = direction == RankDirection::LowerIsBetter ? 1.0 : -1.0;
  for (std::size_t r = 0; r < r_count; ++r) {
    Rng rng(splitmix64(tie_seed) ^ splitmix64(r + 1));
    std::vector<double> tiebreak(k);
    for (std::size_t i = 0; i < k; ++i) tiebreak[i] = rng.unit();
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double va = sign * values[a][r];
      const double vb = sign * values[b][r];
      if (va != vb) return va < vb;
      return tiebreak[a] < tiebreak[b];
    });
    set.rankings.push_back(std::move(order));
  }
  return set;
}

namespace {

// Ford's condition: the MLE exists iff the "ranked above" digraph is
// strongly connected.
bool strongly_connected(const std::vector<std::vector<bool>>& beats) {
  const std::size_t k = beats.size();
  auto reach = [&](bool reversed) {
    std::vector<bool> seen(k, false);
    std::vector<int> stack = {0};
    seen[0] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < k; ++v) {
        const bool edge = reversed ? beats[v][u] : beats[u][v];
        if (edge && !seen[v]) {
          seen[v] = true;
          stack.push_back(static_cast<int>(v));
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };
  return reach(false) && reach(true);
}

struct WeightedRanking {
  const std::vector<int>* order;
  double weight;
};

}  // namespace

WorthVector plackett_luce_fit(const RankingSet& rankings,
                              const PlackettLuceOptions& options) {
  const std::size_t k = rankings.items.size();
  if (k < 2) throw std::invalid_argument("plackett_luce_fit: need >= 2 items");
  if (rankings.rankings.empty()) {
    throw std::invalid_argument("plackett_luce_fit: no rankings");
  }
  for (const auto& order : rankings.rankings) {
    std::vector<bool> seen(k, false);
    if (order.size() != k) {
      throw std::invalid_argument("plackett_luce_fit: ranking is not a permutation");
    }
    for (int item : order) {
      if (item < 0 || static_cast<std::size_t>(item) >= k || seen[item]) {
        throw std::invalid_argument("plackett_luce_fit: ranking is not a permutation");
      }
      seen[item] = true;
    }
  }

  std::vector<WeightedRanking> data;
  data.reserve(rankings.rankings.size() + (options.regularize ? k : 0));
  for (const auto& order : rankings.rankings) data.push_back({&order, 1.0});

  std::vector<std::vector<int>> synthetic;
  if (options.regularize) {
    synthetic.reserve(k);
    for (std::size_t shift = 0; shift < k; ++shift) {
      std::vector<int> order(k);
      for (std::size_t i = 0; i < k; ++i) {
        order[i] = static_cast<int>((i + shift) % k);
      }
      synthetic.push_back(std::move(order));
    }
    for (const auto& order : synthetic) {
      data.push_back({&order, 1.0 / static_cast<double>(k)});
    }
  } else {
    std::vector<std::vector<bool>> beats(k, std::vector<bool>(k, false));
    for (const auto& order : rankings.rankings) {
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
          beats[order[a]][order[b]] = true;
        }
      }
    }
    if (!strongly_connected(beats)) {
      throw std::domain_error(
          "plackett_luce_fit: degenerate (totally separated) ranking data; "
          "enable regularization to fit anyway");
    }
  }

  // wins[i]: weighted count of stages item i is chosen at (all non-last
  // placements). Constant across iterations.
  std::vector<double> wins(k, 0.0);
  for (const auto& [order, weight] : data) {
    for (std::size_t j = 0; j + 1 < k; ++j) wins[(*order)[j]] += weight;
  }

  std::vector<double> w(k, 1.0 / static_cast<double>(k));
  std::vector<double> denom(k), next(k), inv_prefix(k);
  for (int iter = 0; iter < options.max_iter; ++iter) {
    std::fill(denom.begin(), denom.end(), 0.0);
    for (const auto& [order, weight] : data) {
      // suffix sums of worths along the ranking, then prefix sums of their
      // reciprocals: the item at position p collects sum_{j<=p, j<=K-2} 1/S_j.
      double suffix = 0.0;
      for (std::size_t j = k; j-- > 0;) suffix += w[(*order)[j]];
      double acc = 0.0;
      double running_suffix = suffix;
      for (std::size_t j = 0; j < k; ++j) {
        if (j <= k - 2) acc += 1.0 / running_suffix;
        inv_prefix[j] = acc;
        running_suffix -= w[(*order)[j]];
      }
      for (std::size_t p = 0; p < k; ++p) {
        denom[(*order)[p]] += weight * inv_prefix[p];
      }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      next[i] = wins[i] / denom[i];
      total += next[i];
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      next[i] /= total;
      delta = std::max(delta, std::abs(next[i] - w[i]));
    }
    w = next;
    if (delta < options.tol) {
      return WorthVector{rankings.items, w};
    }
  }
  throw PlackettLuceError("plackett_luce_fit: no convergence after max_iter",
                          WorthVector{rankings.items, w});
}

MannWhitneyResult mann_whitney_u(std::span<const double> a,
                                 std::span<const double> b) {
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  if (n1 < 5 || n2 < 5) {
    throw std::invalid_argument("mann_whitney_u: need >= 5 observations per sample");
  }
  const std::size_t n = n1 + n2;
  std::vector<std::pair<double, int>> pooled;  // (value, sample id)
  pooled.reserve(n);
  for (double v : a) pooled.emplace_back(v, 0);
  for (double v : b) pooled.emplace_back(v, 1);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  double rank_sum_a = 0.0;
  double tie_term = 0.0;  // sum of t^3 - t over tie groups
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) ++j;
    const double t = static_cast<double>(j - i);
    const double avg_rank = 0.5 * static_cast<double>(i + j + 1);  // 1-based
    for (std::size_t m = i; m < j; ++m) {
      if (pooled[m].second == 0) rank_sum_a += avg_rank;
    }
    tie_term += t * t * t - t;
    i = j;
  }

  const double dn1 = static_cast<double>(n1);
  const double dn2 = static_cast<double>(n2);
  const double dn = static_cast<double>(n);
  const double u = rank_sum_a - dn1 * (dn1 + 1.0) / 2.0;
  const double mean = dn1 * dn2 / 2.0;
  const double var =
      dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  MannWhitneyResult res;
  res.u = u;
  if (var <= 0.0) {
    res.p_one_sided = 0.5;  // everything tied
    return res;
  }
  const double z = (u + 0.5 - mean) / std::sqrt(var);
  res.p_one_sided = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  return res;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

namespace {

std::optional<WorthTable> worth_table(
    const OutcomeTable& outcomes,
    double ReplicateOutcome::*fitness_field, int ReplicateOutcome::*size_field,
    const PlackettLuceOptions& pl_options) {
  // Requires a complete grid: same operators everywhere, equal replicate
  // counts within each problem.
  std::vector<std::string> items;
  for (const auto& [problem, by_op] : outcomes) {
    std::vector<std::string> ops;
    for (const auto& [op, rows] : by_op) ops.push_back(op);
    if (items.empty()) {
      items = ops;
    } else if (items != ops) {
      return std::nullopt;
    }
  }
  if (items.size() < 2) return std::nullopt;

  WorthTable table;
  table.items = items;
  for (const auto& [problem, by_op] : outcomes) {
    std::vector<std::vector<double>> values;
    std::size_t r_count = by_op.begin()->second.size();
    for (const auto& [op, rows] : by_op) {
      if (rows.size() != r_count) return std::nullopt;
      std::vector<double> v;
      v.reserve(rows.size());
      for (const ReplicateOutcome& row : rows) {
        v.push_back(fitness_field ? row.*fitness_field
                                  : static_cast<double>(row.*size_field));
      }
      values.push_back(std::move(v));
    }
    RankingSet set =
        build_rankings(items, values, RankDirection::LowerIsBetter);
    WorthVector worths;
    try {
      worths = plackett_luce_fit(set, pl_options);
    } catch (const std::domain_error&) {
      // Totally separated data: the MLE does not exist. No worth table
      // rather than a silently distorted one.
      return std::nullopt;
    }
    table.problems.push_back(problem);
    table.worths.push_back(std::move(worths.worths));
  }

  const std::size_t k = items.size();
  const std::size_t p = table.problems.size();
  table.average.assign(k, 0.0);
  table.stddev.assign(k, 0.0);
  for (const auto& row : table.worths) {
    for (std::size_t i = 0; i < k; ++i) table.average[i] += row[i];
  }
  for (std::size_t i = 0; i < k; ++i) table.average[i] /= static_cast<double>(p);
  if (p > 1) {
    for (const auto& row : table.worths) {
      for (std::size_t i = 0; i < k; ++i) {
        const double d = row[i] - table.average[i];
        table.stddev[i] += d * d;
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      table.stddev[i] = std::sqrt(table.stddev[i] / static_cast<double>(p - 1));
    }
  }
  return table;
}

}  // namespace

Summary summarize(const OutcomeTable& outcomes,
                  const PlackettLuceOptions& pl_options) {
  if (outcomes.empty()) throw std::invalid_argument("summarize: no outcomes");
  Summary summary;
  for (const auto& [problem, by_op] : outcomes) {
    for (const auto& [op, rows] : by_op) {
      if (rows.empty()) continue;
      std::vector<double> fit, size, test;
      fit.reserve(rows.size());
      for (const ReplicateOutcome& row : rows) {
        fit.push_back(row.final_fitness);
        size.push_back(static_cast<double>(row.champion_size));
        test.push_back(row.test_fitness);
      }
      SummaryRow out;
      out.problem = problem;
      out.op = op;
      out.replicates = static_cast<int>(rows.size());
      out.median_fitness = quantile(fit, 0.5);
      out.q1_fitness = quantile(fit, 0.25);
      out.q3_fitness = quantile(fit, 0.75);
      out.median_size = quantile(size, 0.5);
      out.q1_size = quantile(size, 0.25);
      out.q3_size = quantile(size, 0.75);
      out.median_test_fitness = quantile(test, 0.5);
      summary.rows.push_back(std::move(out));
    }
  }
  summary.pl_fitness = worth_table(outcomes, &ReplicateOutcome::final_fitness,
                                   nullptr, pl_options);
  summary.pl_size =
      worth_table(outcomes, nullptr, &ReplicateOutcome::champion_size, pl_options);
  return summary;
}

}  // namespace cgpx
