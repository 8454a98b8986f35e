// Independent reference implementations the test suites check the library
// against. Nothing here may call back into the code paths under test, so the
// arithmetic is spelled out rather than shared.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <tuple>
#include <vector>

#include "cgpx/genome.hpp"
#include "cgpx/stats.hpp"

namespace oracles {

// --- recursive tree interpreter ------------------------------------------

inline double tree_value(const cgpx::Genome& g, int idx,
                         std::span<const double> x) {
  const cgpx::NodeRecord& rec = g.nodes[idx];
  switch (rec.kind) {
    case cgpx::NodeKind::Input:
      return x[rec.index];
    case cgpx::NodeKind::Constant:
      return rec.constant_value;
    case cgpx::NodeKind::Function: {
      const double a = tree_value(g, rec.operand0, x);
      const double b = tree_value(g, rec.operand1, x);
      switch (rec.op) {
        case cgpx::Op::Add: return a + b;
        case cgpx::Op::Sub: return a - b;
        case cgpx::Op::Mul: return a * b;
        case cgpx::Op::Aq: return a / std::sqrt(1.0 + b * b);
      }
      return 0.0;
    }
    case cgpx::NodeKind::Output:
      return tree_value(g, rec.operand0, x);
  }
  return 0.0;
}

inline double tree_evaluate(const cgpx::Genome& g, double x) {
  return tree_value(g, g.params.output_base(), std::span<const double>(&x, 1));
}

// --- reachability by explicit graph search --------------------------------

inline std::vector<bool> reachable_function_nodes(const cgpx::Genome& g) {
  const int base = g.params.function_base();
  std::vector<bool> visited(g.params.registry_size(), false);
  std::vector<int> queue;
  for (int j = 0; j < g.params.n_outputs; ++j) {
    queue.push_back(g.output_node(j).operand0);
  }
  while (!queue.empty()) {
    const int idx = queue.back();
    queue.pop_back();
    if (visited[idx]) continue;
    visited[idx] = true;
    const cgpx::NodeRecord& rec = g.nodes[idx];
    if (rec.kind == cgpx::NodeKind::Function) {
      queue.push_back(rec.operand0);
      queue.push_back(rec.operand1);
    }
  }
  std::vector<bool> flags(g.params.n_function_nodes, false);
  for (int i = 0; i < g.params.n_function_nodes; ++i) flags[i] = visited[base + i];
  return flags;
}

// --- textbook two-pass Pearson fitness ------------------------------------

inline double pearson_fitness(std::span<const double> a,
                              std::span<const double> b) {
  const std::size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (a[i] - ma) * (b[i] - mb);
    da += (a[i] - ma) * (a[i] - ma);
    db += (b[i] - mb) * (b[i] - mb);
  }
  const double r = num / (std::sqrt(da) * std::sqrt(db));
  return 1.0 - r * r;
}

// --- function-row multisets for crossover bookkeeping ----------------------

using RowKey = std::tuple<int, int, int, int>;  // (op, operand0, operand1, index)

inline std::vector<RowKey> function_rows(const cgpx::Genome& g,
                                         bool keyed_by_index = false) {
  std::vector<RowKey> rows;
  for (int i = 0; i < g.params.n_function_nodes; ++i) {
    const cgpx::NodeRecord& rec = g.function_node(i);
    rows.emplace_back(static_cast<int>(rec.op), rec.operand0, rec.operand1,
                      keyed_by_index ? rec.index : 0);
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

inline std::vector<RowKey> combined_function_rows(const cgpx::Genome& a,
                                                  const cgpx::Genome& b) {
  std::vector<RowKey> rows = function_rows(a);
  std::vector<RowKey> more = function_rows(b);
  rows.insert(rows.end(), more.begin(), more.end());
  std::sort(rows.begin(), rows.end());
  return rows;
}

// --- Plackett-Luce likelihood grid search over the 2-simplex ---------------

// K = 3 only. Returns the grid point (step 0.001) maximizing the likelihood.
inline std::vector<double> pl_grid_search_3(
    const std::vector<std::vector<int>>& rankings) {
  // Collapse to counts per permutation: the likelihood only depends on them.
  std::map<std::vector<int>, int> counts;
  for (const auto& r : rankings) counts[r] += 1;

  const double step = 0.001;
  double best_ll = -1e300;
  std::vector<double> best = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  for (int ia = 1; ia < 999; ++ia) {
    for (int ib = 1; ib < 1000 - ia; ++ib) {
      const double w[3] = {ia * step, ib * step, 1.0 - ia * step - ib * step};
      double ll = 0.0;
      for (const auto& [order, count] : counts) {
        const double first = w[order[0]];
        const double second = w[order[1]];
        const double third = w[order[2]];
        ll += count * (std::log(first) - std::log(first + second + third) +
                       std::log(second) - std::log(second + third));
      }
      if (ll > best_ll) {
        best_ll = ll;
        best = {w[0], w[1], w[2]};
      }
    }
  }
  return best;
}

// --- exact Mann-Whitney ----------------------------------------------------

// U of sample a against b by direct pair counting.
inline double mwu_pair_count(std::span<const double> a,
                             std::span<const double> b) {
  double u = 0.0;
  for (double x : a) {
    for (double y : b) {
      if (x < y) u += 1.0;
      else if (x == y) u += 0.5;
    }
  }
  return u;
}

// Exact one-sided p-value P(U <= u_obs) by enumerating all label assignments.
inline double mwu_exact_p(std::span<const double> a, std::span<const double> b) {
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size();
  const std::size_t n1 = a.size();
  const double u_obs = mwu_pair_count(a, b);
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + n1, true);
  std::sort(pick.begin(), pick.end());  // canonical order for permutations
  long total = 0, at_most = 0;
  do {
    std::vector<double> xa, xb;
    for (std::size_t i = 0; i < n; ++i) {
      (pick[i] ? xa : xb).push_back(pooled[i]);
    }
    ++total;
    if (mwu_pair_count(xa, xb) <= u_obs + 1e-12) ++at_most;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return static_cast<double>(at_most) / static_cast<double>(total);
}

}  // namespace oracles
