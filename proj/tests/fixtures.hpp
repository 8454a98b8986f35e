// Shared test fixtures.
#pragma once

#include "cgpx/genome.hpp"
#include "cgpx/rng.hpp"

namespace fixtures {

// The worked example program: node 2 = add(x, 1), node 3 = mul(2, 2) left
// inactive, output wired to node 2. Computes x + 1. Extra function nodes
// beyond the first two are filled with inactive aq(0, 1) rows.
inline cgpx::Genome example_program(int n_function_nodes = 2) {
  cgpx::GenomeParams params;
  params.n_function_nodes = n_function_nodes;
  cgpx::Genome g;
  g.params = params;
  int idx = 0;
  g.nodes.push_back({idx++, cgpx::NodeKind::Input, 0.0, cgpx::Op::Add, 0, 0});
  g.nodes.push_back({idx++, cgpx::NodeKind::Constant, 1.0, cgpx::Op::Add, 0, 0});
  g.nodes.push_back({idx++, cgpx::NodeKind::Function, 0.0, cgpx::Op::Add, 0, 1});
  g.nodes.push_back({idx++, cgpx::NodeKind::Function, 0.0, cgpx::Op::Mul, 2, 2});
  for (int i = 2; i < n_function_nodes; ++i) {
    g.nodes.push_back({idx++, cgpx::NodeKind::Function, 0.0, cgpx::Op::Aq, 0, 1});
  }
  g.nodes.push_back({idx++, cgpx::NodeKind::Output, 0.0, cgpx::Op::Add, 2, 0});
  return g;
}

// Small genome params with a registry size the exhaustive oracles can chew.
inline cgpx::GenomeParams small_params(int n_function_nodes) {
  cgpx::GenomeParams params;
  params.n_function_nodes = n_function_nodes;
  return params;
}

inline cgpx::Genome random_small(int n_function_nodes, cgpx::Rng& rng) {
  return cgpx::random_genome(small_params(n_function_nodes), rng);
}

}  // namespace fixtures
