#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>

#include "cgpx/genome.hpp"
#include "cgpx/rng.hpp"

namespace cgpx {

enum class CrossoverKind : std::uint8_t {
  OnePointNode,  // "1x"   one-point on whole node rows
  OnePointFlat,  // "1x1d" one-point on the flat gene string
  UniformNode,   // "ux"   per-row Bernoulli(0.5) swap
  UniformFlat,   // "ux1d" per-gene Bernoulli(0.5) swap
  Subgraph,      // "sgx"  active-range one-point with connection repair
};

enum class MutationKind : std::uint8_t {
  Point,  // "pm" redraw one gene of one node
  Node,   // "nm" replace one node wholesale
};

std::string_view crossover_name(CrossoverKind kind);
std::optional<CrossoverKind> crossover_from_name(std::string_view name);
std::string_view mutation_name(MutationKind kind);
std::optional<MutationKind> mutation_from_name(std::string_view name);

using GenomePair = std::pair<Genome, Genome>;

// One-point crossover exchanging whole node rows. The cut c is uniform over
// 0..n; child1 takes p1's function rows below c and p2's rows (and outputs)
// from c on, child2 symmetric. Nodes are never split.
GenomePair one_point_node(const Genome& p1, const Genome& p2, Rng& rng);

// One-point crossover on the flat gene string: the cut may fall inside a
// node, so a child node can mix one parent's operator with the other's
// operands.
GenomePair one_point_flat(const Genome& p1, const Genome& p2, Rng& rng);

// Per-function-row (and per-output-row) independent swap with probability 0.5.
GenomePair uniform_node(const Genome& p1, const Genome& p2, Rng& rng);

// Per-gene independent swap with probability 0.5 on the flat form.
GenomePair uniform_flat(const Genome& p1, const Genome& p2, Rng& rng);

// Subgraph crossover: one-point node exchange with the cut restricted to the
// parents' active range, followed by a connection repair that keeps both
// donated subgraphs active. Falls back to one_point_node when a parent has no
// active function node.
GenomePair subgraph_crossover(const Genome& p1, const Genome& p2, Rng& rng);

// Introspection variant used by tests and diagnostics.
struct SubgraphOutcome {
  GenomePair children;
  bool fell_back = false;           // parent without active nodes
  int cut = -1;                     // function-node cut index
  std::array<int, 2> rewired = {-1, -1};  // rewired function index per child
};
SubgraphOutcome subgraph_crossover_detail(const Genome& p1, const Genome& p2,
                                          Rng& rng);

GenomePair crossover(CrossoverKind kind, const Genome& p1, const Genome& p2,
                     Rng& rng);

// Redraws a single gene (operator or one operand) of one uniformly chosen
// function or output node. The redraw may reproduce the old value.
Genome point_mutation(const Genome& g, Rng& rng);

// Replaces one uniformly chosen function node with a fresh random node
// (operator and both operands redrawn); a chosen output node has its operand
// redrawn.
Genome node_mutation(const Genome& g, Rng& rng);

Genome mutate(MutationKind kind, const Genome& g, Rng& rng);

}  // namespace cgpx
