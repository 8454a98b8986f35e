#include "cgpx/variation.hpp"

#include <algorithm>
#include <stdexcept>

namespace cgpx {

std::string_view crossover_name(CrossoverKind kind) {
  switch (kind) {
    case CrossoverKind::OnePointNode: return "1x";
    case CrossoverKind::OnePointFlat: return "1x1d";
    case CrossoverKind::UniformNode: return "ux";
    case CrossoverKind::UniformFlat: return "ux1d";
    case CrossoverKind::Subgraph: return "sgx";
  }
  return "?";
}

std::optional<CrossoverKind> crossover_from_name(std::string_view name) {
  if (name == "1x") return CrossoverKind::OnePointNode;
  if (name == "1x1d") return CrossoverKind::OnePointFlat;
  if (name == "ux") return CrossoverKind::UniformNode;
  if (name == "ux1d") return CrossoverKind::UniformFlat;
  if (name == "sgx") return CrossoverKind::Subgraph;
  return std::nullopt;
}

std::string_view mutation_name(MutationKind kind) {
  return kind == MutationKind::Point ? "pm" : "nm";
}

std::optional<MutationKind> mutation_from_name(std::string_view name) {
  if (name == "pm") return MutationKind::Point;
  if (name == "nm") return MutationKind::Node;
  return std::nullopt;
}

namespace {

void require_shared_params(const Genome& p1, const Genome& p2) {
  if (!(p1.params == p2.params)) {
    throw std::invalid_argument("crossover: parents have mismatched params");
  }
}

// Exchange of whole rows from registry position `split` on (function tail and
// all outputs).
GenomePair exchange_tails(const Genome& p1, const Genome& p2, int split) {
  Genome c1 = p1;
  Genome c2 = p2;
  const int end = p1.params.registry_size();
  for (int i = split; i < end; ++i) std::swap(c1.nodes[i], c2.nodes[i]);
  return {std::move(c1), std::move(c2)};
}

}  // namespace

GenomePair one_point_node(const Genome& p1, const Genome& p2, Rng& rng) {
  require_shared_params(p1, p2);
  const int n = p1.params.n_function_nodes;
  const int cut = rng.index(static_cast<std::size_t>(n) + 1);
  return exchange_tails(p1, p2, p1.params.function_base() + cut);
}

GenomePair one_point_flat(const Genome& p1, const Genome& p2, Rng& rng) {
  require_shared_params(p1, p2);
  FlatGenome f1 = to_flat(p1);
  FlatGenome f2 = to_flat(p2);
  const std::size_t len = f1.genes.size();
  const std::size_t cut = rng.below(len + 1);
  for (std::size_t i = cut; i < len; ++i) std::swap(f1.genes[i], f2.genes[i]);
  return {from_flat(f1), from_flat(f2)};
}

GenomePair uniform_node(const Genome& p1, const Genome& p2, Rng& rng) {
  require_shared_params(p1, p2);
  Genome c1 = p1;
  Genome c2 = p2;
  const int base = p1.params.function_base();
  const int end = p1.params.registry_size();
  for (int i = base; i < end; ++i) {
    if (rng.chance(0.5)) std::swap(c1.nodes[i], c2.nodes[i]);
  }
  return {std::move(c1), std::move(c2)};
}

GenomePair uniform_flat(const Genome& p1, const Genome& p2, Rng& rng) {
  require_shared_params(p1, p2);
  FlatGenome f1 = to_flat(p1);
  FlatGenome f2 = to_flat(p2);
  for (std::size_t i = 0; i < f1.genes.size(); ++i) {
    if (rng.chance(0.5)) std::swap(f1.genes[i], f2.genes[i]);
  }
  return {from_flat(f1), from_flat(f2)};
}

namespace {

int highest_active_below(const ActiveMask& mask, int cut) {
  for (int i = cut - 1; i >= 0; --i) {
    if (mask.flags[i]) return i;
  }
  return -1;
}

int first_active_at_or_after(const ActiveMask& mask, int cut) {
  for (int i = cut; i < static_cast<int>(mask.flags.size()); ++i) {
    if (mask.flags[i]) return i;
  }
  return -1;
}

// Repairs one child after the node exchange at `cut`: the first node that is
// active under the tail donor's mask gets its first connection rewired to the
// last node active under the head donor's mask, or to a random terminal when
// the head segment carries no active node. The repaired node stays reachable
// from the child's outputs because every path into it runs through indices
// above the cut, which the tail donor supplied intact.
int rewire_child(Genome& child, const ActiveMask& head_mask,
                 const ActiveMask& tail_mask, int cut, Rng& rng) {
  const int tail_fix = first_active_at_or_after(tail_mask, cut);
  if (tail_fix < 0) return -1;
  const int head_link = highest_active_below(head_mask, cut);
  const int base = child.params.function_base();
  if (head_link >= 0) {
    child.function_node(tail_fix).operand0 = base + head_link;
  } else {
    child.function_node(tail_fix).operand0 = rng.index(static_cast<std::size_t>(base));
  }
  return tail_fix;
}

}  // namespace

SubgraphOutcome subgraph_crossover_detail(const Genome& p1, const Genome& p2,
                                          Rng& rng) {
  require_shared_params(p1, p2);
  const ActiveMask m1 = active_mask(p1);
  const ActiveMask m2 = active_mask(p2);
  SubgraphOutcome out;
  if (m1.active_count == 0 || m2.active_count == 0) {
    out.children = one_point_node(p1, p2, rng);
    out.fell_back = true;
    return out;
  }

  const int min1 = first_active_at_or_after(m1, 0);
  const int min2 = first_active_at_or_after(m2, 0);
  const int max1 = highest_active_below(m1, p1.params.n_function_nodes);
  const int max2 = highest_active_below(m2, p2.params.n_function_nodes);
  const int lo = std::min(min1, min2);
  const int hi = std::max(max1, max2);
  int cut = lo + rng.index(static_cast<std::size_t>(hi - lo) + 1);
  cut = std::min(cut, std::min(max1, max2));  // both tails keep an active node

  out.cut = cut;
  out.children = exchange_tails(p1, p2, p1.params.function_base() + cut);
  out.rewired[0] = rewire_child(out.children.first, m1, m2, cut, rng);
  out.rewired[1] = rewire_child(out.children.second, m2, m1, cut, rng);
  return out;
}

GenomePair subgraph_crossover(const Genome& p1, const Genome& p2, Rng& rng) {
  return subgraph_crossover_detail(p1, p2, rng).children;
}

GenomePair crossover(CrossoverKind kind, const Genome& p1, const Genome& p2,
                     Rng& rng) {
  switch (kind) {
    case CrossoverKind::OnePointNode: return one_point_node(p1, p2, rng);
    case CrossoverKind::OnePointFlat: return one_point_flat(p1, p2, rng);
    case CrossoverKind::UniformNode: return uniform_node(p1, p2, rng);
    case CrossoverKind::UniformFlat: return uniform_flat(p1, p2, rng);
    case CrossoverKind::Subgraph: return subgraph_crossover(p1, p2, rng);
  }
  throw std::invalid_argument("crossover: unknown kind");
}

Genome point_mutation(const Genome& g, Rng& rng) {
  Genome out = g;
  const GenomeParams& p = g.params;
  const int n = p.n_function_nodes;
  const int target = rng.index(static_cast<std::size_t>(n + p.n_outputs));
  if (target < n) {
    NodeRecord& rec = out.function_node(target);
    switch (rng.index(3)) {
      case 0:
        rec.op = p.function_set[rng.index(p.function_set.size())];
        break;
      case 1:
        rec.operand0 = rng.index(static_cast<std::size_t>(rec.index));
        break;
      default:
        rec.operand1 = rng.index(static_cast<std::size_t>(rec.index));
        break;
    }
  } else {
    NodeRecord& rec = out.output_node(target - n);
    rec.operand0 = rng.index(static_cast<std::size_t>(p.output_base()));
  }
  return out;
}

Genome node_mutation(const Genome& g, Rng& rng) {
  Genome out = g;
  const GenomeParams& p = g.params;
  const int n = p.n_function_nodes;
  const int target = rng.index(static_cast<std::size_t>(n + p.n_outputs));
  if (target < n) {
    NodeRecord& rec = out.function_node(target);
    rec.op = p.function_set[rng.index(p.function_set.size())];
    rec.operand0 = rng.index(static_cast<std::size_t>(rec.index));
    rec.operand1 = rng.index(static_cast<std::size_t>(rec.index));
  } else {
    NodeRecord& rec = out.output_node(target - n);
    rec.operand0 = rng.index(static_cast<std::size_t>(p.output_base()));
  }
  return out;
}

Genome mutate(MutationKind kind, const Genome& g, Rng& rng) {
  return kind == MutationKind::Point ? point_mutation(g, rng)
                                     : node_mutation(g, rng);
}

}  // namespace cgpx
