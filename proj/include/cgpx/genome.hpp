#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cgpx/rng.hpp"

namespace cgpx {

enum class Op : std::uint8_t { Add, Sub, Mul, Aq };

constexpr int kArity = 2;

std::string_view op_name(Op op);
std::optional<Op> op_from_name(std::string_view name);

// Aq is the analytic quotient a / sqrt(1 + b^2): a smooth, total stand-in
// for division. Never produces inf/NaN from finite operands.
double apply_op(Op op, double a, double b);

enum class NodeKind : std::uint8_t { Input, Constant, Function, Output };

std::string_view node_kind_name(NodeKind kind);

// One row of the genome matrix. Rows live in a unified index registry:
// inputs, then constants, then function nodes, then outputs.
struct NodeRecord {
  int index = 0;
  NodeKind kind = NodeKind::Input;
  double constant_value = 0.0;  // Constant rows only
  Op op = Op::Add;              // Function rows only
  int operand0 = 0;             // Function and Output rows
  int operand1 = 0;             // Function rows only

  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

struct GenomeParams {
  int n_function_nodes = 64;
  std::vector<std::string> input_names = {"x"};
  std::vector<double> constants = {1.0};
  int n_outputs = 1;
  std::vector<Op> function_set = {Op::Add, Op::Sub, Op::Mul, Op::Aq};

  int n_inputs() const { return static_cast<int>(input_names.size()); }
  int n_terminals() const {
    return n_inputs() + static_cast<int>(constants.size());
  }
  // Registry index of function node 0.
  int function_base() const { return n_terminals(); }
  // Registry index of output node 0.
  int output_base() const { return n_terminals() + n_function_nodes; }
  int registry_size() const { return output_base() + n_outputs; }

  bool valid() const {
    return n_function_nodes >= 1 && n_outputs >= 1 && !function_set.empty() &&
           n_terminals() >= 1;
  }

  friend bool operator==(const GenomeParams&, const GenomeParams&) = default;
};

// Fixed-length program genome: a matrix of node rows over the registry.
struct Genome {
  GenomeParams params;
  std::vector<NodeRecord> nodes;

  const NodeRecord& function_node(int i) const {
    return nodes[params.function_base() + i];
  }
  NodeRecord& function_node(int i) { return nodes[params.function_base() + i]; }
  const NodeRecord& output_node(int j) const {
    return nodes[params.output_base() + j];
  }
  NodeRecord& output_node(int j) { return nodes[params.output_base() + j]; }

  friend bool operator==(const Genome&, const Genome&) = default;
};

// The same program as a flat integer gene string
// f0 a0,1 a0,2 ... f(n-1) a(n-1),1 a(n-1),2 o0 ... o(m-1).
// Operator genes index into function_set; connection genes are registry
// indices. Length is 3n + m.
struct FlatGenome {
  GenomeParams params;
  std::vector<int> genes;

  friend bool operator==(const FlatGenome&, const FlatGenome&) = default;
};

// Which function nodes are reachable backward from an output.
struct ActiveMask {
  std::vector<bool> flags;  // one per function node
  int active_count = 0;
};

// Program outputs over a set of evaluation points.
struct Semantics {
  std::vector<double> values;

  friend bool operator==(const Semantics&, const Semantics&) = default;
};

struct Violation {
  int index = -1;
  std::string message;
};

// Uniform random genome: operators from function_set, operands from the
// strictly earlier registry range. Always yields a valid genome.
Genome random_genome(const GenomeParams& params, Rng& rng);

// Every violated invariant, with the offending registry index. Empty = ok.
std::vector<Violation> validate(const Genome& g);

ActiveMask active_mask(const Genome& g);

struct Evaluation {
  double output = 0.0;        // first output's value
  std::vector<double> trace;  // per registry row; inactive function rows stay 0
};

// Feed-forward evaluation in registry order. Only active nodes are computed;
// non-finite intermediates propagate to the output.
Evaluation evaluate(const Genome& g, std::span<const double> inputs);

// values[k] = evaluate(g, xs[k]).output, shared decode across points.
Semantics evaluate_batch(const Genome& g, std::span<const double> xs);
Semantics evaluate_batch(const Genome& g,
                         const std::vector<std::vector<double>>& xs);

// 1 - r^2 with r the Pearson correlation of outputs vs targets, in [0, 1].
// Degenerate cases (non-finite outputs, zero variance on either side) score
// the worst possible 1.0. Throws std::invalid_argument on length mismatch.
double fitness(const Semantics& outputs, std::span<const double> targets);

FlatGenome to_flat(const Genome& g);

// Inverse of to_flat. Throws std::invalid_argument on wrong-length gene
// sequences or out-of-range genes.
Genome from_flat(const FlatGenome& flat);

}  // namespace cgpx
