#include "cgpx/genome.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace cgpx {

std::string_view op_name(Op op) {
  switch (op) {
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::Aq: return "aq";
  }
  return "?";
}

std::optional<Op> op_from_name(std::string_view name) {
  if (name == "add") return Op::Add;
  if (name == "sub") return Op::Sub;
  if (name == "mul") return Op::Mul;
  if (name == "aq") return Op::Aq;
  return std::nullopt;
}

std::string_view node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Input: return "input";
    case NodeKind::Constant: return "constant";
    case NodeKind::Function: return "function";
    case NodeKind::Output: return "output";
  }
  return "?";
}

double apply_op(Op op, double a, double b) {
  switch (op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Aq: return a / std::sqrt(1.0 + b * b);
  }
  return 0.0;
}

namespace {

NodeRecord random_function_record(const GenomeParams& params, int fn_index,
                                  Rng& rng) {
  NodeRecord rec;
  rec.index = params.function_base() + fn_index;
  rec.kind = NodeKind::Function;
  rec.op = params.function_set[rng.index(params.function_set.size())];
  rec.operand0 = rng.index(static_cast<std::size_t>(rec.index));
  rec.operand1 = rng.index(static_cast<std::size_t>(rec.index));
  return rec;
}

int random_output_operand(const GenomeParams& params, Rng& rng) {
  return rng.index(static_cast<std::size_t>(params.output_base()));
}

}  // namespace

Genome random_genome(const GenomeParams& params, Rng& rng) {
  Genome g;
  g.params = params;
  g.nodes.reserve(params.registry_size());
  int idx = 0;
  for (int i = 0; i < params.n_inputs(); ++i, ++idx) {
    NodeRecord rec;
    rec.index = idx;
    rec.kind = NodeKind::Input;
    g.nodes.push_back(rec);
  }
  for (double c : params.constants) {
    NodeRecord rec;
    rec.index = idx++;
    rec.kind = NodeKind::Constant;
    rec.constant_value = c;
    g.nodes.push_back(rec);
  }
  for (int i = 0; i < params.n_function_nodes; ++i, ++idx) {
    g.nodes.push_back(random_function_record(params, i, rng));
  }
  for (int j = 0; j < params.n_outputs; ++j, ++idx) {
    NodeRecord rec;
    rec.index = idx;
    rec.kind = NodeKind::Output;
    rec.operand0 = random_output_operand(params, rng);
    g.nodes.push_back(rec);
  }
  return g;
}

std::vector<Violation> validate(const Genome& g) {
  std::vector<Violation> out;
  const GenomeParams& p = g.params;
  if (!p.valid()) {
    out.push_back({-1, "invalid genome params"});
    return out;
  }
  if (static_cast<int>(g.nodes.size()) != p.registry_size()) {
    out.push_back({-1, "registry length != |I| + n + |O|"});
    return out;
  }
  for (int i = 0; i < p.registry_size(); ++i) {
    const NodeRecord& rec = g.nodes[i];
    if (rec.index != i) {
      out.push_back({i, "index field does not match registry position"});
    }
    NodeKind expected;
    if (i < p.n_inputs()) {
      expected = NodeKind::Input;
    } else if (i < p.n_terminals()) {
      expected = NodeKind::Constant;
    } else if (i < p.output_base()) {
      expected = NodeKind::Function;
    } else {
      expected = NodeKind::Output;
    }
    if (rec.kind != expected) {
      out.push_back({i, "node kind does not match registry layout"});
      continue;
    }
    switch (rec.kind) {
      case NodeKind::Input:
      case NodeKind::Constant:
        break;
      case NodeKind::Function: {
        bool known = false;
        for (Op op : p.function_set) known = known || op == rec.op;
        if (!known) out.push_back({i, "operator not in function set"});
        if (rec.operand0 < 0 || rec.operand0 >= i) {
          out.push_back({i, "operand0 out of range [0, index)"});
        }
        if (rec.operand1 < 0 || rec.operand1 >= i) {
          out.push_back({i, "operand1 out of range [0, index)"});
        }
        break;
      }
      case NodeKind::Output:
        if (rec.operand0 < 0 || rec.operand0 >= p.output_base()) {
          out.push_back({i, "output operand must reference a terminal or function node"});
        }
        break;
    }
  }
  return out;
}

ActiveMask active_mask(const Genome& g) {
  const GenomeParams& p = g.params;
  const int base = p.function_base();
  ActiveMask mask;
  mask.flags.assign(p.n_function_nodes, false);
  for (int j = 0; j < p.n_outputs; ++j) {
    const int ref = g.output_node(j).operand0;
    if (ref >= base) mask.flags[ref - base] = true;
  }
  // Operands point strictly downward, so one backward sweep closes the set.
  for (int i = p.n_function_nodes - 1; i >= 0; --i) {
    if (!mask.flags[i]) continue;
    const NodeRecord& rec = g.function_node(i);
    if (rec.operand0 >= base) mask.flags[rec.operand0 - base] = true;
    if (rec.operand1 >= base) mask.flags[rec.operand1 - base] = true;
  }
  for (bool f : mask.flags) mask.active_count += f ? 1 : 0;
  return mask;
}

namespace {

// Forward pass over active nodes only. `values` must be registry-sized and
// zero-initialized beyond the terminal rows.
void forward_pass(const Genome& g, const ActiveMask& mask,
                  std::span<const double> inputs, std::vector<double>& values) {
  const GenomeParams& p = g.params;
  const int base = p.function_base();
  for (int i = 0; i < p.n_inputs(); ++i) values[i] = inputs[i];
  for (int c = 0; c < static_cast<int>(p.constants.size()); ++c) {
    values[p.n_inputs() + c] = p.constants[c];
  }
  for (int i = 0; i < p.n_function_nodes; ++i) {
    if (!mask.flags[i]) continue;
    const NodeRecord& rec = g.function_node(i);
    values[base + i] = apply_op(rec.op, values[rec.operand0], values[rec.operand1]);
  }
  for (int j = 0; j < p.n_outputs; ++j) {
    values[p.output_base() + j] = values[g.output_node(j).operand0];
  }
}

}  // namespace

Evaluation evaluate(const Genome& g, std::span<const double> inputs) {
  if (static_cast<int>(inputs.size()) != g.params.n_inputs()) {
    throw std::invalid_argument("evaluate: input arity mismatch");
  }
  const ActiveMask mask = active_mask(g);
  Evaluation ev;
  ev.trace.assign(g.params.registry_size(), 0.0);
  forward_pass(g, mask, inputs, ev.trace);
  ev.output = ev.trace[g.params.output_base()];
  return ev;
}

Semantics evaluate_batch(const Genome& g, std::span<const double> xs) {
  if (g.params.n_inputs() != 1) {
    throw std::invalid_argument("evaluate_batch(span): genome is not single-input");
  }
  const ActiveMask mask = active_mask(g);
  Semantics sem;
  sem.values.reserve(xs.size());
  std::vector<double> values(g.params.registry_size(), 0.0);
  for (double x : xs) {
    forward_pass(g, mask, std::span<const double>(&x, 1), values);
    sem.values.push_back(values[g.params.output_base()]);
  }
  return sem;
}

Semantics evaluate_batch(const Genome& g,
                         const std::vector<std::vector<double>>& xs) {
  const ActiveMask mask = active_mask(g);
  Semantics sem;
  sem.values.reserve(xs.size());
  std::vector<double> values(g.params.registry_size(), 0.0);
  for (const auto& row : xs) {
    if (static_cast<int>(row.size()) != g.params.n_inputs()) {
      throw std::invalid_argument("evaluate_batch: input arity mismatch");
    }
    forward_pass(g, mask, row, values);
    sem.values.push_back(values[g.params.output_base()]);
  }
  return sem;
}

double fitness(const Semantics& outputs, std::span<const double> targets) {
  const std::size_t n = outputs.values.size();
  if (n != targets.size()) {
    throw std::invalid_argument("fitness: outputs/targets length mismatch");
  }
  for (double v : outputs.values) {
    if (!std::isfinite(v)) return 1.0;
  }
  double mean_o = 0.0, mean_t = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mean_o += outputs.values[k];
    mean_t += targets[k];
  }
  mean_o /= static_cast<double>(n);
  mean_t /= static_cast<double>(n);
  double cov = 0.0, var_o = 0.0, var_t = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double do_ = outputs.values[k] - mean_o;
    const double dt = targets[k] - mean_t;
    cov += do_ * dt;
    var_o += do_ * do_;
    var_t += dt * dt;
  }
  if (var_o == 0.0 || var_t == 0.0) return 1.0;
  // r^2 formed without the square root: identical outputs/targets then give
  // exactly r^2 = 1 and fitness 0.
  const double r2 = (cov * cov) / (var_o * var_t);
  if (!std::isfinite(r2)) return 1.0;
  const double f = 1.0 - r2;
  if (f < 0.0) return 0.0;
  if (f > 1.0) return 1.0;
  return f;
}

FlatGenome to_flat(const Genome& g) {
  const GenomeParams& p = g.params;
  FlatGenome flat;
  flat.params = p;
  flat.genes.reserve(3 * p.n_function_nodes + p.n_outputs);
  for (int i = 0; i < p.n_function_nodes; ++i) {
    const NodeRecord& rec = g.function_node(i);
    int op_idx = 0;
    for (int k = 0; k < static_cast<int>(p.function_set.size()); ++k) {
      if (p.function_set[k] == rec.op) op_idx = k;
    }
    flat.genes.push_back(op_idx);
    flat.genes.push_back(rec.operand0);
    flat.genes.push_back(rec.operand1);
  }
  for (int j = 0; j < p.n_outputs; ++j) {
    flat.genes.push_back(g.output_node(j).operand0);
  }
  return flat;
}

Genome from_flat(const FlatGenome& flat) {
  const GenomeParams& p = flat.params;
  if (!p.valid()) throw std::invalid_argument("from_flat: invalid params");
  const int expected = 3 * p.n_function_nodes + p.n_outputs;
  if (static_cast<int>(flat.genes.size()) != expected) {
    throw std::invalid_argument("from_flat: gene sequence has wrong length");
  }
  Genome g;
  g.params = p;
  g.nodes.reserve(p.registry_size());
  int idx = 0;
  for (int i = 0; i < p.n_inputs(); ++i, ++idx) {
    NodeRecord rec;
    rec.index = idx;
    rec.kind = NodeKind::Input;
    g.nodes.push_back(rec);
  }
  for (double c : p.constants) {
    NodeRecord rec;
    rec.index = idx++;
    rec.kind = NodeKind::Constant;
    rec.constant_value = c;
    g.nodes.push_back(rec);
  }
  for (int i = 0; i < p.n_function_nodes; ++i, ++idx) {
    const int op_gene = flat.genes[3 * i];
    const int a0 = flat.genes[3 * i + 1];
    const int a1 = flat.genes[3 * i + 2];
    if (op_gene < 0 || op_gene >= static_cast<int>(p.function_set.size())) {
      throw std::invalid_argument("from_flat: operator gene out of range");
    }
    if (a0 < 0 || a0 >= idx || a1 < 0 || a1 >= idx) {
      throw std::invalid_argument("from_flat: connection gene out of range");
    }
    NodeRecord rec;
    rec.index = idx;
    rec.kind = NodeKind::Function;
    rec.op = p.function_set[op_gene];
    rec.operand0 = a0;
    rec.operand1 = a1;
    g.nodes.push_back(rec);
  }
  for (int j = 0; j < p.n_outputs; ++j, ++idx) {
    const int o = flat.genes[3 * p.n_function_nodes + j];
    if (o < 0 || o >= p.output_base()) {
      throw std::invalid_argument("from_flat: output gene out of range");
    }
    NodeRecord rec;
    rec.index = idx;
    rec.kind = NodeKind::Output;
    rec.operand0 = o;
    g.nodes.push_back(rec);
  }
  return g;
}

}  // namespace cgpx
