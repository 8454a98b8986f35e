#include "cgpx/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cgpx {

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

namespace {

json params_to_json(const GenomeParams& p) {
  json j;
  j["n_function_nodes"] = p.n_function_nodes;
  j["input_names"] = p.input_names;
  j["constants"] = p.constants;
  j["n_outputs"] = p.n_outputs;
  json fset = json::array();
  for (Op op : p.function_set) fset.push_back(std::string(op_name(op)));
  j["function_set"] = std::move(fset);
  return j;
}

GenomeParams params_from_json(const json& j) {
  GenomeParams p;
  p.n_function_nodes = j.at("n_function_nodes").get<int>();
  p.input_names = j.at("input_names").get<std::vector<std::string>>();
  p.constants = j.at("constants").get<std::vector<double>>();
  p.n_outputs = j.at("n_outputs").get<int>();
  p.function_set.clear();
  for (const auto& name : j.at("function_set")) {
    const auto op = op_from_name(name.get<std::string>());
    if (!op) {
      throw std::invalid_argument("genome json: unknown operator name");
    }
    p.function_set.push_back(*op);
  }
  if (!p.valid()) throw std::invalid_argument("genome json: invalid params");
  return p;
}

}  // namespace

json genome_to_json(const Genome& g) {
  json rows = json::array();
  for (const NodeRecord& rec : g.nodes) {
    json row;
    row["index"] = rec.index;
    row["kind"] = std::string(node_kind_name(rec.kind));
    switch (rec.kind) {
      case NodeKind::Input:
        row["name"] = g.params.input_names[rec.index];
        break;
      case NodeKind::Constant:
        row["value"] = rec.constant_value;
        break;
      case NodeKind::Function:
        row["op"] = std::string(op_name(rec.op));
        row["operands"] = {rec.operand0, rec.operand1};
        break;
      case NodeKind::Output:
        row["operands"] = {rec.operand0};
        break;
    }
    rows.push_back(std::move(row));
  }
  json j;
  j["params"] = params_to_json(g.params);
  j["nodes"] = std::move(rows);
  return j;
}

Genome genome_from_json(const json& j) {
  Genome g;
  g.params = params_from_json(j.at("params"));
  const json& rows = j.at("nodes");
  if (static_cast<int>(rows.size()) != g.params.registry_size()) {
    throw std::invalid_argument("genome json: wrong registry length");
  }
  g.nodes.reserve(rows.size());
  for (const json& row : rows) {
    NodeRecord rec;
    rec.index = row.at("index").get<int>();
    const std::string kind = row.at("kind").get<std::string>();
    if (kind == "input") {
      rec.kind = NodeKind::Input;
    } else if (kind == "constant") {
      rec.kind = NodeKind::Constant;
      rec.constant_value = row.at("value").get<double>();
    } else if (kind == "function") {
      rec.kind = NodeKind::Function;
      const auto op = op_from_name(row.at("op").get<std::string>());
      if (!op) throw std::invalid_argument("genome json: unknown operator name");
      rec.op = *op;
      const auto operands = row.at("operands").get<std::vector<int>>();
      if (operands.size() != kArity) {
        throw std::invalid_argument("genome json: function row needs 2 operands");
      }
      rec.operand0 = operands[0];
      rec.operand1 = operands[1];
    } else if (kind == "output") {
      rec.kind = NodeKind::Output;
      const auto operands = row.at("operands").get<std::vector<int>>();
      if (operands.size() != 1) {
        throw std::invalid_argument("genome json: output row needs 1 operand");
      }
      rec.operand0 = operands[0];
    } else {
      throw std::invalid_argument("genome json: unknown node kind");
    }
    g.nodes.push_back(rec);
  }
  const auto violations = validate(g);
  if (!violations.empty()) {
    throw std::invalid_argument("genome json: " + violations.front().message);
  }
  return g;
}

json flat_genome_to_json(const FlatGenome& flat) { return json(flat.genes); }

FlatGenome flat_genome_from_json(const json& j, const GenomeParams& params) {
  FlatGenome flat;
  flat.params = params;
  flat.genes = j.get<std::vector<int>>();
  return flat;
}

json evo_config_to_json(const EvoConfig& config) {
  json j;
  j["strategy"] = std::string(strategy_name(config.strategy));
  j["mu"] = config.strategy == Strategy::OnePlusLambda ? 1 : config.mu;
  j["lambda"] = config.lambda;
  j["crossover"] = config.crossover
                       ? std::string(crossover_name(*config.crossover))
                       : std::string("none");
  j["crossover_rate"] = config.crossover_rate;
  j["mutation"] = std::string(mutation_name(config.mutation));
  j["mutation_rate"] = config.mutation_rate;
  j["generations"] = config.generations;
  j["tournament_size"] = config.tournament_size;
  j["genome_params"] = params_to_json(config.genome_params);
  j["seed"] = config.seed;
  return j;
}

std::string replicate_csv(const ReplicateLog& log) {
  std::string out =
      "generation,best_fitness,median_fitness,best_size,median_size,"
      "semantic_diversity\n";
  for (const GenerationMetrics& m : log.rows) {
    out += std::to_string(m.generation);
    out += ',';
    out += format_double(m.best_fitness);
    out += ',';
    out += format_double(m.median_fitness);
    out += ',';
    out += std::to_string(m.best_size);
    out += ',';
    out += format_double(m.median_size);
    out += ',';
    out += format_double(m.semantic_diversity);
    out += '\n';
  }
  return out;
}

json replicate_sidecar(const ReplicateLog& log, const std::string& problem,
                       const std::string& operator_tag, int replicate,
                       std::uint64_t dataset_seed) {
  json j;
  j["problem"] = problem;
  j["operator"] = operator_tag;
  j["replicate"] = replicate;
  j["seed"] = log.seed;
  j["dataset_seed"] = dataset_seed;
  j["config"] = evo_config_to_json(log.config);
  json champ;
  champ["fitness"] = log.champion.fitness;
  champ["active_count"] = log.champion.active_count;
  champ["test_fitness"] = log.test_fitness;
  champ["birth_generation"] = log.champion.birth_generation;
  champ["genome"] = genome_to_json(log.champion.genome);
  j["champion"] = std::move(champ);
  return j;
}

SidecarSummary read_sidecar(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  json j = json::parse(in);  // throws nlohmann parse_error on corrupt files
  SidecarSummary s;
  s.problem = j.at("problem").get<std::string>();
  s.operator_tag = j.at("operator").get<std::string>();
  s.replicate = j.at("replicate").get<int>();
  const json& champ = j.at("champion");
  s.outcome.final_fitness = champ.at("fitness").get<double>();
  s.outcome.champion_size = champ.at("active_count").get<int>();
  s.outcome.test_fitness = champ.at("test_fitness").get<double>();
  return s;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string dataset_csv(const Dataset& ds) {
  std::string out = "split,x,y\n";
  for (std::size_t i = 0; i < ds.train_x.size(); ++i) {
    out += "train," + format_double(ds.train_x[i]) + ',' +
           format_double(ds.train_y[i]) + '\n';
  }
  for (std::size_t i = 0; i < ds.test_x.size(); ++i) {
    out += "test," + format_double(ds.test_x[i]) + ',' +
           format_double(ds.test_y[i]) + '\n';
  }
  return out;
}

std::string summary_csv(const Summary& summary) {
  std::string out =
      "problem,operator,replicates,median_fitness,q1_fitness,q3_fitness,"
      "median_size,q1_size,q3_size,median_test_fitness\n";
  for (const SummaryRow& row : summary.rows) {
    out += row.problem + ',' + row.op + ',' + std::to_string(row.replicates) +
           ',' + format_double(row.median_fitness) + ',' +
           format_double(row.q1_fitness) + ',' + format_double(row.q3_fitness) +
           ',' + format_double(row.median_size) + ',' +
           format_double(row.q1_size) + ',' + format_double(row.q3_size) + ',' +
           format_double(row.median_test_fitness) + '\n';
  }
  return out;
}

namespace {

void append_worth_rows(std::string& out, const std::string& metric,
                       const WorthTable& table) {
  for (std::size_t p = 0; p < table.problems.size(); ++p) {
    for (std::size_t i = 0; i < table.items.size(); ++i) {
      out += metric + ',' + table.problems[p] + ',' + table.items[i] + ',' +
             format_double(table.worths[p][i]) + '\n';
    }
  }
  for (std::size_t i = 0; i < table.items.size(); ++i) {
    out += metric + ",average," + table.items[i] + ',' +
           format_double(table.average[i]) + '\n';
  }
  for (std::size_t i = 0; i < table.items.size(); ++i) {
    out += metric + ",stddev," + table.items[i] + ',' +
           format_double(table.stddev[i]) + '\n';
  }
}

}  // namespace

std::string worths_csv(const Summary& summary) {
  std::string out = "metric,problem,operator,worth\n";
  if (summary.pl_fitness) append_worth_rows(out, "fitness", *summary.pl_fitness);
  if (summary.pl_size) append_worth_rows(out, "size", *summary.pl_size);
  return out;
}

}  // namespace cgpx
