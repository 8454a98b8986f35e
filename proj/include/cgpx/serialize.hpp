#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "cgpx/evolution.hpp"
#include "cgpx/genome.hpp"
#include "cgpx/stats.hpp"

namespace cgpx {

using json = nlohmann::ordered_json;

// Shortest round-trip decimal form (to_chars); deterministic across runs.
std::string format_double(double value);

// Genome as a registry of row objects, one per node, matching the matrix
// representation. Input/constant rows carry no operator or operand keys.
json genome_to_json(const Genome& g);

// Throws std::invalid_argument on malformed or invariant-violating input.
Genome genome_from_json(const json& j);

json flat_genome_to_json(const FlatGenome& flat);
FlatGenome flat_genome_from_json(const json& j, const GenomeParams& params);

json evo_config_to_json(const EvoConfig& config);

// Per-generation metric rows as CSV with a fixed header.
std::string replicate_csv(const ReplicateLog& log);

// Sidecar with config echo, seeds, champion genome, and test fitness.
json replicate_sidecar(const ReplicateLog& log, const std::string& problem,
                       const std::string& operator_tag, int replicate,
                       std::uint64_t dataset_seed);

// Champion outcome fields needed by analysis, parsed back from a sidecar.
struct SidecarSummary {
  std::string problem;
  std::string operator_tag;
  int replicate = 0;
  ReplicateOutcome outcome;
};
SidecarSummary read_sidecar(const std::filesystem::path& file);

// Write-temp-then-rename so concurrent runs never observe partial files.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

std::string dataset_csv(const Dataset& ds);

std::string summary_csv(const Summary& summary);
std::string worths_csv(const Summary& summary);

}  // namespace cgpx
