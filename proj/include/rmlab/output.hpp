#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rmlab/experiments.hpp"

namespace rmlab {

/// Where the master seed came from.
struct SeedProvenance {
  std::uint64_t config_seed = 0;
  std::optional<std::uint64_t> override_seed;
  std::uint64_t effective() const { return override_seed.value_or(config_seed); }
};

struct ManifestEntry {
  std::string file;
  std::string sha256;
};

/// Header: experiment,n,statistic,epsilon,estimate,stderr,trials,theory_value.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// Writes results.csv, summary.json and config.yaml into out_dir (created if
/// needed) plus manifest.json listing the SHA-256 of each. Thread count is
/// never recorded, so outputs are identical at any parallelism.
std::vector<ManifestEntry> write_outputs(const ExperimentResult& result, const ExperimentConfig& config,
                                         const SeedProvenance& seed, const std::string& out_dir);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

/// Version string stamped into summaries.
const char* version_string();

}  // namespace rmlab
