#pragma once

#include <string>

#include "rmlab/experiments.hpp"

namespace rmlab {

/// Reads a YAML experiment config. Unknown keys, wrong types and invalid
/// values raise DomainError with "<source>:<line>: ..." diagnostics.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& source = "<config>");

/// Canonical YAML with every default filled in; parse_config_text(config_to_yaml(c)) == c.
std::string config_to_yaml(const ExperimentConfig& config);

bool operator==(const EnsembleConfig& a, const EnsembleConfig& b);
bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

}  // namespace rmlab
