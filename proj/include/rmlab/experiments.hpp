#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rmlab/ensembles.hpp"
#include "rmlab/lcd.hpp"
#include "rmlab/vector_geometry.hpp"

namespace rmlab {

enum class Field { Real, Complex };

/// Ensemble description independent of n.
struct EnsembleConfig {
  Field field = Field::Complex;
  std::string distribution = "rademacher";  // rademacher | gaussian | uniform
  std::string shift = "none";               // none | rank_one
  double shift_k = 0.5;

  ScalarDistribution base() const;
  EntryLaw law() const;
  std::optional<ComplexMatrix> shift_matrix(int rows, int cols) const;
  EnsembleSpec spec(int n) const;
  bool is_real_gaussian() const { return field == Field::Real && distribution == "gaussian" && shift == "none"; }
  bool is_complex_gaussian() const { return field == Field::Complex && distribution == "gaussian" && shift == "none"; }
  std::string label() const;
  void validate() const;
};

/// Experiment-specific knobs; each runner reads only its own.
struct ExperimentOptions {
  int m = 2;                               // single_vector_bound: rows of M'
  std::string vector = "e1";               // single_vector_bound: e1 | flat | gaussian
  std::size_t vectors_per_matrix = 1000;   // compressible_floor
  std::size_t min_tail_count = 50;         // tail fits use cells with at least this many hits
  double net_k = 3.2;                      // interval_net_check: K' of the interval [-K' sqrt n, K' sqrt n]
  bool plant_real_eigenvalue = false;      // interval_net_check
  double beta_fraction = 0.5;              // normal_vector_lcd: alpha = beta sqrt n with beta = beta_fraction * lambda
};

struct ExperimentConfig {
  std::string experiment;
  std::vector<int> n_values;
  std::size_t trials = 1000;
  std::uint64_t master_seed = 1;
  EnsembleConfig ensemble;
  DecompParams decomp;
  LcdParams lcd;
  std::vector<double> epsilons;
  std::string output_path = "out";
  ExperimentOptions options;

  void validate() const;
};

/// One CSV cell: an estimate for (n, statistic, epsilon).
struct ResultRow {
  std::string experiment;
  int n = 0;
  std::string statistic;
  std::optional<double> epsilon;
  double estimate = 0.0;
  double stderr = 0.0;
  std::size_t trials = 0;
  std::optional<double> theory_value;
  std::string theory_ref;
};

struct TailFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  std::pair<double, double> epsilon_range{0.0, 0.0};
  double r_squared = 0.0;
  std::size_t points = 0;
  bool reliable = true;
};

struct NamedFit {
  std::string label;
  int n = 0;
  TailFit fit;
  std::optional<double> theory_slope;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentResult {
  std::string experiment;
  std::vector<ResultRow> rows;
  std::vector<NamedFit> fits;
  std::vector<Check> checks;
  std::vector<std::string> notes;
};

/// Least squares of log p on log eps over points with p > 0; needs at least 4 of them.
TailFit fit_tail_slope(const std::vector<std::pair<double, double>>& points);

ExperimentResult run_real_eig_stats(const ExperimentConfig& config, unsigned threads = 1);
ExperimentResult run_all_real_probability(const ExperimentConfig& config, unsigned threads = 1);
ExperimentResult run_lsv_tail(const ExperimentConfig& config, unsigned threads = 1);
ExperimentResult run_real_axis_proximity(const ExperimentConfig& config, unsigned threads = 1);
ExperimentResult run_compressible_floor(const ExperimentConfig& config, unsigned threads = 1);
ExperimentResult run_single_vector_bound(const ExperimentConfig& config, unsigned threads = 1);
ExperimentResult run_normal_vector_lcd(const ExperimentConfig& config, unsigned threads = 1);
ExperimentResult run_interval_net_check(const ExperimentConfig& config, unsigned threads = 1);

struct EnumerationResult {
  int n = 0;
  std::uint64_t total = 0;
  std::uint64_t singular = 0;
  std::uint64_t equal_line = 0;  // matrices with two equal rows or two equal columns
  double fraction() const { return static_cast<double>(singular) / static_cast<double>(total); }
};

/// Exhaustive count over all 4^(n^2) matrices with entries in {+-1 +- i}, n in {1, 2, 3},
/// with exact Gaussian-integer determinants.
EnumerationResult enumerate_singular(int n);
ExperimentResult run_singularity_enumeration(const ExperimentConfig& config, unsigned threads = 1);

/// Dispatches on config.experiment.
ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads = 1);
const std::vector<std::string>& experiment_names();

/// sqrt(n) s_n of every lsv_tail trial, in trial order.
std::vector<double> sample_scaled_least_singular_values(const ExperimentConfig& config, int n, unsigned threads = 1);

}  // namespace rmlab
