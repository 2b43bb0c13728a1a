#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rmlab/random_stream.hpp"
#include "rmlab/types.hpp"

namespace rmlab {

enum class ScalarKind { Rademacher, StandardGaussian, UniformSymmetric, DiscreteCustom };

/// Mean-zero, variance-one real law. The subgaussian moment B is metadata.
class ScalarDistribution {
 public:
  static ScalarDistribution rademacher();
  static ScalarDistribution standard_gaussian();
  /// Uniform on [-sqrt(3), sqrt(3)].
  static ScalarDistribution uniform_symmetric();
  /// Validates nonnegative weights summing to 1, mean 0 and variance 1 (tol 1e-12).
  static ScalarDistribution discrete(std::vector<double> values, std::vector<double> weights,
                                     double subgaussian_moment);

  ScalarKind kind() const { return kind_; }
  double subgaussian_moment() const { return moment_b_; }
  void set_subgaussian_moment(double b);

  bool finitely_supported() const { return kind_ != ScalarKind::StandardGaussian && kind_ != ScalarKind::UniformSymmetric; }
  /// Atoms and probabilities; only for finitely supported laws.
  const std::vector<double>& support() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }

  std::string name() const;

 private:
  ScalarDistribution(ScalarKind kind, double b) : kind_(kind), moment_b_(b) {}

  ScalarKind kind_;
  double moment_b_;
  std::vector<double> values_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;

  friend double sample_real_scalar(const ScalarDistribution&, RandomStream&);
};

/// zeta = xi + i xi' with xi, xi' iid from `base`.
struct GenuinelyComplexSpec {
  ScalarDistribution base;
};

using EntryLaw = std::variant<GenuinelyComplexSpec, ScalarDistribution>;

/// Law of N_n (or M + N_n). Use `make` to get the shift-norm check.
class EnsembleSpec {
 public:
  static EnsembleSpec make(int n, EntryLaw law, std::optional<ComplexMatrix> shift = std::nullopt,
                           std::optional<double> shift_norm_bound = std::nullopt);

  int n() const { return n_; }
  const EntryLaw& entry_law() const { return law_; }
  bool is_complex() const { return std::holds_alternative<GenuinelyComplexSpec>(law_); }
  const std::optional<ComplexMatrix>& shift() const { return shift_; }
  std::optional<double> shift_norm_bound() const { return shift_norm_bound_; }
  std::string label() const;

 private:
  EnsembleSpec(int n, EntryLaw law) : n_(n), law_(std::move(law)) {}

  int n_;
  EntryLaw law_;
  std::optional<ComplexMatrix> shift_;
  std::optional<double> shift_norm_bound_;
};

double sample_real_scalar(const ScalarDistribution& dist, RandomStream& stream);
Complex sample_complex_scalar(const GenuinelyComplexSpec& spec, RandomStream& stream);
Complex sample_entry(const EntryLaw& law, RandomStream& stream);

/// n x n sample; entries are drawn in row-major order. Adds the shift when it is n x n.
ComplexMatrix sample_matrix(const EnsembleSpec& spec, RandomStream& stream);
/// (n-1) x n sample; its rows equal the first n-1 rows of sample_matrix on the same stream.
ComplexMatrix sample_row_deleted_matrix(const EnsembleSpec& spec, RandomStream& stream);
/// m x n sample with an optional m x n shift.
ComplexMatrix sample_rectangular(const EntryLaw& law, int rows, int cols, RandomStream& stream,
                                 const std::optional<ComplexMatrix>& shift = std::nullopt);
/// Real-law convenience for the real-Schur path; requires a real law and no shift.
RealMatrix sample_real_matrix(const EnsembleSpec& spec, RandomStream& stream);

struct MomentReport {
  double mean = 0.0;
  double mean_stderr = 0.0;
  double variance = 0.0;
  double variance_stderr = 0.0;
  struct Tail {
    double t;
    double exceedance;
    double stderr;
    double subgaussian_bound;  // 2 exp(-t^2 / B^2)
  };
  std::vector<Tail> tails;  // t = 2, 3, 4
  std::size_t samples = 0;
};

MomentReport empirical_moment_report(const ScalarDistribution& dist, std::size_t samples,
                                     RandomStream& stream);

/// K sqrt(n) u v^* with u = v = (1,...,1)/sqrt(n); operator norm exactly K sqrt(n).
ComplexMatrix rank_one_shift(int rows, int cols, double k);

}  // namespace rmlab
