#include "rmlab/ensembles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "rmlab/spectra.hpp"

namespace rmlab {

namespace {

constexpr double kLawTolerance = 1e-12;
const double kSqrt3 = std::sqrt(3.0);

}  // namespace

ScalarDistribution ScalarDistribution::rademacher() {
  ScalarDistribution d(ScalarKind::Rademacher, 1.0 / std::sqrt(std::log(2.0)));
  d.values_ = {-1.0, 1.0};
  d.weights_ = {0.5, 0.5};
  d.cumulative_ = {0.5, 1.0};
  return d;
}

ScalarDistribution ScalarDistribution::standard_gaussian() {
  return ScalarDistribution(ScalarKind::StandardGaussian, std::sqrt(2.0));
}

ScalarDistribution ScalarDistribution::uniform_symmetric() {
  return ScalarDistribution(ScalarKind::UniformSymmetric, 1.2);
}

ScalarDistribution ScalarDistribution::discrete(std::vector<double> values, std::vector<double> weights,
                                                double subgaussian_moment) {
  require(!values.empty() && values.size() == weights.size(),
          "discrete law needs matching, nonempty values and weights");
  require(subgaussian_moment > 0.0, "subgaussian moment must be positive");
  double total = 0.0, mean = 0.0, second = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(weights[i] >= 0.0 && std::isfinite(weights[i]), "discrete law weights must be nonnegative");
    require(std::isfinite(values[i]), "discrete law values must be finite");
    total += weights[i];
    mean += weights[i] * values[i];
    second += weights[i] * values[i] * values[i];
  }
  require(std::abs(total - 1.0) <= kLawTolerance, "discrete law weights must sum to 1");
  require(std::abs(mean) <= kLawTolerance, "discrete law must have mean 0");
  require(std::abs(second - mean * mean - 1.0) <= kLawTolerance, "discrete law must have variance 1");

  ScalarDistribution d(ScalarKind::DiscreteCustom, subgaussian_moment);
  d.values_ = std::move(values);
  d.weights_ = std::move(weights);
  d.cumulative_.resize(d.weights_.size());
  std::partial_sum(d.weights_.begin(), d.weights_.end(), d.cumulative_.begin());
  d.cumulative_.back() = 1.0;
  return d;
}

void ScalarDistribution::set_subgaussian_moment(double b) {
  require(b > 0.0, "subgaussian moment must be positive");
  moment_b_ = b;
}

std::string ScalarDistribution::name() const {
  switch (kind_) {
    case ScalarKind::Rademacher: return "rademacher";
    case ScalarKind::StandardGaussian: return "gaussian";
    case ScalarKind::UniformSymmetric: return "uniform";
    case ScalarKind::DiscreteCustom: return "discrete";
  }
  return "unknown";
}

double sample_real_scalar(const ScalarDistribution& dist, RandomStream& stream) {
  switch (dist.kind_) {
    case ScalarKind::Rademacher:
      return (stream() >> 63) ? 1.0 : -1.0;
    case ScalarKind::StandardGaussian:
      return stream.gaussian();
    case ScalarKind::UniformSymmetric:
      return kSqrt3 * (2.0 * stream.uniform01() - 1.0);
    case ScalarKind::DiscreteCustom: {
      const double u = stream.uniform01();
      const auto it = std::upper_bound(dist.cumulative_.begin(), dist.cumulative_.end(), u);
      const auto idx = std::min<std::size_t>(it - dist.cumulative_.begin(), dist.values_.size() - 1);
      return dist.values_[idx];
    }
  }
  return 0.0;
}

Complex sample_complex_scalar(const GenuinelyComplexSpec& spec, RandomStream& stream) {
  const double re = sample_real_scalar(spec.base, stream);
  const double im = sample_real_scalar(spec.base, stream);
  return {re, im};
}

Complex sample_entry(const EntryLaw& law, RandomStream& stream) {
  if (const auto* c = std::get_if<GenuinelyComplexSpec>(&law)) return sample_complex_scalar(*c, stream);
  return {sample_real_scalar(std::get<ScalarDistribution>(law), stream), 0.0};
}

EnsembleSpec EnsembleSpec::make(int n, EntryLaw law, std::optional<ComplexMatrix> shift,
                                std::optional<double> shift_norm_bound) {
  require(n >= 1, "ensemble dimension must be positive");
  EnsembleSpec spec(n, std::move(law));
  if (shift_norm_bound) require(*shift_norm_bound > 0.0, "shift norm bound K must be positive");
  if (shift) {
    const bool square = shift->rows() == n && shift->cols() == n;
    const bool row_deleted = shift->rows() == n - 1 && shift->cols() == n;
    require(square || row_deleted, "shift must be n x n or (n-1) x n");
    if (shift_norm_bound) {
      const double norm = operator_norm(*shift);
      const double limit = *shift_norm_bound * std::sqrt(static_cast<double>(n));
      require(norm <= limit * (1.0 + 1e-12), "shift operator norm exceeds K sqrt(n)");
    }
  }
  spec.shift_ = std::move(shift);
  spec.shift_norm_bound_ = shift_norm_bound;
  return spec;
}

std::string EnsembleSpec::label() const {
  std::string s = is_complex() ? "complex-" + std::get<GenuinelyComplexSpec>(law_).base.name()
                               : "real-" + std::get<ScalarDistribution>(law_).name();
  s += "-n" + std::to_string(n_);
  if (shift_) s += "-shifted";
  return s;
}

ComplexMatrix sample_rectangular(const EntryLaw& law, int rows, int cols, RandomStream& stream,
                                 const std::optional<ComplexMatrix>& shift) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = sample_entry(law, stream);
  if (shift) {
    require(shift->rows() == rows && shift->cols() == cols, "shift dimensions do not match sample");
    m += *shift;
  }
  return m;
}

ComplexMatrix sample_matrix(const EnsembleSpec& spec, RandomStream& stream) {
  const int n = spec.n();
  if (spec.shift()) require(spec.shift()->rows() == n, "shift is (n-1) x n; use sample_row_deleted_matrix");
  return sample_rectangular(spec.entry_law(), n, n, stream, spec.shift());
}

ComplexMatrix sample_row_deleted_matrix(const EnsembleSpec& spec, RandomStream& stream) {
  const int n = spec.n();
  require(n >= 2, "row-deleted sample needs n >= 2");
  if (spec.shift()) require(spec.shift()->rows() == n - 1, "shift is n x n; use sample_matrix");
  return sample_rectangular(spec.entry_law(), n - 1, n, stream, spec.shift());
}

RealMatrix sample_real_matrix(const EnsembleSpec& spec, RandomStream& stream) {
  require(!spec.is_complex(), "sample_real_matrix needs a real entry law");
  require(!spec.shift(), "sample_real_matrix does not support shifts");
  const auto& dist = std::get<ScalarDistribution>(spec.entry_law());
  const int n = spec.n();
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = sample_real_scalar(dist, stream);
  return m;
}

MomentReport empirical_moment_report(const ScalarDistribution& dist, std::size_t samples,
                                     RandomStream& stream) {
  require(samples >= 1000, "moment report needs at least 1000 samples");
  const double b = dist.subgaussian_moment();
  const std::array<double, 3> ts{2.0, 3.0, 4.0};
  std::array<std::size_t, 3> exceed{};
  // Welford for mean/variance, plus fourth central moment via raw sums.
  double mean = 0.0, m2 = 0.0;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = sample_real_scalar(dist, stream);
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
    s4 += x * x * x * x;
    for (std::size_t k = 0; k < ts.size(); ++k)
      if (std::abs(x) > ts[k]) ++exceed[k];
  }
  const double n = static_cast<double>(samples);
  MomentReport report;
  report.samples = samples;
  report.mean = mean;
  report.variance = m2 / (n - 1.0);
  report.mean_stderr = std::sqrt(report.variance / n);
  const double e1 = s1 / n, e2 = s2 / n, e3 = s3 / n, e4 = s4 / n;
  const double central4 = e4 - 4 * e1 * e3 + 6 * e1 * e1 * e2 - 3 * e1 * e1 * e1 * e1;
  report.variance_stderr = std::sqrt(std::max(0.0, central4 - report.variance * report.variance) / n);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double p = static_cast<double>(exceed[k]) / n;
    report.tails.push_back({ts[k], p, std::sqrt(p * (1.0 - p) / n), 2.0 * std::exp(-ts[k] * ts[k] / (b * b))});
  }
  return report;
}

ComplexMatrix rank_one_shift(int rows, int cols, double k) {
  require(rows >= 1 && cols >= 1, "shift dimensions must be positive");
  const ComplexVector u = ComplexVector::Constant(rows, 1.0 / std::sqrt(static_cast<double>(rows)));
  const ComplexVector v = ComplexVector::Constant(cols, 1.0 / std::sqrt(static_cast<double>(cols)));
  return (k * std::sqrt(static_cast<double>(cols))) * (u * v.adjoint());
}

}  // namespace rmlab
