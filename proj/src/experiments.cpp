#include "rmlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "rmlab/parallel.hpp"
#include "rmlab/smallball.hpp"
#include "rmlab/spectra.hpp"

namespace rmlab {

namespace {

constexpr double kPi = std::numbers::pi;

RandomStream trial_stream(const ExperimentConfig& config, int n, std::size_t trial) {
  const std::string id = config.experiment + "/" + config.ensemble.label() + "/n=" + std::to_string(n);
  return RandomStream::for_trial(config.master_seed, id, trial);
}

struct Moments {
  double mean = 0.0;
  double mean_stderr = 0.0;
  double variance = 0.0;
  double variance_stderr = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  const auto t = static_cast<double>(xs.size());
  if (xs.empty()) return m;
  m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / t;
  double m2 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - m.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= t;
  m4 /= t;
  m.variance = xs.size() > 1 ? m2 * t / (t - 1.0) : 0.0;
  m.mean_stderr = std::sqrt(m.variance / t);
  m.variance_stderr = std::sqrt(std::max(0.0, m4 - m2 * m2) / t);
  return m;
}

ResultRow make_row(const ExperimentConfig& config, int n, std::string statistic, double estimate, double stderr,
                   std::size_t trials) {
  ResultRow row;
  row.experiment = config.experiment;
  row.n = n;
  row.statistic = std::move(statistic);
  row.estimate = estimate;
  row.stderr = stderr;
  row.trials = trials;
  return row;
}

ResultRow proportion_row(const ExperimentConfig& config, int n, std::string statistic, std::size_t hits,
                         std::size_t trials, std::optional<double> epsilon) {
  const Proportion p = proportion(hits, trials);
  ResultRow row = make_row(config, n, std::move(statistic), p.p, p.stderr, trials);
  row.epsilon = epsilon;
  return row;
}

std::size_t count_at_most(const std::vector<double>& xs, double bound) {
  return static_cast<std::size_t>(std::count_if(xs.begin(), xs.end(), [&](double x) { return x <= bound; }));
}

std::size_t count_below(const std::vector<double>& xs, double bound) {
  return static_cast<std::size_t>(std::count_if(xs.begin(), xs.end(), [&](double x) { return x < bound; }));
}

/// Fits cells with at least `min_count` hits; unreliable (but still reported) when fewer than four qualify.
std::optional<TailFit> fit_cells(const std::vector<double>& epsilons, const std::vector<std::size_t>& hits,
                                 std::size_t trials, std::size_t min_count) {
  std::vector<std::pair<double, double>> strong, weak;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const double p = static_cast<double>(hits[i]) / static_cast<double>(trials);
    if (hits[i] >= min_count) strong.emplace_back(epsilons[i], p);
    if (hits[i] > 0) weak.emplace_back(epsilons[i], p);
  }
  if (strong.size() >= 4) return fit_tail_slope(strong);
  if (weak.size() >= 4) {
    TailFit fit = fit_tail_slope(weak);
    fit.reliable = false;
    return fit;
  }
  return std::nullopt;
}

void add_fit(ExperimentResult& result, const ExperimentConfig& config, int n, const std::string& label,
             const std::optional<TailFit>& fit, std::optional<double> theory_slope) {
  if (!fit) {
    result.notes.push_back(label + " n=" + std::to_string(n) + ": fewer than four nonzero cells; no slope fitted");
    return;
  }
  result.fits.push_back({label, n, *fit, theory_slope});
  ResultRow row = make_row(config, n, fit->reliable ? "tail_slope" : "tail_slope_unreliable", fit->slope,
                           fit->slope_stderr, config.trials);
  row.theory_value = theory_slope;
  row.theory_ref = "log-log slope of the small-ball CDF";
  result.rows.push_back(std::move(row));
}

/// Regularized lower incomplete gamma P(m, x) for integer m.
double gamma_p_integer(int m, double x) {
  double term = 1.0, sum = 1.0;
  for (int j = 1; j < m; ++j) {
    term *= x / j;
    sum += term;
  }
  return 1.0 - std::exp(-x) * sum;
}

ComplexVector random_unit_vector(int n, RandomStream& stream) {
  ComplexVector v(n);
  for (int k = 0; k < n; ++k) {
    const double re = stream.gaussian();
    const double im = stream.gaussian();
    v(k) = Complex(re, im);
  }
  return v / v.norm();
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

ScalarDistribution EnsembleConfig::base() const {
  if (distribution == "rademacher") return ScalarDistribution::rademacher();
  if (distribution == "gaussian") return ScalarDistribution::standard_gaussian();
  if (distribution == "uniform") return ScalarDistribution::uniform_symmetric();
  throw DomainError("unknown distribution '" + distribution + "' (expected rademacher, gaussian or uniform)");
}

EntryLaw EnsembleConfig::law() const {
  if (field == Field::Complex) return GenuinelyComplexSpec{base()};
  return base();
}

std::optional<ComplexMatrix> EnsembleConfig::shift_matrix(int rows, int cols) const {
  if (shift == "none") return std::nullopt;
  if (shift == "rank_one") return rank_one_shift(rows, cols, shift_k);
  throw DomainError("unknown shift '" + shift + "' (expected none or rank_one)");
}

EnsembleSpec EnsembleConfig::spec(int n) const {
  auto m = shift_matrix(n, n);
  std::optional<double> k;
  if (m) k = shift_k;
  return EnsembleSpec::make(n, law(), std::move(m), k);
}

std::string EnsembleConfig::label() const {
  std::string out = (field == Field::Complex ? "complex_" : "real_") + distribution;
  if (shift != "none") {
    char buf[64];
    std::snprintf(buf, sizeof buf, "+%s(K=%.17g)", shift.c_str(), shift_k);
    out += buf;
  }
  return out;
}

void EnsembleConfig::validate() const {
  base();
  require(shift == "none" || shift == "rank_one", "unknown shift '" + shift + "' (expected none or rank_one)");
  require(shift_k > 0.0 && std::isfinite(shift_k), "shift_k must be positive and finite");
  require(!(field == Field::Real && shift != "none"), "real ensembles do not take a shift");
}

void ExperimentConfig::validate() const {
  require(trials >= 1, "trials must be at least 1");
  require(!n_values.empty(), "n_values must be nonempty");
  for (int n : n_values) require(n >= 1, "n_values entries must be positive");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    require(epsilons[i] > 0.0 && std::isfinite(epsilons[i]), "epsilons must be positive and finite");
    if (i > 0) require(epsilons[i] > epsilons[i - 1], "epsilons must be strictly increasing");
  }
  ensemble.validate();
  decomp.validate();
  lcd.validate();
  require(options.m >= 1, "options.m must be at least 1");
  require(options.vector == "e1" || options.vector == "flat" || options.vector == "gaussian",
          "options.vector must be e1, flat or gaussian");
  require(options.vectors_per_matrix >= 1, "options.vectors_per_matrix must be at least 1");
  require(options.min_tail_count >= 1, "options.min_tail_count must be at least 1");
  require(options.net_k > 0.0, "options.net_k must be positive");
  require(options.beta_fraction > 0.0 && options.beta_fraction < 1.0, "options.beta_fraction must lie in (0, 1)");
}

// ---------------------------------------------------------------------------
// Tail fit

TailFit fit_tail_slope(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> logs;
  for (const auto& [eps, p] : points) {
    require(eps > 0.0 && std::isfinite(eps), "fit_tail_slope: epsilon must be positive");
    if (p > 0.0) logs.emplace_back(std::log(eps), std::log(p));
  }
  require(logs.size() >= 4, "fit_tail_slope: needs at least 4 points with positive probability");
  const auto k = static_cast<double>(logs.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  require(sxx > 0.0, "fit_tail_slope: epsilons must not all coincide");
  TailFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (const auto& [x, y] : logs) {
    const double r = y - fit.intercept - fit.slope * x;
    sse += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  fit.slope_stderr = std::sqrt(sse / (k - 2.0) / sxx);
  fit.points = logs.size();
  double lo = points.front().first, hi = lo;
  for (const auto& [eps, p] : points) {
    if (p <= 0.0) continue;
    lo = std::min(lo, eps);
    hi = std::max(hi, eps);
  }
  fit.epsilon_range = {lo, hi};
  return fit;
}

// ---------------------------------------------------------------------------
// Real Gaussian eigenvalue statistics

ExperimentResult run_real_eig_stats(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  require(config.ensemble.is_real_gaussian(), "real_eig_stats needs the real Gaussian ensemble");
  ExperimentResult result{config.experiment, {}, {}, {}, {}};
  for (int n : config.n_values) {
    const EnsembleSpec spec = config.ensemble.spec(n);
    const auto counts = parallel_map(config.trials, threads, [&](std::size_t t) {
      RandomStream stream = trial_stream(config, n, t);
      return static_cast<double>(real_eigenvalue_count(sample_real_matrix(spec, stream)).count_real);
    });
    const Moments m = moments(counts);
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double mean_theory = std::sqrt(2.0 * n / kPi);

    ResultRow mean = make_row(config, n, "mean_real_count", m.mean, m.mean_stderr, config.trials);
    mean.theory_value = mean_theory;
    mean.theory_ref = "sqrt(2n/pi)";
    result.rows.push_back(mean);

    ResultRow scaled = make_row(config, n, "mean_real_count_over_sqrt_n", m.mean / sqrt_n, m.mean_stderr / sqrt_n,
                                config.trials);
    scaled.theory_value = std::sqrt(2.0 / kPi);
    scaled.theory_ref = "sqrt(2/pi)";
    result.rows.push_back(scaled);

    ResultRow var = make_row(config, n, "var_real_count", m.variance, m.variance_stderr, config.trials);
    var.theory_value = (2.0 - std::sqrt(2.0)) * mean_theory;
    var.theory_ref = "(2 - sqrt 2) sqrt(2n/pi)";
    result.rows.push_back(var);
  }
  result.notes.push_back("finite-n corrections to the real-count limits are not modelled");
  return result;
}

ExperimentResult run_all_real_probability(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  require(config.ensemble.is_real_gaussian(), "all_real_probability needs the real Gaussian ensemble");
  ExperimentResult result{config.experiment, {}, {}, {}, {}};
  for (int n : config.n_values) {
    require(n <= 6, "all_real_probability supports n <= 6");
    const EnsembleSpec spec = config.ensemble.spec(n);
    const auto all_real = parallel_map(config.trials, threads, [&](std::size_t t) {
      RandomStream stream = trial_stream(config, n, t);
      return real_eigenvalue_count(sample_real_matrix(spec, stream)).count_real == n ? 1 : 0;
    });
    const auto hits = static_cast<std::size_t>(std::accumulate(all_real.begin(), all_real.end(), 0));
    ResultRow row = proportion_row(config, n, "p_all_real", hits, config.trials, std::nullopt);
    row.theory_value = std::pow(2.0, -n * (n - 1) / 4.0);
    row.theory_ref = "2^(-n(n-1)/4)";
    result.rows.push_back(row);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Least singular value tail

std::vector<double> sample_scaled_least_singular_values(const ExperimentConfig& config, int n, unsigned threads) {
  const EnsembleSpec spec = config.ensemble.spec(n);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  return parallel_map(config.trials, threads, [&](std::size_t t) {
    RandomStream stream = trial_stream(config, n, t);
    return sqrt_n * least_singular_value(sample_matrix(spec, stream));
  });
}

ExperimentResult run_lsv_tail(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  require(config.epsilons.size() >= 4, "lsv_tail needs at least 4 epsilons");
  ExperimentResult result{config.experiment, {}, {}, {}, {}};
  const bool real_gauss = config.ensemble.is_real_gaussian();
  const bool complex_gauss = config.ensemble.is_complex_gaussian();
  for (int n : config.n_values) {
    const auto xs = sample_scaled_least_singular_values(config, n, threads);
    std::vector<std::size_t> hits;
    for (double eps : config.epsilons) {
      hits.push_back(count_at_most(xs, eps));
      ResultRow row = proportion_row(config, n, "cdf_sqrt_n_sn", hits.back(), config.trials, eps);
      if (real_gauss) {
        row.theory_value = 1.0 - std::exp(-eps - eps * eps / 2.0);
        row.theory_ref = "1 - exp(-eps - eps^2/2)";
      } else if (complex_gauss) {
        row.theory_value = 1.0 - std::exp(-eps * eps / 2.0);
        row.theory_ref = "1 - exp(-eps^2/2)";
      }
      result.rows.push_back(std::move(row));
    }
    const double theory_slope = config.ensemble.field == Field::Real ? 1.0 : 2.0;
    add_fit(result, config, n, config.ensemble.label(), fit_cells(config.epsilons, hits, config.trials,
                                                                  config.options.min_tail_count),
            theory_slope);
  }
  result.notes.push_back("exponentially small c^n terms are not reproducible at this scale; only the eps slope is compared");
  return result;
}

// ---------------------------------------------------------------------------
// Distance of the spectrum to the real axis

ExperimentResult run_real_axis_proximity(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  require(config.ensemble.field == Field::Complex, "real_axis_proximity needs a genuinely complex ensemble");
  require(!config.epsilons.empty(), "real_axis_proximity needs at least one tau in epsilons");
  ExperimentResult result{config.experiment, {}, {}, {}, {}};
  std::vector<std::vector<Proportion>> by_n;
  for (int n : config.n_values) {
    const EnsembleSpec spec = config.ensemble.spec(n);
    const auto dist = parallel_map(config.trials, threads, [&](std::size_t t) {
      RandomStream stream = trial_stream(config, n, t);
      return real_axis_distance(sample_matrix(spec, stream));
    });
    std::vector<Proportion> row_props;
    for (double tau : config.epsilons) {
      const std::size_t hits = count_at_most(dist, tau);
      row_props.push_back(proportion(hits, config.trials));
      result.rows.push_back(proportion_row(config, n, "p_real_axis_within", hits, config.trials, tau));
    }
    by_n.push_back(std::move(row_props));
  }
  bool monotone = true;
  std::string detail;
  for (std::size_t i = 1; i < by_n.size(); ++i) {
    if (config.n_values[i] <= config.n_values[i - 1]) continue;
    for (std::size_t e = 0; e < config.epsilons.size(); ++e) {
      const auto& a = by_n[i - 1][e];
      const auto& b = by_n[i][e];
      const double slack = 2.0 * std::hypot(a.stderr, b.stderr);
      if (b.p > a.p + slack) {
        monotone = false;
        detail += "n=" + std::to_string(config.n_values[i]) + " tau=" + std::to_string(config.epsilons[e]) + "; ";
      }
    }
  }
  result.checks.push_back({"nonincreasing_in_n", monotone, monotone ? "within 2 stderr" : detail});
  return result;
}

// ---------------------------------------------------------------------------
// Compressible vectors are not annihilated

ExperimentResult run_compressible_floor(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  require(config.ensemble.field == Field::Complex, "compressible_floor needs a genuinely complex ensemble");
  ExperimentResult result{config.experiment, {}, {}, {}, {}};
  const std::size_t per_matrix = config.options.vectors_per_matrix;
  const double rho = config.decomp.rho;
  for (int n : config.n_values) {
    const EnsembleSpec spec = config.ensemble.spec(n);
    const int support = std::max(1, static_cast<int>(std::floor(config.decomp.delta * n + 1e-9)));
    struct Trial {
      double floor = 0.0;
      std::size_t compressible = 0;
    };
    const auto trials = parallel_map(config.trials, threads, [&](std::size_t t) {
      RandomStream stream = trial_stream(config, n, t);
      const ComplexMatrix m = sample_matrix(spec, stream);
      RandomStream vectors = stream.substream(1);
      ComplexMatrix batch(n, static_cast<Eigen::Index>(per_matrix));
      std::vector<int> index(static_cast<std::size_t>(n));
      Trial out;
      for (std::size_t j = 0; j < per_matrix; ++j) {
        std::iota(index.begin(), index.end(), 0);
        ComplexVector sparse = ComplexVector::Zero(n);
        for (int s = 0; s < support; ++s) {
          const auto pick = s + static_cast<int>(vectors.uniform01() * (n - s));
          std::swap(index[static_cast<std::size_t>(s)], index[static_cast<std::size_t>(std::min(pick, n - 1))]);
          const double re = vectors.gaussian();
          const double im = vectors.gaussian();
          sparse(index[static_cast<std::size_t>(s)]) = Complex(re, im);
        }
        sparse.normalize();
        const ComplexVector noise = random_unit_vector(n, vectors);
        ComplexVector v = sparse + (rho / 2.0) * noise;
        v.normalize();
        if (classify(v, config.decomp).compressible()) ++out.compressible;
        batch.col(static_cast<Eigen::Index>(j)) = v;
      }
      const ComplexMatrix images = m * batch;
      out.floor = images.colwise().norm().minCoeff() / std::sqrt(static_cast<double>(n));
      return out;
    });
    std::vector<double> floors;
    std::size_t compressible = 0;
    for (const auto& t : trials) {
      floors.push_back(t.floor);
      compressible += t.compressible;
    }
    const Moments m = moments(floors);
    std::vector<double> sorted = floors;
    std::sort(sorted.begin(), sorted.end());
    result.rows.push_back(make_row(config, n, "floor_min", sorted.front(), 0.0, config.trials));
    result.rows.push_back(make_row(config, n, "floor_median", sorted[sorted.size() / 2], 0.0, config.trials));
    result.rows.push_back(make_row(config, n, "floor_mean", m.mean, m.mean_stderr, config.trials));
    ResultRow frac = make_row(config, n, "compressible_fraction_of_samples",
                              static_cast<double>(compressible) / static_cast<double>(config.trials * per_matrix), 0.0,
                              config.trials);
    frac.theory_value = 1.0;
    result.rows.push_back(frac);
  }
  result.checks.push_back({"floor_positive",
                           std::all_of(result.rows.begin(), result.rows.end(),
                                       [](const ResultRow& r) { return r.statistic != "floor_min" || r.estimate > 0.0; }),
                           "minimum of ||M v|| / sqrt n over sampled compressible v"});
  return result;
}

// ---------------------------------------------------------------------------
// Small-ball bound for one fixed vector

ExperimentResult run_single_vector_bound(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  require(config.ensemble.field == Field::Complex, "single_vector_bound needs a genuinely complex ensemble");
  require(!config.epsilons.empty(), "single_vector_bound needs epsilons");
  ExperimentResult result{config.experiment, {}, {}, {}, {}};
  const int m = config.options.m;
  const EntryLaw law = config.ensemble.law();
  for (int n : config.n_values) {
    require(m <= n, "single_vector_bound needs m <= n");
    ComplexVector v = ComplexVector::Zero(n);
    if (config.options.vector == "e1") {
      v(0) = 1.0;
    } else if (config.options.vector == "flat") {
      v.setConstant(1.0 / std::sqrt(static_cast<double>(n)));
    } else {
      RandomStream vs = RandomStream::for_trial(config.master_seed, config.experiment + "/vector/n=" + std::to_string(n), 0);
      v = random_unit_vector(n, vs);
    }
    const auto shift = config.ensemble.shift_matrix(m, n);
    const auto norms = parallel_map(config.trials, threads, [&](std::size_t t) {
      RandomStream stream = trial_stream(config, n, t);
      return (sample_rectangular(law, m, n, stream, shift) * v).norm();
    });
    std::vector<std::size_t> hits;
    const double sqrt_m = std::sqrt(static_cast<double>(m));
    for (double eps : config.epsilons) {
      hits.push_back(count_below(norms, eps * sqrt_m));
      ResultRow row = proportion_row(config, n, "p_norm_below_eps_sqrt_m", hits.back(), config.trials, eps);
      if (config.ensemble.is_complex_gaussian()) {
        row.theory_value = gamma_p_integer(m, m * eps * eps / 2.0);
        row.theory_ref = "P(chi^2_{2m} < m eps^2)";
      }
      result.rows.push_back(std::move(row));
    }
    add_fit(result, config, n, config.options.vector,
            fit_cells(config.epsilons, hits, config.trials, config.options.min_tail_count), 2.0 * m);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Interval net over the real axis

ExperimentResult run_interval_net_check(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  require(config.ensemble.field == Field::Complex, "interval_net_check needs a genuinely complex ensemble");
  require(!config.epsilons.empty(), "interval_net_check needs epsilons");
  ExperimentResult result{config.experiment, {}, {}, {}, {}};
  std::size_t total_violations = 0;
  for (int n : config.n_values) {
    require(n <= 32, "interval_net_check supports n <= 32");
    const EnsembleSpec spec = config.ensemble.spec(n);
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double half_width = config.options.net_k * sqrt_n;
    for (double eps : config.epsilons) {
      const double h = eps / sqrt_n;
      const auto steps = static_cast<long long>(std::ceil(2.0 * half_width / h));
      const double pitch = 2.0 * half_width / static_cast<double>(steps);
      auto net_point = [&](long long j) { return -half_width + static_cast<double>(j) * pitch; };
      struct Trial {
        bool near = false;
        bool detected = false;
        bool norm_exceeds = false;
      };
      const auto trials = parallel_map(config.trials, threads, [&](std::size_t t) {
        RandomStream stream = trial_stream(config, n, t);
        ComplexMatrix a = sample_matrix(spec, stream);
        if (config.options.plant_real_eigenvalue) {
          RandomStream plant = stream.substream(1);
          const ComplexVector x = random_unit_vector(n, plant);
          const double lambda = (2.0 * plant.uniform01() - 1.0) * sqrt_n;
          a += (lambda * x - a * x) * x.adjoint();
        }
        Trial out;
        out.norm_exceeds = operator_norm(a) > half_width;
        const Spectrum s = eigenvalues(a, {.compute_backward_error = false});
        std::vector<double> near_re;
        for (const auto& z : s.eigenvalues)
          if (std::abs(z.imag()) <= eps / (2.0 * sqrt_n)) near_re.push_back(z.real());
        out.near = !near_re.empty();
        if (!out.near) return out;
        const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
        auto small_at = [&](long long j) { return least_singular_value(ComplexMatrix(a - net_point(j) * eye)) <= h; };
        for (double re : near_re) {
          const auto j = std::clamp(std::llround((re + half_width) / pitch), 0LL, steps);
          if (small_at(j)) {
            out.detected = true;
            return out;
          }
        }
        for (long long j = 0; j <= steps && !out.detected; ++j) out.detected = small_at(j);
        return out;
      });
      std::size_t near = 0, detected = 0, violations = 0, exceeds = 0;
      for (const auto& t : trials) {
        near += t.near;
        detected += t.near && t.detected;
        violations += t.near && !t.detected;
        exceeds += t.norm_exceeds;
      }
      total_violations += violations;
      result.rows.push_back(proportion_row(config, n, "p_near_real_axis", near, config.trials, eps));
      if (near > 0) {
        ResultRow row = proportion_row(config, n, "p_net_detects_given_near", detected, near, eps);
        row.theory_value = 1.0;
        result.rows.push_back(row);
      }
      ResultRow v = make_row(config, n, "implication_violations", static_cast<double>(violations), 0.0, config.trials);
      v.epsilon = eps;
      v.theory_value = 0.0;
      result.rows.push_back(v);
      result.rows.push_back(proportion_row(config, n, "p_norm_exceeds_net_k", exceeds, config.trials, eps));
    }
  }
  result.checks.push_back({"implication_holds", total_violations == 0,
                           std::to_string(total_violations) + " trials with a near-real eigenvalue and no small s_n on the net"});
  return result;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "real_eig_stats",      "all_real_probability", "lsv_tail",         "singularity_enumeration",
      "real_axis_proximity", "compressible_floor",   "single_vector_bound", "normal_vector_lcd",
      "interval_net_check"};
  return names;
}

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads) {
  const std::string& name = config.experiment;
  if (name == "real_eig_stats") return run_real_eig_stats(config, threads);
  if (name == "all_real_probability") return run_all_real_probability(config, threads);
  if (name == "lsv_tail") return run_lsv_tail(config, threads);
  if (name == "singularity_enumeration") return run_singularity_enumeration(config, threads);
  if (name == "real_axis_proximity") return run_real_axis_proximity(config, threads);
  if (name == "compressible_floor") return run_compressible_floor(config, threads);
  if (name == "single_vector_bound") return run_single_vector_bound(config, threads);
  if (name == "normal_vector_lcd") return run_normal_vector_lcd(config, threads);
  if (name == "interval_net_check") return run_interval_net_check(config, threads);
  throw DomainError("unknown experiment '" + name + "'");
}

}  // namespace rmlab
