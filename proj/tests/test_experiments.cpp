#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "oracles.hpp"
#include "rmlab/experiments.hpp"
#include "rmlab/output.hpp"

using namespace rmlab;

namespace {

nlohmann::json golden(const std::string& name) {
  std::ifstream in(std::string(RMLAB_GOLDEN_DIR) + "/" + name);
  REQUIRE(in);
  return nlohmann::json::parse(in);
}

ExperimentConfig base_config(const std::string& experiment, std::vector<int> n_values, std::size_t trials) {
  ExperimentConfig c;
  c.experiment = experiment;
  c.n_values = std::move(n_values);
  c.trials = trials;
  c.master_seed = 2024;
  return c;
}

std::string csv_of(const ExperimentResult& r) {
  std::ostringstream out;
  write_csv(out, r.rows);
  return out.str();
}

const ResultRow& row(const ExperimentResult& r, int n, const std::string& statistic,
                     std::optional<double> eps = std::nullopt) {
  for (const auto& x : r.rows)
    if (x.n == n && x.statistic == statistic && (!eps || (x.epsilon && *x.epsilon == *eps))) return x;
  FAIL("missing row " << statistic << " n=" << n);
  throw std::logic_error("unreachable");
}

bool all_checks_pass(const ExperimentResult& r) {
  for (const auto& c : r.checks)
    if (!c.passed) return false;
  return true;
}

}  // namespace

TEST_CASE("tail slope of exact power laws") {
  std::vector<std::pair<double, double>> pts;
  for (double eps : {0.05, 0.1, 0.2, 0.4, 0.8}) pts.emplace_back(eps, 3.0 * eps * eps);
  const TailFit fit = fit_tail_slope(pts);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK(fit.points == 5);
  CHECK(fit.epsilon_range.first == 0.05);
  CHECK(fit.epsilon_range.second == 0.8);

  pts.back().second = 0.0;
  CHECK(fit_tail_slope(pts).points == 4);
  pts[0].second = 0.0;
  CHECK_THROWS_AS(fit_tail_slope(pts), DomainError);
}

TEST_CASE("exhaustive singularity counts agree with independent oracles") {
  const auto g = golden("enumeration.json");
  for (int n : {1, 2, 3}) {
    const EnumerationResult r = enumerate_singular(n);
    CHECK(r.total == static_cast<std::uint64_t>(std::pow(4.0, n * n)));
    CHECK(r.singular == oracle::singular_count_cofactor(n));
    CHECK(r.equal_line == oracle::equal_line_count(n));
    const auto& entry = g[std::to_string(n)];
    CHECK(r.singular == entry["singular"].get<std::uint64_t>());
    CHECK(r.equal_line == entry["equal_line"].get<std::uint64_t>());
    CHECK(r.fraction() == entry["fraction"].get<double>());
    if (n >= 2) CHECK(r.singular > r.equal_line);
  }
  CHECK(oracle::equal_line_count(2) == 28);
  CHECK_THROWS_AS(enumerate_singular(4), DomainError);
}

TEST_CASE("singularity enumeration rows") {
  const auto r = run_singularity_enumeration(base_config("singularity_enumeration", {2}, 1));
  CHECK(row(r, 2, "singular_fraction").estimate == 0.25);
  CHECK(row(r, 2, "singular_count").estimate == 64.0);
  CHECK(row(r, 2, "equal_row_or_column_count").estimate == 28.0);
  CHECK(all_checks_pass(r));
}

TEST_CASE("all-real probability pilot") {
  ExperimentConfig c = base_config("all_real_probability", {2, 3}, 4000);
  c.ensemble.field = Field::Real;
  c.ensemble.distribution = "gaussian";
  const auto r = run_all_real_probability(c);
  for (int n : {2, 3}) {
    const auto& x = row(r, n, "p_all_real");
    CHECK(*x.theory_value == doctest::Approx(std::pow(2.0, -n * (n - 1) / 4.0)));
    CHECK(std::abs(x.estimate - *x.theory_value) <= 4.0 * x.stderr + 0.01);
  }
}

TEST_CASE("real eigenvalue statistics pilot") {
  ExperimentConfig c = base_config("real_eig_stats", {20}, 1000);
  c.ensemble.field = Field::Real;
  c.ensemble.distribution = "gaussian";
  const auto r = run_real_eig_stats(c);
  const auto& mean = row(r, 20, "mean_real_count");
  CHECK(*mean.theory_value == doctest::Approx(std::sqrt(40.0 / M_PI)));
  // Finite-n mean sits slightly above the leading term.
  CHECK(std::abs(mean.estimate - *mean.theory_value) <= 0.5 + 4.0 * mean.stderr);
  CHECK(*row(r, 20, "var_real_count").theory_value == doctest::Approx((2.0 - std::sqrt(2.0)) * std::sqrt(40.0 / M_PI)));
}

TEST_CASE("least singular value tail: complex gaussian cdf matches its closed form") {
  ExperimentConfig c = base_config("lsv_tail", {10}, 4000);
  c.ensemble.distribution = "gaussian";
  c.epsilons = {0.1, 0.2, 0.4, 0.8};
  c.options.min_tail_count = 20;
  const auto r = run_lsv_tail(c);
  for (double eps : c.epsilons) {
    const auto& x = row(r, 10, "cdf_sqrt_n_sn", eps);
    CHECK(*x.theory_value == doctest::Approx(1.0 - std::exp(-eps * eps / 2.0)));
    CHECK(std::abs(x.estimate - *x.theory_value) <= 4.0 * x.stderr + 0.02);
  }
  REQUIRE(!r.fits.empty());
  CHECK(r.fits[0].fit.slope == doctest::Approx(2.0).epsilon(0.2));
  CHECK(!r.notes.empty());
}

TEST_CASE("scaled least singular values are deterministic and thread independent") {
  ExperimentConfig c = base_config("lsv_tail", {6}, 50);
  c.epsilons = {0.1, 0.2, 0.4, 0.8};
  const auto a = sample_scaled_least_singular_values(c, 6, 1);
  const auto b = sample_scaled_least_singular_values(c, 6, 4);
  CHECK(a == b);
  CHECK(a.size() == 50);
}

TEST_CASE("real axis proximity pilot") {
  ExperimentConfig c = base_config("real_axis_proximity", {4, 8}, 500);
  c.epsilons = {0.05, 0.2};
  const auto r = run_real_axis_proximity(c);
  for (int n : {4, 8})
    for (double eps : c.epsilons) {
      const auto& x = row(r, n, "p_real_axis_within", eps);
      CHECK(x.estimate >= 0.0);
      CHECK(x.estimate <= 1.0);
    }
  CHECK(row(r, 4, "p_real_axis_within", 0.05).estimate <= row(r, 4, "p_real_axis_within", 0.2).estimate);
}

TEST_CASE("compressible floor pilot") {
  ExperimentConfig c = base_config("compressible_floor", {12}, 20);
  c.options.vectors_per_matrix = 50;
  const auto r = run_compressible_floor(c);
  CHECK(row(r, 12, "floor_min").estimate > 0.0);
  CHECK(row(r, 12, "floor_min").estimate <= row(r, 12, "floor_median").estimate);
  CHECK(row(r, 12, "compressible_fraction_of_samples").estimate == 1.0);
  CHECK(all_checks_pass(r));
}

TEST_CASE("single vector bound: gaussian rows match the chi-square law") {
  ExperimentConfig c = base_config("single_vector_bound", {8}, 20000);
  c.ensemble.distribution = "gaussian";
  c.options.m = 2;
  c.options.vector = "flat";
  c.epsilons = {0.2, 0.4, 0.6, 0.8, 1.0};
  c.options.min_tail_count = 20;
  const auto r = run_single_vector_bound(c);
  for (double eps : c.epsilons) {
    const auto& x = row(r, 8, "p_norm_below_eps_sqrt_m", eps);
    // ||M' v||^2 / 2 ~ Gamma(m, 1); P(||M' v|| <= eps sqrt m) = P(m, m eps^2 / 2).
    const double m = 2.0, t = m * eps * eps / 2.0;
    const double expected = 1.0 - std::exp(-t) * (1.0 + t);
    CHECK(*x.theory_value == doctest::Approx(expected));
    CHECK(std::abs(x.estimate - expected) <= 4.0 * x.stderr + 1e-3);
  }
  REQUIRE(!r.fits.empty());
  CHECK(*r.fits[0].theory_slope == 4.0);
}

TEST_CASE("normal vector lcd certificate pilot") {
  const auto r = run_normal_vector_lcd(base_config("normal_vector_lcd", {8}, 30));
  CHECK(row(r, 8, "certified_fraction").estimate == 1.0);
  // Row-deleted +-1+-i matrices are rank deficient with small positive probability.
  CHECK(row(r, 8, "rank_deficient_fraction").estimate <= 0.1);
}

TEST_CASE("interval net implication pilot") {
  ExperimentConfig c = base_config("interval_net_check", {6}, 200);
  c.epsilons = {0.5};
  c.options.plant_real_eigenvalue = true;
  const auto r = run_interval_net_check(c);
  CHECK(row(r, 6, "implication_violations", 0.5).estimate == 0.0);
  CHECK(row(r, 6, "p_near_real_axis", 0.5).estimate > 0.5);
  CHECK(all_checks_pass(r));
}

TEST_CASE("every experiment is byte-identical across thread counts") {
  for (const auto& name : experiment_names()) {
    ExperimentConfig c = base_config(name, {4}, 40);
    if (name == "singularity_enumeration") c.n_values = {2};
    if (name == "all_real_probability" || name == "real_eig_stats") {
      c.ensemble.field = Field::Real;
      c.ensemble.distribution = "gaussian";
    }
    if (name == "lsv_tail" || name == "single_vector_bound") c.epsilons = {0.2, 0.4, 0.8, 1.6};
    if (name == "real_axis_proximity" || name == "interval_net_check") c.epsilons = {0.3};
    if (name == "compressible_floor") c.options.vectors_per_matrix = 10;
    const std::string one = csv_of(run_experiment(c, 1));
    const std::string many = csv_of(run_experiment(c, 3));
    CHECK_MESSAGE(one == many, name);
  }
}

TEST_CASE("changing the seed changes the sample") {
  ExperimentConfig c = base_config("lsv_tail", {5}, 200);
  c.epsilons = {0.2, 0.4, 0.8, 1.6};
  const std::string a = csv_of(run_experiment(c, 1));
  c.master_seed += 1;
  CHECK(csv_of(run_experiment(c, 1)) != a);
}

TEST_CASE("golden CSV digests") {
  const auto g = golden("csv_digests.json");
  ExperimentConfig c = base_config("real_axis_proximity", {4, 6}, 100);
  c.epsilons = {0.1, 0.3};
  CHECK(sha256_hex(csv_of(run_experiment(c, 2))) == g["real_axis_proximity"].get<std::string>());
  CHECK(sha256_hex(csv_of(run_singularity_enumeration(base_config("singularity_enumeration", {2, 3}, 1)))) ==
        g["singularity_enumeration"].get<std::string>());
}

TEST_CASE("config validation") {
  ExperimentConfig c = base_config("lsv_tail", {4}, 0);
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.trials = 10;
  c.epsilons = {0.2, 0.1};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.epsilons = {0.1, 0.2};
  CHECK_NOTHROW(c.validate());
  c.n_values.clear();
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.n_values = {4};
  c.ensemble.distribution = "cauchy";
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.ensemble.distribution = "gaussian";
  c.experiment = "nonesuch";
  CHECK_THROWS_AS(run_experiment(c), DomainError);
}
