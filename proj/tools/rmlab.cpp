// Command-line front end: run | lcd | levy | spectrum | enumerate.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "rmlab/config.hpp"
#include "rmlab/experiments.hpp"
#include "rmlab/lcd.hpp"
#include "rmlab/matrix_io.hpp"
#include "rmlab/output.hpp"
#include "rmlab/smallball.hpp"
#include "rmlab/spectra.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace rmlab;

Json point_json(const Point2& p) { return Json::array({p(0), p(1)}); }

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

void emit(const Json& report, const std::string& out_dir, const std::string& name) {
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  std::ofstream out(std::filesystem::path(out_dir) / name);
  require(static_cast<bool>(out << text), "cannot write report into '" + out_dir + "'");
}

Json lcd_json(const LcdResult& r) {
  Json j;
  j["kind"] = r.finite() ? "finite" : "at_least";
  j["value"] = r.value;
  j["certified_lower"] = r.certified_lower;
  j["certified_resolution"] = r.certified_resolution;
  j["residual"] = r.residual;
  j["witness_theta"] = r.witness_theta ? point_json(*r.witness_theta) : Json(nullptr);
  if (r.witness_p) {
    Json p = Json::array();
    for (Eigen::Index k = 0; k < r.witness_p->size(); ++k) p.push_back((*r.witness_p)(k));
    j["witness_p"] = p;
  } else {
    j["witness_p"] = nullptr;
  }
  return j;
}

ScalarDistribution distribution_named(const std::string& name) {
  EnsembleConfig e;
  e.distribution = name;
  return e.base();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-matrix small-ball laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version_string()));

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  auto* run = app.add_subcommand("run", "Run the experiment named in a config file");
  run->add_option("--config", config_path, "YAML experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (defaults to output_path from the config)");
  auto* seed_opt = run->add_option("--seed", seed, "Override the master seed");
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string vector_path;
  double alpha = 1.0, gamma = 0.1, bound = 0.0, resolution = 0.0;
  auto* lcd = app.add_subcommand("lcd", "Essential LCD of a unit vector file");
  lcd->add_option("--vector", vector_path, "Vector file")->required()->check(CLI::ExistingFile);
  lcd->add_option("--alpha", alpha, "alpha > 0");
  lcd->add_option("--gamma", gamma, "gamma in (0, 1)");
  lcd->add_option("--bound", bound, "Search cap (default 1000 sqrt n)");
  lcd->add_option("--resolution", resolution, "Grid resolution (default gamma / 8)");
  lcd->add_option("--out", out_dir, "Also write lcd.json here");

  double epsilon = 0.1;
  std::size_t trials = 100000;
  std::string distribution = "rademacher";
  auto* levy = app.add_subcommand("levy", "Levy concentration of a coefficient vector file");
  levy->add_option("--vector", vector_path, "Vector file (real: 1-D sums; complex: 2-D sums)")->required()->check(CLI::ExistingFile);
  levy->add_option("--epsilon", epsilon, "Ball radius")->check(CLI::NonNegativeNumber);
  levy->add_option("--trials", trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  levy->add_option("--distribution", distribution, "rademacher | gaussian | uniform");
  levy->add_option("--seed", seed, "Master seed");
  levy->add_option("--out", out_dir, "Also write levy.json here");

  std::string matrix_path;
  auto* spectrum = app.add_subcommand("spectrum", "Spectral report of a matrix file");
  spectrum->add_option("--matrix", matrix_path, "Matrix file")->required()->check(CLI::ExistingFile);
  spectrum->add_option("--out", out_dir, "Also write spectrum.json here");

  int enum_n = 2;
  auto* enumerate = app.add_subcommand("enumerate", "Exhaustive singularity count for +-1 +- i matrices");
  enumerate->add_option("--n", enum_n, "Dimension (1, 2 or 3)")->required();
  enumerate->add_option("--out", out_dir, "Output directory for CSV/JSON/manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      ExperimentConfig config = parse_config(config_path);
      SeedProvenance provenance{config.master_seed, std::nullopt};
      if (*seed_opt) provenance.override_seed = seed;
      config.master_seed = provenance.effective();
      const ExperimentResult result = run_experiment(config, threads);
      const std::string dir = out_dir.empty() ? config.output_path : out_dir;
      config.master_seed = provenance.config_seed;
      for (const auto& entry : write_outputs(result, config, provenance, dir))
        std::cout << entry.sha256 << "  " << entry.file << "\n";
      for (const auto& check : result.checks)
        std::cout << (check.passed ? "check ok   " : "check FAIL ") << check.name << ": " << check.detail << "\n";
    } else if (*lcd) {
      const ComplexVector v = read_vector_file(vector_path);
      const LcdParams params{alpha, gamma};
      params.validate();
      const double cap = bound > 0.0 ? bound : default_search_bound(v.size());
      const double res = resolution > 0.0 ? resolution : default_resolution(params, 1.0);
      Json report;
      report["n"] = v.size();
      report["alpha"] = alpha;
      report["gamma"] = gamma;
      report["search_bound"] = cap;
      report["lcd"] = lcd_json(complex_lcd(v, params, cap, res));
      emit(report, out_dir, "lcd.json");
    } else if (*levy) {
      const MatrixFile file = read_matrix_file(vector_path);
      require(file.data.rows() == 1 || file.data.cols() == 1, vector_path + ": a vector file needs one row or one column");
      const ComplexVector v = read_vector_file(vector_path);
      const ScalarDistribution dist = distribution_named(distribution);
      RandomStream stream = RandomStream::for_trial(seed, "levy", 0);
      Json report;
      report["epsilon"] = epsilon;
      report["distribution"] = dist.name();
      ConcentrationEstimate est;
      if (!file.is_complex) {
        const RealVector a = v.real();
        est = levy_1d(a, dist, epsilon, trials, stream);
        report["dimension"] = 1;
        if (dist.finitely_supported() && std::pow(static_cast<double>(dist.support().size()), a.size()) <= 1e7)
          report["exact"] = levy_1d_exact(a, dist, epsilon);
      } else {
        est = levy_2d(v, GenuinelyComplexSpec{dist}, epsilon, trials, stream);
        report["dimension"] = 2;
      }
      report["lower"] = est.lower;
      report["upper"] = est.upper;
      report["stderr"] = est.stderr;
      report["ci"] = {est.ci_low, est.ci_high};
      report["trials"] = est.trials;
      emit(report, out_dir, "levy.json");
    } else if (*spectrum) {
      const MatrixFile file = read_matrix_file(matrix_path);
      const ComplexMatrix& a = file.data;
      Json report;
      report["rows"] = a.rows();
      report["cols"] = a.cols();
      Json sv = Json::array();
      for (double s : singular_values(a).values) sv.push_back(s);
      report["singular_values"] = sv;
      if (a.rows() == a.cols() && a.rows() > 0) {
        const Spectrum s = eigenvalues(a);
        Json eig = Json::array();
        for (const auto& z : s.eigenvalues) eig.push_back(complex_json(z));
        report["eigenvalues"] = eig;
        report["backward_error"] = s.backward_error;
        const double kappa = condition_number(a);
        report["condition_number"] = std::isinf(kappa) ? Json("inf") : Json(kappa);
        if (!file.is_complex) report["real_eigenvalue_count"] = real_eigenvalue_count(a.real()).count_real;
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& z : s.eigenvalues) dist = std::min(dist, std::abs(z.imag()));
        report["real_axis_distance"] = dist;
      }
      emit(report, out_dir, "spectrum.json");
    } else if (*enumerate) {
      ExperimentConfig config;
      config.experiment = "singularity_enumeration";
      config.n_values = {enum_n};
      const ExperimentResult result = run_singularity_enumeration(config);
      if (out_dir.empty()) {
        write_csv(std::cout, result.rows);
      } else {
        for (const auto& entry : write_outputs(result, config, {config.master_seed, std::nullopt}, out_dir))
          std::cout << entry.sha256 << "  " << entry.file << "\n";
      }
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
