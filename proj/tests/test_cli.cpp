#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rmlab/config.hpp"
#include "rmlab/matrix_io.hpp"
#include "rmlab/output.hpp"
#include "rmlab/random_stream.hpp"

using namespace rmlab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("rmlab_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

int run_cli(const std::string& args, const fs::path& capture = {}) {
  std::string cmd = std::string("\"") + RMLAB_CLI_PATH + "\" " + args;
  cmd += capture.empty() ? " >/dev/null 2>&1" : " >\"" + capture.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string parse_error(const std::string& text) {
  try {
    parse_config_text(text, "cfg.yaml");
  } catch (const DomainError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("config errors name the line") {
  const std::string typo = "experiment: lsv_tail\nn_values: [4]\ntrails: 10\n";
  CHECK(parse_error(typo).find("cfg.yaml:3:") != std::string::npos);
  CHECK(parse_error(typo).find("trails") != std::string::npos);
  const std::string zero = "experiment: lsv_tail\nn_values: [4]\ntrials: 0\n";
  CHECK(parse_error(zero).find("cfg.yaml:3:") != std::string::npos);
  CHECK(parse_error("experiment: lsv_tail\nn_values: 4\n").find("cfg.yaml:2:") != std::string::npos);
  CHECK(parse_error("experiment: lsv_tail\nn_values: [4]\nensemble:\n  colour: red\n").find("cfg.yaml:4:") !=
        std::string::npos);
  CHECK(parse_error("experiment: [\n") != "");
  CHECK(parse_error("n_values: [4]\n") != "");
}

TEST_CASE("config yaml round trip") {
  ExperimentConfig c;
  c.experiment = "lsv_tail";
  c.n_values = {4, 9};
  c.trials = 123;
  c.master_seed = 0xfedcba9876543210ull;
  c.ensemble.field = Field::Complex;
  c.ensemble.distribution = "uniform";
  c.ensemble.shift = "rank_one";
  c.ensemble.shift_k = 0.3;
  c.decomp = {0.15, 0.25};
  c.lcd = {0.7, 1.0 / 3.0};
  c.epsilons = {0.1, 0.30000000000000004};
  c.options.m = 3;
  c.options.vector = "gaussian";
  c.options.plant_real_eigenvalue = true;
  c.output_path = "somewhere/else";
  const ExperimentConfig back = parse_config_text(config_to_yaml(c));
  CHECK(back == c);
  CHECK(config_to_yaml(back) == config_to_yaml(c));

  ExperimentConfig real = c;
  real.ensemble = EnsembleConfig{Field::Real, "gaussian", "none", 0.5};
  CHECK(parse_config_text(config_to_yaml(real)) == real);
  CHECK(parse_error("experiment: lsv_tail\nn_values: [4]\nensemble:\n  field: real\n  shift: rank_one\n") != "");
}

TEST_CASE("bundled configs parse") {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(RMLAB_CONFIG_DIR)) {
    if (entry.path().extension() != ".yaml") continue;
    CHECK_NOTHROW(parse_config(entry.path().string()));
    ++count;
  }
  CHECK(count >= 9);
}

TEST_CASE("complex token parsing") {
  CHECK(parse_complex("1+2i") == Complex(1, 2));
  CHECK(parse_complex("-1-2i") == Complex(-1, -2));
  CHECK(parse_complex("1e-3-2.5e+2i") == Complex(1e-3, -250.0));
  CHECK(parse_complex("3i") == Complex(0, 3));
  CHECK(parse_complex("-4") == Complex(-4, 0));
  CHECK(parse_complex("+0.5") == Complex(0.5, 0));
  CHECK_THROWS_AS(parse_complex("1+2j"), DomainError);
  CHECK_THROWS_AS(parse_complex("nan"), DomainError);
  CHECK_THROWS_AS(parse_complex("inf"), DomainError);
  CHECK_THROWS_AS(parse_complex("1+i"), DomainError);
}

TEST_CASE("matrix text round trip is exact") {
  RandomStream s(91);
  ComplexMatrix m(3, 4);
  for (auto& z : m.reshaped()) z = {s.gaussian() * 1e-7, s.gaussian() * 1e5};
  std::stringstream buf;
  write_matrix(buf, m);
  const MatrixFile back = read_matrix(buf);
  CHECK(back.is_complex);
  CHECK(back.data == m);

  RealMatrix r(2, 2);
  r << 0.1, -0.2, 1.0 / 3.0, 1e300;
  std::stringstream rbuf;
  write_matrix(rbuf, r.cast<Complex>(), false);
  const MatrixFile rback = read_matrix(rbuf);
  CHECK_FALSE(rback.is_complex);
  CHECK(rback.data.real() == r);
}

TEST_CASE("malformed matrix files") {
  auto bad = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(read_matrix(in), DomainError);
  };
  bad("2 2 real\n1 2 3\n");
  bad("2 2 real\n1 2 3 4 5\n");
  bad("2 2 quaternion\n1 2 3 4\n");
  bad("x 2 real\n");
  bad("1 1 real\nnan\n");
  bad("1 1 real\n1+2i\n");
  std::istringstream ok("1 2 complex\n1 -2i\n");
  CHECK(read_matrix(ok).data(0, 1) == Complex(0, -2));
}

TEST_CASE("sha256 known answers") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("cli exit codes") {
  TempDir tmp;
  CHECK(run_cli("") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("run") == 2);
  CHECK(run_cli("run --config /nonexistent.yaml") == 2);
  CHECK(run_cli("--version") == 0);

  write_text(tmp.path / "bad.yaml", "experiment: lsv_tail\nn_values: [4]\ntrails: 10\n");
  const fs::path log = tmp.path / "log.txt";
  CHECK(run_cli("run --config " + (tmp.path / "bad.yaml").string(), log) == 1);
  CHECK(slurp(log).find("bad.yaml:3:") != std::string::npos);

  write_text(tmp.path / "nonunit.txt", "2 1 complex\n1+0i\n1+0i\n");
  CHECK(run_cli("lcd --vector " + (tmp.path / "nonunit.txt").string()) == 1);
  write_text(tmp.path / "broken.txt", "2 2 real\n1 2 3\n");
  CHECK(run_cli("spectrum --matrix " + (tmp.path / "broken.txt").string()) == 1);
  CHECK(run_cli("enumerate --n 5") == 1);
}

TEST_CASE("cli lcd, levy and spectrum reports") {
  TempDir tmp;
  write_text(tmp.path / "e1.txt", "3 1 complex\n1+0i\n0+0i\n0+0i\n");
  CHECK(run_cli("lcd --vector " + (tmp.path / "e1.txt").string() + " --out " + tmp.path.string()) == 0);
  const auto lcd = nlohmann::json::parse(slurp(tmp.path / "lcd.json"));
  CHECK(lcd["lcd"]["kind"] == "finite");
  CHECK(std::abs(lcd["lcd"]["value"].get<double>() - 1.0 / 1.1) < 1e-3);

  write_text(tmp.path / "half.txt", "1 4 real\n0.70710678118654757 0.70710678118654757 0 0\n");
  CHECK(run_cli("levy --vector " + (tmp.path / "half.txt").string() + " --epsilon 0 --trials 20000 --out " +
                tmp.path.string()) == 0);
  const auto levy = nlohmann::json::parse(slurp(tmp.path / "levy.json"));
  CHECK(levy["exact"].get<double>() == 0.5);
  CHECK(std::abs(levy["lower"].get<double>() - 0.5) < 0.02);

  write_text(tmp.path / "rot.txt", "2 2 real\n0 -1\n1 0\n");
  CHECK(run_cli("spectrum --matrix " + (tmp.path / "rot.txt").string() + " --out " + tmp.path.string()) == 0);
  const auto spec = nlohmann::json::parse(slurp(tmp.path / "spectrum.json"));
  CHECK(spec["real_eigenvalue_count"] == 0);
  CHECK(spec["condition_number"].get<double>() == doctest::Approx(1.0));
  CHECK(spec["real_axis_distance"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("cli run writes a reproducible, seed-tagged output set") {
  TempDir tmp;
  write_text(tmp.path / "cfg.yaml",
             "experiment: real_axis_proximity\nn_values: [4]\ntrials: 60\nmaster_seed: 5\nepsilons: [0.2]\n");
  const auto cfg = (tmp.path / "cfg.yaml").string();
  const fs::path a = tmp.path / "a", b = tmp.path / "b", c = tmp.path / "c";
  REQUIRE(run_cli("run --config " + cfg + " --threads 1 --out " + a.string()) == 0);
  REQUIRE(run_cli("run --config " + cfg + " --threads 4 --out " + b.string()) == 0);
  REQUIRE(run_cli("run --config " + cfg + " --seed 6 --out " + c.string()) == 0);
  for (const char* f : {"results.csv", "summary.json", "config.yaml", "manifest.json"}) {
    CHECK(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  CHECK(slurp(a / "results.csv").rfind("experiment,n,statistic,epsilon,estimate,stderr,trials,theory_value\n", 0) == 0);

  const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
  for (const auto& entry : manifest["files"])
    CHECK(entry["sha256"].get<std::string>() == sha256_file((a / entry["file"].get<std::string>()).string()));

  const auto plain = nlohmann::json::parse(slurp(a / "summary.json"));
  CHECK(plain["seed"]["source"] == "config");
  CHECK(plain["seed"]["master_seed"] == 5);
  const auto overridden = nlohmann::json::parse(slurp(c / "summary.json"));
  CHECK(overridden["seed"]["source"] == "override");
  CHECK(overridden["seed"]["master_seed"] == 6);
  CHECK(overridden["seed"]["config_seed"] == 5);
  CHECK(slurp(c / "results.csv") != slurp(a / "results.csv"));
  CHECK(parse_config((c / "config.yaml").string()).master_seed == 6);
}
