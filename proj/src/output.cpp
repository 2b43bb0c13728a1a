#include "rmlab/output.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <sstream>

#include "rmlab/config.hpp"
#include "rmlab/matrix_io.hpp"

#ifndef RMLAB_VERSION_STRING
#define RMLAB_VERSION_STRING "rmlab-unknown"
#endif

namespace rmlab {

namespace {

using Json = nlohmann::ordered_json;

std::string optional_number(const std::optional<double>& x) { return x ? format_double(*x) : std::string(); }

Json optional_json(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "cannot write '" + path.string() + "'");
  out << bytes;
  out.close();
  require(!out.fail(), "write failed for '" + path.string() + "'");
}

}  // namespace

const char* version_string() { return RMLAB_VERSION_STRING; }

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  require(ctx && EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) == 1 &&
              EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) == 1 &&
              EVP_DigestFinal_ex(ctx.get(), digest, &len) == 1,
          "SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return sha256_hex(buffer.str());
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "experiment,n,statistic,epsilon,estimate,stderr,trials,theory_value\n";
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.n << ',' << r.statistic << ',' << optional_number(r.epsilon) << ','
        << format_double(r.estimate) << ',' << format_double(r.stderr) << ',' << r.trials << ','
        << optional_number(r.theory_value) << '\n';
  }
}

std::vector<ManifestEntry> write_outputs(const ExperimentResult& result, const ExperimentConfig& config,
                                         const SeedProvenance& seed, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  require(!ec && fs::is_directory(out_dir), "cannot create output directory '" + out_dir + "'");
  const fs::path dir(out_dir);

  std::ostringstream csv;
  write_csv(csv, result.rows);

  ExperimentConfig effective = config;
  effective.master_seed = seed.effective();
  const std::string echo = config_to_yaml(effective);

  Json summary;
  summary["experiment"] = result.experiment;
  summary["version"] = version_string();
  summary["seed"] = {{"master_seed", seed.effective()},
                     {"source", seed.override_seed ? "override" : "config"},
                     {"config_seed", seed.config_seed}};
  Json fits = Json::array();
  for (const auto& f : result.fits) {
    fits.push_back({{"label", f.label},
                    {"n", f.n},
                    {"slope", f.fit.slope},
                    {"slope_stderr", f.fit.slope_stderr},
                    {"intercept", f.fit.intercept},
                    {"r_squared", f.fit.r_squared},
                    {"epsilon_range", {f.fit.epsilon_range.first, f.fit.epsilon_range.second}},
                    {"points", f.fit.points},
                    {"reliable", f.fit.reliable},
                    {"theory_slope", optional_json(f.theory_slope)}});
  }
  summary["fits"] = fits;
  Json checks = Json::array();
  for (const auto& c : result.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  summary["checks"] = checks;
  summary["notes"] = result.notes;
  Json rows = Json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"n", r.n},
                    {"statistic", r.statistic},
                    {"epsilon", optional_json(r.epsilon)},
                    {"estimate", r.estimate},
                    {"stderr", r.stderr},
                    {"trials", r.trials},
                    {"theory_value", optional_json(r.theory_value)},
                    {"theory_ref", r.theory_ref}});
  }
  summary["rows"] = rows;
  summary["config"] = echo;

  const std::vector<std::pair<std::string, std::string>> files = {
      {"results.csv", csv.str()}, {"summary.json", summary.dump(2) + "\n"}, {"config.yaml", echo}};
  std::vector<ManifestEntry> manifest;
  Json listing = Json::array();
  for (const auto& [name, bytes] : files) {
    write_file(dir / name, bytes);
    manifest.push_back({name, sha256_hex(bytes)});
    listing.push_back({{"file", name}, {"sha256", manifest.back().sha256}});
  }
  write_file(dir / "manifest.json", Json{{"files", listing}}.dump(2) + "\n");
  return manifest;
}

}  // namespace rmlab
