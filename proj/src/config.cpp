#include "rmlab/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace rmlab {

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& message) const {
    const int line = node.Mark().line;
    if (line >= 0) throw DomainError(source_ + ":" + std::to_string(line + 1) + ": " + message);
    throw DomainError(source_ + ": " + message);
  }

  void check_keys(const YAML::Node& map, const std::string& section, const std::set<std::string>& allowed) const {
    if (!map.IsMap()) fail(map, "'" + section + "' must be a mapping");
    for (const auto& item : map) {
      const auto key = item.first.as<std::string>();
      if (!allowed.contains(key)) {
        std::string where = section.empty() ? "at top level" : "in '" + section + "'";
        fail(item.first, "unknown key '" + key + "' " + where);
      }
    }
  }

  template <class T>
  T scalar(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) fail(node, "'" + key + "' must be a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, "'" + key + "' has an invalid value '" + node.Scalar() + "'");
    }
  }

  template <class T>
  std::vector<T> sequence(const YAML::Node& node, const std::string& key) const {
    if (!node.IsSequence()) fail(node, "'" + key + "' must be a list");
    std::vector<T> out;
    for (const auto& item : node) out.push_back(scalar<T>(item, key));
    return out;
  }

  /// Runs `check`; a DomainError it raises is re-reported at the node's line.
  template <class F>
  void validate_at(const YAML::Node& node, F&& check) const {
    try {
      check();
    } catch (const DomainError& e) {
      fail(node, e.what());
    }
  }

 private:
  std::string source_;
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& source) {
  Reader r(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw DomainError(source + ":" + std::to_string(e.mark.line + 1) + ": YAML syntax error: " + e.msg);
  }
  if (!root.IsMap()) throw DomainError(source + ": config must be a mapping");
  r.check_keys(root, "",
               {"experiment", "n_values", "trials", "master_seed", "ensemble", "decomp", "lcd", "epsilons",
                "output_path", "options"});

  ExperimentConfig c;
  if (!root["experiment"]) throw DomainError(source + ": missing required key 'experiment'");
  c.experiment = r.scalar<std::string>(root["experiment"], "experiment");
  {
    bool known = false;
    for (const auto& name : experiment_names()) known = known || name == c.experiment;
    if (!known) r.fail(root["experiment"], "unknown experiment '" + c.experiment + "'");
  }
  if (!root["n_values"]) throw DomainError(source + ": missing required key 'n_values'");
  c.n_values = r.sequence<int>(root["n_values"], "n_values");
  r.validate_at(root["n_values"], [&] {
    require(!c.n_values.empty(), "n_values must be nonempty");
    for (int n : c.n_values) require(n >= 1, "n_values entries must be positive");
  });
  if (auto node = root["trials"]) {
    const auto trials = r.scalar<long long>(node, "trials");
    if (trials < 1) r.fail(node, "trials must be at least 1");
    c.trials = static_cast<std::size_t>(trials);
  }
  if (auto node = root["master_seed"]) c.master_seed = r.scalar<std::uint64_t>(node, "master_seed");
  if (auto node = root["epsilons"]) {
    c.epsilons = r.sequence<double>(node, "epsilons");
    r.validate_at(node, [&] {
      for (std::size_t i = 0; i < c.epsilons.size(); ++i) {
        require(c.epsilons[i] > 0.0, "epsilons must be positive");
        if (i > 0) require(c.epsilons[i] > c.epsilons[i - 1], "epsilons must be strictly increasing");
      }
    });
  }
  if (auto node = root["output_path"]) c.output_path = r.scalar<std::string>(node, "output_path");

  if (auto e = root["ensemble"]) {
    r.check_keys(e, "ensemble", {"field", "distribution", "shift", "shift_k"});
    if (auto node = e["field"]) {
      const auto field = r.scalar<std::string>(node, "field");
      if (field == "real") c.ensemble.field = Field::Real;
      else if (field == "complex") c.ensemble.field = Field::Complex;
      else r.fail(node, "field must be 'real' or 'complex'");
    }
    if (auto node = e["distribution"]) c.ensemble.distribution = r.scalar<std::string>(node, "distribution");
    if (auto node = e["shift"]) c.ensemble.shift = r.scalar<std::string>(node, "shift");
    if (auto node = e["shift_k"]) c.ensemble.shift_k = r.scalar<double>(node, "shift_k");
    r.validate_at(e, [&] { c.ensemble.validate(); });
  }
  if (auto d = root["decomp"]) {
    r.check_keys(d, "decomp", {"delta", "rho"});
    if (auto node = d["delta"]) c.decomp.delta = r.scalar<double>(node, "delta");
    if (auto node = d["rho"]) c.decomp.rho = r.scalar<double>(node, "rho");
    r.validate_at(d, [&] { c.decomp.validate(); });
  }
  if (auto l = root["lcd"]) {
    r.check_keys(l, "lcd", {"alpha", "gamma"});
    if (auto node = l["alpha"]) c.lcd.alpha = r.scalar<double>(node, "alpha");
    if (auto node = l["gamma"]) c.lcd.gamma = r.scalar<double>(node, "gamma");
    r.validate_at(l, [&] { c.lcd.validate(); });
  }
  if (auto o = root["options"]) {
    r.check_keys(o, "options",
                 {"m", "vector", "vectors_per_matrix", "min_tail_count", "net_k", "plant_real_eigenvalue",
                  "beta_fraction"});
    auto& opt = c.options;
    if (auto node = o["m"]) opt.m = r.scalar<int>(node, "m");
    if (auto node = o["vector"]) opt.vector = r.scalar<std::string>(node, "vector");
    if (auto node = o["vectors_per_matrix"]) opt.vectors_per_matrix = r.scalar<std::size_t>(node, "vectors_per_matrix");
    if (auto node = o["min_tail_count"]) opt.min_tail_count = r.scalar<std::size_t>(node, "min_tail_count");
    if (auto node = o["net_k"]) opt.net_k = r.scalar<double>(node, "net_k");
    if (auto node = o["plant_real_eigenvalue"]) opt.plant_real_eigenvalue = r.scalar<bool>(node, "plant_real_eigenvalue");
    if (auto node = o["beta_fraction"]) opt.beta_fraction = r.scalar<double>(node, "beta_fraction");
  }
  r.validate_at(root, [&] { c.validate(); });
  return c;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

std::string config_to_yaml(const ExperimentConfig& c) {
  std::ostringstream out;
  auto list = [](const auto& xs, auto&& f) {
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + f(xs[i]);
    return s + "]";
  };
  out << "experiment: " << c.experiment << "\n";
  out << "n_values: " << list(c.n_values, [](int n) { return std::to_string(n); }) << "\n";
  out << "trials: " << c.trials << "\n";
  out << "master_seed: " << c.master_seed << "\n";
  out << "epsilons: " << list(c.epsilons, fmt) << "\n";
  out << "output_path: \"" << c.output_path << "\"\n";
  out << "ensemble:\n";
  out << "  field: " << (c.ensemble.field == Field::Real ? "real" : "complex") << "\n";
  out << "  distribution: " << c.ensemble.distribution << "\n";
  out << "  shift: " << c.ensemble.shift << "\n";
  out << "  shift_k: " << fmt(c.ensemble.shift_k) << "\n";
  out << "decomp:\n";
  out << "  delta: " << fmt(c.decomp.delta) << "\n";
  out << "  rho: " << fmt(c.decomp.rho) << "\n";
  out << "lcd:\n";
  out << "  alpha: " << fmt(c.lcd.alpha) << "\n";
  out << "  gamma: " << fmt(c.lcd.gamma) << "\n";
  out << "options:\n";
  out << "  m: " << c.options.m << "\n";
  out << "  vector: " << c.options.vector << "\n";
  out << "  vectors_per_matrix: " << c.options.vectors_per_matrix << "\n";
  out << "  min_tail_count: " << c.options.min_tail_count << "\n";
  out << "  net_k: " << fmt(c.options.net_k) << "\n";
  out << "  plant_real_eigenvalue: " << (c.options.plant_real_eigenvalue ? "true" : "false") << "\n";
  out << "  beta_fraction: " << fmt(c.options.beta_fraction) << "\n";
  return out.str();
}

bool operator==(const EnsembleConfig& a, const EnsembleConfig& b) {
  return a.field == b.field && a.distribution == b.distribution && a.shift == b.shift && a.shift_k == b.shift_k;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  const auto& x = a.options;
  const auto& y = b.options;
  return a.experiment == b.experiment && a.n_values == b.n_values && a.trials == b.trials &&
         a.master_seed == b.master_seed && a.ensemble == b.ensemble && a.decomp.delta == b.decomp.delta &&
         a.decomp.rho == b.decomp.rho && a.lcd.alpha == b.lcd.alpha && a.lcd.gamma == b.lcd.gamma &&
         a.epsilons == b.epsilons && a.output_path == b.output_path && x.m == y.m && x.vector == y.vector &&
         x.vectors_per_matrix == y.vectors_per_matrix && x.min_tail_count == y.min_tail_count &&
         x.net_k == y.net_k && x.plant_real_eigenvalue == y.plant_real_eigenvalue &&
         x.beta_fraction == y.beta_fraction;
}

}  // namespace rmlab
