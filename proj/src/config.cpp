#include "npp/config.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace npp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

const ConfigKey* find_key(std::string_view key) {
  for (const auto& k : config_schema())
    if (k.key == key) return &k;
  return nullptr;
}

}  // namespace

const std::vector<ConfigKey>& config_schema() {
  static const std::vector<ConfigKey> schema = {
      {"dataset.name", "dataset", "label used in transfer matrices"},
      {"dataset.edges", "", "edge stream CSV/TSV with header src,dst,ts"},
      {"dataset.nodes", "", "optional node arrival file with header node,ts"},
      {"window.join_start", "0", "cohort join window start (inclusive)"},
      {"window.join_end", "0", "cohort join window end (inclusive)"},
      {"window.obs_duration", "0", "features observed until join_end + obs_duration"},
      {"window.horizon", "0", "absolute label time; 0 means the last event"},
      {"label.measure", "degree", "degree | pagerank | betweenness | closeness"},
      {"label.threshold", "0.8", "Pareto cumulative fraction for IN"},
      {"features", "NPP", "PA | TC | All | NPP | compare"},
      {"model.lambda", "0.001", "L2 penalty"},
      {"model.bags", "25", "bagged logistic models"},
      {"model.tol", "1e-8", "gradient infinity-norm stopping tolerance"},
      {"model.max_iter", "20000", "gradient descent iteration cap"},
      {"model.bootstrap", "true", "resample each bag with replacement"},
      {"split.test_fraction", "0.3", "stratified held-out fraction"},
      {"seed", "42", "seed for splits, bagging and sampling"},
      {"pagerank.damping", "0.85", "PageRank damping"},
      {"pagerank.tol", "1e-10", "PageRank L1 convergence tolerance"},
      {"closeness.variant", "component", "component | wasserman-faust | harmonic"},
      {"wald.mode", "univariate", "univariate | joint (NPP columns are collinear within one snapshot)"},
      {"analyze.t", "0", "analysis time; 0 means the observation end"},
      {"analyze.dt", "0", "evolution/balance gap; 0 means horizon - analyze.t"},
      {"evolution.sample_cap", "100000", "max triads evaluated per type"},
      {"positions.weighting", "indicator", "indicator | count"},
      {"influence.sigma", "pair", "pair | global"},
      {"influence.global_sigma", "0", "delay threshold when influence.sigma = global"},
      {"influence.actions", "first", "first | all"},
      {"output.dir", "out", "output directory"},
  };
  return schema;
}

ExperimentConfig::ExperimentConfig() {
  for (const auto& k : config_schema()) values_.emplace(std::string(k.key), std::string(k.default_value));
}

ExperimentConfig ExperimentConfig::parse(std::string_view text, const std::string& base_dir) {
  ExperimentConfig cfg;
  cfg.base_dir_ = base_dir;
  std::size_t lineno = 0;
  while (!text.empty()) {
    ++lineno;
    auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    try {
      cfg.set(key, std::string(value));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  auto dir = std::filesystem::path(path).parent_path().string();
  return parse(ss.str(), dir);
}

void ExperimentConfig::set(std::string_view key, std::string value) {
  if (!find_key(key)) throw ConfigError("unknown config key '" + std::string(key) + "'");
  values_[std::string(key)] = std::move(value);
}

const std::string& ExperimentConfig::get(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  return it->second;
}

std::string ExperimentConfig::path(std::string_view key) const {
  const auto& v = get(key);
  if (v.empty()) return v;
  std::filesystem::path p(v);
  if (p.is_absolute() || base_dir_.empty()) return v;
  return (std::filesystem::path(base_dir_) / p).lexically_normal().string();
}

std::int64_t ExperimentConfig::get_int(std::string_view key) const {
  const auto& v = get(key);
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("config key '" + std::string(key) + "' expects an integer, got '" + v + "'");
  return out;
}

double ExperimentConfig::get_double(std::string_view key) const {
  const auto& v = get(key);
  double out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("config key '" + std::string(key) + "' expects a number, got '" + v + "'");
  return out;
}

bool ExperimentConfig::get_bool(std::string_view key) const {
  const auto& v = get(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + std::string(key) + "' expects true/false, got '" + v + "'");
}

void ExperimentConfig::write(std::ostream& out) const {
  for (const auto& k : config_schema()) out << k.key << " = " << get(k.key) << '\n';
}

std::string ExperimentConfig::hash() const {
  std::ostringstream ss;
  for (const auto& k : config_schema()) ss << k.key << '=' << get(k.key) << '\n';
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : ss.str()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void ExperimentConfig::validate() const {
  for (const auto& k : config_schema()) {
    const std::string_view key = k.key;
    if (key.starts_with("window.") || key == "model.bags" || key == "model.max_iter" || key == "seed" ||
        key == "analyze.t" || key == "analyze.dt" || key == "evolution.sample_cap")
      (void)get_int(key);
    if (key == "label.threshold" || key == "model.lambda" || key == "model.tol" || key == "split.test_fraction" ||
        key.starts_with("pagerank.") || key == "influence.global_sigma")
      (void)get_double(key);
  }
  (void)get_bool("model.bootstrap");
  const double thr = get_double("label.threshold");
  if (!(thr > 0 && thr < 1)) throw ConfigError("label.threshold must lie in (0, 1)");
  const double tf = get_double("split.test_fraction");
  if (!(tf > 0 && tf < 1)) throw ConfigError("split.test_fraction must lie in (0, 1)");
  if (get_int("model.bags") < 1) throw ConfigError("model.bags must be at least 1");
  if (get_double("model.lambda") < 0) throw ConfigError("model.lambda must be non-negative");
  if (get("dataset.edges").empty()) throw ConfigError("dataset.edges is required");
  for (auto key : {"dataset.edges", "dataset.nodes"}) {
    auto p = path(key);
    if (!p.empty() && !std::filesystem::exists(p)) throw ConfigError("input file '" + p + "' does not exist");
  }
  const auto& f = get("features");
  if (f != "PA" && f != "TC" && f != "All" && f != "NPP" && f != "compare")
    throw ConfigError("features must be PA, TC, All, NPP or compare");
  const auto& sm = get("influence.sigma");
  if (sm != "pair" && sm != "global") throw ConfigError("influence.sigma must be pair or global");
  const auto& am = get("influence.actions");
  if (am != "first" && am != "all") throw ConfigError("influence.actions must be first or all");
  const auto& pw = get("positions.weighting");
  if (pw != "indicator" && pw != "count") throw ConfigError("positions.weighting must be indicator or count");
  const auto& wm = get("wald.mode");
  if (wm != "joint" && wm != "univariate") throw ConfigError("wald.mode must be joint or univariate");
}

void print_default_config(std::ostream& out) {
  for (const auto& k : config_schema()) {
    out << "# " << k.help << '\n';
    out << k.key << " = " << k.default_value << '\n';
  }
}

}  // namespace npp
