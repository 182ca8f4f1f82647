#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "npp/model_io.hpp"
#include "npp/pipeline.hpp"
#include "npp/synth.hpp"
#include "report.hpp"

namespace npp {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// A failure inside a pipeline stage; exit code 1.
class StageError : public Error {
 public:
  StageError(const std::string& stage, const std::string& what) : Error("stage '" + stage + "': " + what) {}
};

void require_file(const std::string& path) {
  if (path.empty()) throw ConfigError("no input file given");
  if (!fs::exists(path)) throw ConfigError("input file '" + path + "' does not exist");
}

// Options shared by the single-stage graph commands.
struct GraphInput {
  std::string edges;
  std::string nodes;
  std::string config;
  std::optional<Timestamp> t;
  std::string out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--edges", edges, "edge stream CSV/TSV (src,dst,ts)");
    cmd->add_option("--nodes", nodes, "optional node arrival file (node,ts)");
    cmd->add_option("--config", config, "config file supplying dataset and parameters");
    cmd->add_option("--t", t, "snapshot time (default: last event)");
    cmd->add_option("--out", out, "output file (default: stdout)");
  }

  ExperimentConfig load_config() const {
    ExperimentConfig cfg = config.empty() ? ExperimentConfig{} : ExperimentConfig::load(config);
    return cfg;
  }

  IngestResult ingest(const ExperimentConfig& cfg) const {
    std::string e = edges.empty() ? cfg.path("dataset.edges") : edges;
    std::string n = nodes.empty() && edges.empty() ? cfg.path("dataset.nodes") : nodes;
    require_file(e);
    if (!n.empty()) require_file(n);
    return ingest_edge_file(e, n);
  }

  Timestamp time(const TemporalGraph& g) const { return t ? *t : g.latest_event().value_or(0); }
};

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty())
    out << content;
  else
    report::write_file(path, content);
}

CentralityParams centrality_params(const ExperimentConfig& cfg) {
  CentralityParams p;
  p.damping = cfg.get_double("pagerank.damping");
  p.tolerance = cfg.get_double("pagerank.tol");
  p.closeness = parse_closeness_variant(cfg.get("closeness.variant"));
  return p;
}

// Experiment loaded from a config file with command-line overrides applied.
struct Experiment {
  ExperimentConfig cfg;
  TemporalGraph graph;
  IngestReport ingest;
  PipelineSettings settings;
  std::string out_dir;
};

Experiment load_experiment(const std::string& config_path, const std::optional<std::uint64_t>& seed,
                           const std::string& out_override) {
  Experiment ex;
  ex.cfg = ExperimentConfig::load(config_path);
  if (seed) ex.cfg.set("seed", std::to_string(*seed));
  ex.cfg.validate();
  auto ingested = ingest_edge_file(ex.cfg.path("dataset.edges"), ex.cfg.path("dataset.nodes"));
  ex.graph = std::move(ingested.graph);
  ex.ingest = ingested.report;
  ex.settings = settings_from_config(ex.cfg, ex.graph);
  ex.out_dir = out_override.empty() ? ex.cfg.get("output.dir") : out_override;
  return ex;
}

json stamp(const ExperimentConfig& cfg) { return {{"config_hash", cfg.hash()}, {"seed", cfg.seed()}}; }

json config_json(const ExperimentConfig& cfg) {
  json j = json::object();
  for (const auto& k : config_schema()) j[std::string(k.key)] = cfg.get(k.key);
  return j;
}

// Records every file an experiment writes; MANIFEST.json is rewritten on
// completion or failure.
class Manifest {
 public:
  Manifest(const ExperimentConfig& cfg, std::string dir, std::string command)
      : cfg_(cfg), dir_(std::move(dir)), command_(std::move(command)) {}

  void write(const std::string& name, const std::string& content) {
    report::write_file((fs::path(dir_) / name).string(), content);
    files_.push_back(name);
  }

  void finish(bool complete, const std::string& failed_stage = {}, const std::string& error = {}) {
    json j = stamp(cfg_);
    j["command"] = command_;
    j["complete"] = complete;
    j["files"] = files_;
    j["config"] = config_json(cfg_);
    if (!complete) {
      j["failed_stage"] = failed_stage;
      j["error"] = error;
    }
    report::write_file((fs::path(dir_) / "MANIFEST.json").string(), report::json_text(j));
  }

  template <class Fn>
  auto stage(const std::string& name, Fn&& fn) {
    try {
      return fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      finish(false, name, e.what());
      throw StageError(name, e.what());
    }
  }

 private:
  const ExperimentConfig& cfg_;
  std::string dir_;
  std::string command_;
  std::vector<std::string> files_;
};

// ---------------------------------------------------------------------------
// commands

int cmd_ingest(const std::string& edges, const std::string& nodes, const std::string& out_dir, std::ostream& out) {
  require_file(edges);
  if (!nodes.empty()) require_file(nodes);
  auto r = ingest_edge_file(edges, nodes);
  const auto& g = r.graph;

  struct Row {
    Timestamp t;
    NodeId u, v;
  };
  std::vector<Row> rows;
  for (const auto& e : g.edges())
    for (Timestamp t : e.times) rows.push_back({t, e.u, e.v});
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return std::tie(a.t, a.u, a.v) < std::tie(b.t, b.u, b.v); });
  std::ostringstream ev;
  ev << "src,dst,ts\n";
  for (const auto& row : rows) ev << g.name(row.u) << ',' << g.name(row.v) << ',' << row.t << '\n';
  std::ostringstream nd;
  nd << "node,ts\n";
  for (NodeId v = 0; v < g.node_count(); ++v) nd << g.name(v) << ',' << g.join_time(v) << '\n';

  const json rep = report::ingest_json(r.report);
  report::write_file((fs::path(out_dir) / "events.csv").string(), ev.str());
  report::write_file((fs::path(out_dir) / "nodes.csv").string(), nd.str());
  report::write_file((fs::path(out_dir) / "ingest_report.json").string(), report::json_text(rep));
  out << report::json_text(rep);
  return 0;
}

int cmd_census(const GraphInput& in, std::ostream& out) {
  const auto cfg = in.load_config();
  auto r = in.ingest(cfg);
  const auto snap = snapshot_at(r.graph, in.time(r.graph));
  emit(in.out, report::census_csv(r.graph, snap, npp_census(snap)), out);
  return 0;
}

int cmd_centrality(const GraphInput& in, const std::string& measure, std::ostream& out) {
  const auto cfg = in.load_config();
  const auto params = centrality_params(cfg);
  std::vector<Measure> measures;
  if (measure == "all")
    measures = {Measure::kDegree, Measure::kPageRank, Measure::kBetweenness, Measure::kCloseness};
  else
    measures = {parse_measure(measure)};
  auto r = in.ingest(cfg);
  const auto snap = snapshot_at(r.graph, in.time(r.graph));
  std::ostringstream csv;
  csv << "node,measure,score\n";
  for (Measure m : measures) {
    const auto scores = compute_centrality(snap, m, params);
    for (LocalId v = 0; v < snap.n(); ++v)
      csv << r.graph.name(snap.id(v)) << ',' << measure_name(m) << ',' << report::num(scores.scores[v]) << '\n';
  }
  emit(in.out, csv.str(), out);
  return 0;
}

int cmd_label(const GraphInput& in, const std::string& measure, std::optional<double> threshold, std::ostream& out) {
  const auto cfg = in.load_config();
  const double thr = threshold ? *threshold : cfg.get_double("label.threshold");
  const Measure m = parse_measure(measure.empty() ? cfg.get("label.measure") : measure);
  auto r = in.ingest(cfg);
  const auto snap = snapshot_at(r.graph, in.time(r.graph));
  const auto scores = compute_centrality(snap, m, centrality_params(cfg));
  const auto labels = label_nodes(scores, snap, thr);
  std::ostringstream csv;
  csv << "node,score,label\n";
  for (LocalId v = 0; v < snap.n(); ++v)
    csv << r.graph.name(snap.id(v)) << ',' << report::num(scores.scores[v]) << ','
        << (labels.is_important(snap.id(v)).value_or(false) ? "IN" : "NIN") << '\n';
  emit(in.out, csv.str(), out);
  return 0;
}

int cmd_run(const std::string& config, const std::optional<std::uint64_t>& seed, const std::string& out_override,
            std::ostream& out) {
  auto ex = load_experiment(config, seed, out_override);
  Manifest manifest(ex.cfg, ex.out_dir, "run");
  json results = json::object();
  for (FeatureSet f : requested_feature_sets(ex.cfg)) {
    const std::string name(feature_set_name(f));
    auto res = manifest.stage("train:" + name, [&] { return run_feature_set(ex.graph, ex.settings, f); });
    json meta = stamp(ex.cfg);
    meta["feature_set"] = name;
    meta["features"] = res.cohort.feature_names;
    meta["join_window"] = {res.cohort.spec.join_start, res.cohort.spec.join_end};
    meta["observation_end"] = res.cohort.spec.observation_end();
    meta["horizon"] = res.cohort.spec.horizon;
    meta["label_measure"] = std::string(measure_name(res.cohort.spec.label_measure));
    meta["threshold"] = res.cohort.spec.threshold;
    meta["examples"] = res.cohort.examples.size();
    meta["important"] = res.cohort.important_count;
    meta["nodes_at_observation"] = res.cohort.nodes_at_observation;
    meta["nodes_at_horizon"] = res.cohort.nodes_at_horizon;
    meta["train_size"] = res.split.train.size();
    meta["test_size"] = res.split.test.size();

    json model = model_to_json(res.model);
    model["config_hash"] = ex.cfg.hash();
    model["lambda"] = ex.settings.bagging.train.lambda;

    manifest.write("cohort_" + name + ".csv", report::cohort_csv(ex.graph, res.cohort));
    manifest.write("cohort_" + name + ".meta.json", report::json_text(meta));
    manifest.write("model_" + name + ".json", report::json_text(model));
    manifest.write("wald_" + name + ".csv", report::wald_csv(res.wald));
    manifest.write("roc_" + name + ".csv", report::curve_csv(curve_points(res.test_scores, res.test_labels)));

    json block = report::metrics_json(res.metrics);
    block["train_size"] = res.split.train.size();
    block["test_size"] = res.split.test.size();
    block["test_positives"] = std::count(res.test_labels.begin(), res.test_labels.end(), 1);
    block["wald_mode"] = res.wald.mode;
    if (!res.wald.diagnostic.empty()) block["wald_diagnostic"] = res.wald.diagnostic;
    results[name] = block;
  }
  json metrics = stamp(ex.cfg);
  metrics["dataset"] = ex.settings.dataset_name;
  metrics["results"] = results;
  manifest.write("metrics.json", report::json_text(metrics));
  manifest.finish(true);
  out << report::json_text(metrics);
  return 0;
}

std::string matrix_csv(const TransferMatrix& tm, const std::vector<std::vector<std::optional<double>>>& cells) {
  std::ostringstream csv;
  csv << "train\\test";
  for (const auto& d : tm.datasets) csv << ',' << d;
  csv << '\n';
  for (std::size_t i = 0; i < tm.datasets.size(); ++i) {
    csv << tm.datasets[i];
    for (std::size_t j = 0; j < tm.datasets.size(); ++j) csv << ',' << report::num(cells[i][j]);
    csv << '\n';
  }
  return csv.str();
}

int cmd_transfer(const std::vector<std::string>& configs, const std::optional<std::uint64_t>& seed,
                 const std::string& out_override, std::ostream& out) {
  if (configs.size() < 2) throw ConfigError("transfer requires ≥ 2 datasets");
  std::vector<Experiment> exps;
  for (const auto& c : configs) exps.push_back(load_experiment(c, seed, out_override));
  const auto sets = requested_feature_sets(exps.front().cfg);
  if (sets.size() != 1) throw ConfigError("transfer needs a single feature set, not 'compare'");

  const ExperimentConfig& lead = exps.front().cfg;
  Manifest manifest(lead, exps.front().out_dir, "transfer");
  std::map<std::string, BaggedModel> models;
  std::map<std::string, Dataset> tests;
  json inputs = json::array();
  for (auto& ex : exps) {
    std::string name = ex.settings.dataset_name;
    if (models.contains(name)) throw ConfigError("duplicate dataset.name '" + name + "'");
    const auto own_sets = requested_feature_sets(ex.cfg);
    auto res = manifest.stage("train:" + name, [&] { return run_feature_set(ex.graph, ex.settings, own_sets.front()); });
    const Dataset all = res.cohort.to_dataset();
    tests.emplace(name, all.subset(res.split.test));
    models.emplace(name, std::move(res.model));
    inputs.push_back({{"dataset", name}, {"config_hash", ex.cfg.hash()}, {"seed", ex.cfg.seed()}});
  }
  auto tm = manifest.stage("transfer", [&] { return transfer_matrix(models, tests); });

  std::ostringstream raw;
  raw << "train,test,auroc,aupr,test_size\n";
  for (std::size_t i = 0; i < tm.datasets.size(); ++i)
    for (std::size_t j = 0; j < tm.datasets.size(); ++j)
      raw << tm.datasets[i] << ',' << tm.datasets[j] << ',' << report::num(tm.raw[i][j].auroc) << ','
          << report::num(tm.raw[i][j].aupr) << ',' << tm.test_sizes[j] << '\n';

  json j = stamp(lead);
  j["inputs"] = inputs;
  j["datasets"] = tm.datasets;
  j["feature_set"] = std::string(feature_set_name(sets.front()));
  json cells = json::array();
  for (std::size_t a = 0; a < tm.datasets.size(); ++a)
    for (std::size_t b = 0; b < tm.datasets.size(); ++b)
      cells.push_back({{"train", tm.datasets[a]},
                       {"test", tm.datasets[b]},
                       {"auroc", report::opt(tm.raw[a][b].auroc)},
                       {"aupr", report::opt(tm.raw[a][b].aupr)},
                       {"auroc_loss", report::opt(tm.auroc_loss[a][b])},
                       {"aupr_loss", report::opt(tm.aupr_loss[a][b])},
                       {"test_size", tm.test_sizes[b]}});
  j["cells"] = cells;

  manifest.write("transfer_aupr_loss.csv", matrix_csv(tm, tm.aupr_loss));
  manifest.write("transfer_auroc_loss.csv", matrix_csv(tm, tm.auroc_loss));
  manifest.write("transfer_raw.csv", raw.str());
  manifest.write("transfer.json", report::json_text(j));
  manifest.finish(true);
  out << report::json_text(j);
  return 0;
}

int cmd_analyze(const std::string& which, const std::string& config, const std::optional<std::uint64_t>& seed,
                const std::string& out_override, std::ostream& out) {
  auto ex = load_experiment(config, seed, out_override);
  Manifest manifest(ex.cfg, ex.out_dir, "analyze " + which);
  json j = stamp(ex.cfg);
  if (which == "balance") {
    auto rep = manifest.stage("balance", [&] { return analyze_balance(ex.graph, ex.settings); });
    j.update(report::balance_json(rep));
    manifest.write("balance.json", report::json_text(j));
  } else if (which == "evolution") {
    auto res = manifest.stage("evolution", [&] { return analyze_evolution(ex.graph, ex.settings); });
    j["t"] = ex.settings.analyze_t;
    j["dt"] = ex.settings.analyze_dt;
    j["triads"] = {report::evolution_json(res[0]), report::evolution_json(res[1])};
    manifest.write("evolution.json", report::json_text(j));
  } else if (which == "positions") {
    auto table = manifest.stage("positions", [&] { return analyze_positions(ex.graph, ex.settings); });
    j["t"] = ex.settings.analyze_t;
    j["weighting"] = ex.cfg.get("positions.weighting");
    json rows = json::array();
    for (int i = 1; i <= 5; ++i)
      for (int k = 1; k <= 5; ++k) rows.push_back({{"i", i}, {"j", k}, {"prob", report::opt(table[i - 1][k - 1])}});
    j["prob_i_given_j"] = rows;
    manifest.write("positions.csv", report::positions_csv(table));
    manifest.write("positions.json", report::json_text(j));
  } else if (which == "influence") {
    auto res = manifest.stage("influence", [&] { return analyze_influence(ex.graph, ex.settings); });
    j["horizon"] = ex.settings.cohort.horizon;
    j["events"] = res.result.events.size();
    j["ordered_pairs_scanned"] = res.result.ordered_pairs_scanned;
    j["pairs_undefined_sigma"] = res.result.pairs_undefined_sigma;
    j["distribution"] = res.distribution;
    manifest.write("influence_events.csv", report::events_csv(res.graph, res.result.events));
    manifest.write("influence_distribution.json", report::json_text(j));
  } else {
    throw ConfigError("unknown analysis '" + which + "'");
  }
  manifest.finish(true);
  out << report::json_text(j);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Node prominence profiles, centralities and importance prediction on temporal graphs", "npp"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "override every configured seed");

  std::string ingest_edges, ingest_nodes, ingest_out = ".";
  auto* ingest = app.add_subcommand("ingest", "parse an edge stream; write normalized events and a JSON report");
  ingest->add_option("--edges", ingest_edges, "edge stream CSV/TSV (src,dst,ts)")->required();
  ingest->add_option("--nodes", ingest_nodes, "optional node arrival file (node,ts)");
  ingest->add_option("--out", ingest_out, "output directory");

  GraphInput census_in;
  auto* census = app.add_subcommand("census", "node prominence profile CSV (node,p1..p5)");
  census_in.attach(census);

  GraphInput cent_in;
  std::string cent_measure = "all";
  auto* centrality = app.add_subcommand("centrality", "centrality CSV (node,measure,score)");
  cent_in.attach(centrality);
  centrality->add_option("--measure", cent_measure, "degree | pagerank | betweenness | closeness | all");

  GraphInput label_in;
  std::string label_measure;
  std::optional<double> label_threshold;
  auto* label = app.add_subcommand("label", "Pareto IN/NIN labels (node,score,label)");
  label_in.attach(label);
  label->add_option("--measure", label_measure, "centrality used for ranking (default from config: degree)");
  label->add_option("--threshold", label_threshold, "cumulative fraction for IN (default 0.8)");

  std::string analyze_config, analyze_out;
  auto* analyze = app.add_subcommand("analyze", "structural analyses");
  analyze->require_subcommand(1);
  std::string which;
  for (const char* name : {"balance", "evolution", "positions", "influence"}) {
    auto* sub = analyze->add_subcommand(name);
    sub->add_option("--config", analyze_config, "experiment config")->required();
    sub->add_option("--out", analyze_out, "output directory (default: output.dir)");
    sub->callback([&which, name] { which = name; });
  }

  std::string run_config, run_out;
  auto* run = app.add_subcommand("run", "cohort -> features -> bagged logistic regression -> AUROC/AUPR");
  run->add_option("--config", run_config, "experiment config")->required();
  run->add_option("--out", run_out, "output directory (default: output.dir)");

  std::vector<std::string> transfer_configs;
  std::string transfer_out;
  auto* transfer = app.add_subcommand("transfer", "train on each dataset, evaluate on every other");
  transfer->add_option("--config", transfer_configs, "experiment configs, one per dataset")->required();
  transfer->add_option("--out", transfer_out, "output directory (default: first config's output.dir)");

  auto* config = app.add_subcommand("config", "configuration helpers");
  config->require_subcommand(1);
  auto* defaults = config->add_subcommand("print-defaults", "print every key with its default");

  GrowthParams growth;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "synthetic growth network (src,dst,ts)");
  generate->add_option("--nodes", growth.nodes, "node count");
  generate->add_option("--arrival-links", growth.arrival_links);
  generate->add_option("--arrival-closure", growth.arrival_closure);
  generate->add_option("--internal-links", growth.internal_links);
  generate->add_option("--internal-closure", growth.internal_closure);
  generate->add_option("--repeat-rate", growth.repeat_rate);
  generate->add_option("--out", gen_out, "output file (default: stdout)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*ingest) return cmd_ingest(ingest_edges, ingest_nodes, ingest_out, out);
    if (*census) return cmd_census(census_in, out);
    if (*centrality) return cmd_centrality(cent_in, cent_measure, out);
    if (*label) return cmd_label(label_in, label_measure, label_threshold, out);
    if (*analyze) return cmd_analyze(which, analyze_config, seed, analyze_out, out);
    if (*run) return cmd_run(run_config, seed, run_out, out);
    if (*transfer) return cmd_transfer(transfer_configs, seed, transfer_out, out);
    if (*defaults) {
      print_default_config(out);
      return 0;
    }
    if (*generate) {
      if (seed) growth.seed = *seed;
      if (gen_out.empty()) {
        write_growth_csv(growth, out);
      } else {
        std::ostringstream ss;
        write_growth_csv(growth, ss);
        report::write_file(gen_out, ss.str());
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace npp
