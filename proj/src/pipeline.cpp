#include "npp/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace npp {

Split stratified_split(std::span<const int> labels, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0 && test_fraction < 1)) throw Error("test fraction must lie in (0, 1)");
  std::mt19937_64 rng(seed);
  Split out;
  for (int cls : {0, 1}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == cls) idx.push_back(i);
    std::shuffle(idx.begin(), idx.end(), rng);
    auto k = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(idx.size())));
    // Keep both sides populated whenever the class has two or more members.
    if (idx.size() >= 2) k = std::clamp<std::size_t>(k, 1, idx.size() - 1);
    out.test.insert(out.test.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
    out.train.insert(out.train.end(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

PipelineSettings settings_from_config(const ExperimentConfig& cfg, const TemporalGraph& g) {
  PipelineSettings s;
  s.dataset_name = cfg.get("dataset.name");
  s.seed = cfg.seed();
  auto& c = s.cohort;
  c.join_start = cfg.get_int("window.join_start");
  c.join_end = cfg.get_int("window.join_end");
  c.obs_duration = cfg.get_int("window.obs_duration");
  c.horizon = cfg.get_int("window.horizon");
  if (c.horizon == 0) c.horizon = g.latest_event().value_or(0);
  c.label_measure = parse_measure(cfg.get("label.measure"));
  c.threshold = cfg.get_double("label.threshold");
  c.centrality.damping = cfg.get_double("pagerank.damping");
  c.centrality.tolerance = cfg.get_double("pagerank.tol");
  c.centrality.closeness = parse_closeness_variant(cfg.get("closeness.variant"));
  if (c.join_start > c.join_end) throw ConfigError("window.join_start exceeds window.join_end");
  if (c.horizon <= c.observation_end())
    throw ConfigError("window.horizon (" + std::to_string(c.horizon) + ") must be later than join_end + obs_duration (" +
                      std::to_string(c.observation_end()) + ")");

  s.bagging.bags = static_cast<int>(cfg.get_int("model.bags"));
  s.bagging.seed = s.seed;
  s.bagging.bootstrap = cfg.get_bool("model.bootstrap");
  s.bagging.train.lambda = cfg.get_double("model.lambda");
  s.bagging.train.tol = cfg.get_double("model.tol");
  s.bagging.train.max_iter = static_cast<int>(cfg.get_int("model.max_iter"));
  s.test_fraction = cfg.get_double("split.test_fraction");
  s.univariate_wald = cfg.get("wald.mode") == "univariate";

  s.analyze_t = cfg.get_int("analyze.t");
  if (s.analyze_t == 0) s.analyze_t = c.observation_end();
  s.analyze_dt = cfg.get_int("analyze.dt");
  if (s.analyze_dt == 0) s.analyze_dt = c.horizon - s.analyze_t;
  if (s.analyze_dt <= 0) throw ConfigError("analysis gap must be positive");
  s.sample_cap = static_cast<std::uint64_t>(cfg.get_int("evolution.sample_cap"));
  if (s.sample_cap < 1) throw ConfigError("evolution.sample_cap must be at least 1");
  s.weighting = cfg.get("positions.weighting") == "count" ? PositionWeighting::kCount : PositionWeighting::kIndicator;
  s.influence.sigma_mode = cfg.get("influence.sigma") == "global" ? SigmaMode::kGlobal : SigmaMode::kPerPair;
  s.influence.global_sigma = cfg.get_double("influence.global_sigma");
  s.influence.matching = cfg.get("influence.actions") == "all" ? ActionMatching::kAll : ActionMatching::kFirst;
  return s;
}

std::vector<FeatureSet> requested_feature_sets(const ExperimentConfig& cfg) {
  const auto& f = cfg.get("features");
  if (f == "compare") return {std::begin(kAllFeatureSets), std::end(kAllFeatureSets)};
  return {parse_feature_set(f)};
}

FeatureSetOutcome run_feature_set(const TemporalGraph& g, const PipelineSettings& s, FeatureSet fs) {
  FeatureSetOutcome out;
  out.features = fs;
  CohortSpec spec = s.cohort;
  spec.features = fs;
  out.cohort = build_cohort(g, spec);
  if (out.cohort.empty())
    throw Error("empty cohort for join window [" + std::to_string(spec.join_start) + ", " +
                std::to_string(spec.join_end) + "] (" + std::to_string(out.cohort.nodes_at_observation) +
                " nodes at observation end)");
  const Dataset all = out.cohort.to_dataset();
  out.split = stratified_split(all.y, s.test_fraction, s.seed);
  const Dataset train = all.subset(out.split.train);
  const Dataset test = all.subset(out.split.test);
  out.model = bagging_train(train, s.bagging);
  out.test_scores = predict_proba(out.model, test);
  out.test_labels = test.y;
  out.metrics = evaluate(out.test_scores, out.test_labels);
  if (s.univariate_wald) {
    out.wald = wald_test_univariate(train, s.bagging.train);
  } else {
    out.wald = wald_test(train_logistic(train, s.bagging.train), train);
  }
  return out;
}

namespace {

ImportanceLabeling horizon_labels(const GraphSnapshot& snap, const PipelineSettings& s) {
  return label_nodes(compute_centrality(snap, s.cohort.label_measure, s.cohort.centrality), snap, s.cohort.threshold);
}

}  // namespace

BalanceReport analyze_balance(const TemporalGraph& g, const PipelineSettings& s) {
  BalanceReport rep;
  rep.t = s.analyze_t;
  rep.later = s.analyze_t + s.analyze_dt;
  const GraphSnapshot now = snapshot_at(g, rep.t);
  const GraphSnapshot later = snapshot_at(g, rep.later);
  const auto labels = horizon_labels(later, s);

  std::vector<NodeId> in, nin;
  for (NodeId v : cohort_join(g, s.cohort.join_start, s.cohort.join_end)) {
    if (!now.local(v)) continue;  // not yet present at t
    (labels.is_important(v).value_or(false) ? in : nin).push_back(v);
  }
  auto side = [&](const std::vector<NodeId>& nodes) {
    BalanceSide b;
    b.nodes = nodes.size();
    const auto sub_now = induced_subgraph(now, nodes);
    const auto sub_later = induced_subgraph(later, nodes);
    b.edges_t = sub_now.m();
    b.edges_later = sub_later.m();
    b.rate_t = balance_rate(sub_now);
    b.rate_later = balance_rate(sub_later);
    return b;
  };
  rep.important = side(in);
  rep.non_important = side(nin);
  return rep;
}

std::array<EvolutionResult, 2> analyze_evolution(const TemporalGraph& g, const PipelineSettings& s) {
  return {triad_evolution_rate(g, s.analyze_t, s.analyze_dt, TriadType::kEdgeAndDetached, s.sample_cap, s.seed),
          triad_evolution_rate(g, s.analyze_t, s.analyze_dt, TriadType::kOpenWedge, s.sample_cap, s.seed)};
}

PositionTable analyze_positions(const TemporalGraph& g, const PipelineSettings& s) {
  const auto census = npp_census(snapshot_at(g, s.analyze_t));
  PositionTable table;
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) table[i - 1][j - 1] = position_conditional_prob(census, i, j, s.weighting);
  return table;
}

InfluenceAnalysis analyze_influence(const TemporalGraph& g, const PipelineSettings& s) {
  InfluenceAnalysis out;
  out.graph = g.truncated(s.cohort.horizon);
  const GraphSnapshot snap = snapshot_at(out.graph, s.cohort.horizon);
  out.labeling = horizon_labels(snap, s);
  out.result = detect_influence_events(out.graph, out.labeling, s.influence);
  out.distribution = event_distribution(out.result.events);
  return out;
}

}  // namespace npp
