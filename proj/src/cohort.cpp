#include "npp/cohort.hpp"

#include <algorithm>

#include "npp/census.hpp"

namespace npp {

std::optional<bool> ImportanceLabeling::is_important(NodeId v) const {
  if (std::binary_search(important.begin(), important.end(), v)) return true;
  if (std::binary_search(non_important.begin(), non_important.end(), v)) return false;
  return std::nullopt;
}

ImportanceLabeling label_nodes(std::span<const double> scores, std::span<const NodeId> ids, double threshold,
                               Measure measure) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw Error("labeling threshold must lie in (0, 1)");
  if (scores.empty()) throw Error("cannot label an empty score map");
  if (scores.size() != ids.size()) throw Error("scores and ids differ in length");
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(scores.size());

  ImportanceLabeling out;
  out.measure = measure;
  out.threshold = threshold;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const auto at_most = std::upper_bound(sorted.begin(), sorted.end(), scores[i]) - sorted.begin();
    if (static_cast<double>(at_most) / n >= threshold)
      out.important.push_back(ids[i]);
    else
      out.non_important.push_back(ids[i]);
  }
  std::sort(out.important.begin(), out.important.end());
  std::sort(out.non_important.begin(), out.non_important.end());
  return out;
}

ImportanceLabeling label_nodes(const CentralityScores& scores, const GraphSnapshot& s, double threshold) {
  return label_nodes(scores.scores, s.ids(), threshold, scores.measure);
}

FeatureSet parse_feature_set(std::string_view name) {
  if (name == "PA") return FeatureSet::kPA;
  if (name == "TC") return FeatureSet::kTC;
  if (name == "All") return FeatureSet::kAll;
  if (name == "NPP") return FeatureSet::kNPP;
  throw Error("unknown feature set '" + std::string(name) + "' (expected PA, TC, All or NPP)");
}

std::string_view feature_set_name(FeatureSet f) {
  switch (f) {
    case FeatureSet::kPA: return "PA";
    case FeatureSet::kTC: return "TC";
    case FeatureSet::kAll: return "All";
    case FeatureSet::kNPP: return "NPP";
  }
  return "?";
}

std::vector<std::string> feature_names(FeatureSet f) {
  switch (f) {
    case FeatureSet::kPA: return {"degree"};
    case FeatureSet::kTC: return {"p3"};
    case FeatureSet::kAll: return {"degree", "pagerank", "betweenness", "closeness"};
    case FeatureSet::kNPP: return {"p1", "p2", "p3", "p4", "p5"};
  }
  return {};
}

Dataset Cohort::to_dataset() const {
  Dataset d{feature_names, {}, {}};
  d.x.reserve(examples.size() * feature_names.size());
  for (const auto& ex : examples) {
    d.x.insert(d.x.end(), ex.features.begin(), ex.features.end());
    d.y.push_back(ex.important ? 1 : 0);
  }
  return d;
}

Cohort build_cohort(const TemporalGraph& g, const CohortSpec& spec) {
  if (spec.join_start > spec.join_end) throw Error("join window start exceeds end");
  if (spec.obs_duration < 0) throw Error("observation duration must be non-negative");
  if (spec.horizon <= spec.observation_end())
    throw Error("horizon " + std::to_string(spec.horizon) + " must be later than the observation end " +
                std::to_string(spec.observation_end()));

  Cohort c;
  c.spec = spec;
  c.feature_names = feature_names(spec.features);

  const auto members = cohort_join(g, spec.join_start, spec.join_end);
  const GraphSnapshot obs = snapshot_at(g, spec.observation_end());
  const GraphSnapshot fut = snapshot_at(g, spec.horizon);
  c.nodes_at_observation = obs.n();
  c.nodes_at_horizon = fut.n();
  if (members.empty()) return c;

  // Per-node feature columns on the observation snapshot.
  std::vector<std::vector<double>> columns;
  switch (spec.features) {
    case FeatureSet::kPA:
      columns.push_back(degree_centrality(obs));
      break;
    case FeatureSet::kTC:
    case FeatureSet::kNPP: {
      const auto census = npp_census(obs);
      for (int pos = 1; pos <= 5; ++pos) {
        if (spec.features == FeatureSet::kTC && pos != 3) continue;
        std::vector<double> col(obs.n());
        for (LocalId v = 0; v < obs.n(); ++v) col[v] = static_cast<double>(census[v].at(pos));
        columns.push_back(std::move(col));
      }
      break;
    }
    case FeatureSet::kAll:
      for (Measure m : {Measure::kDegree, Measure::kPageRank, Measure::kBetweenness, Measure::kCloseness})
        columns.push_back(compute_centrality(obs, m, spec.centrality).scores);
      break;
  }

  const auto labels = label_nodes(compute_centrality(fut, spec.label_measure, spec.centrality), fut, spec.threshold);
  for (NodeId v : members) {
    CohortExample ex{v, std::vector<double>(columns.size(), 0.0), false};
    if (auto lv = obs.local(v))
      for (std::size_t k = 0; k < columns.size(); ++k) ex.features[k] = columns[k][*lv];
    ex.important = labels.is_important(v).value_or(false);
    c.important_count += ex.important ? 1 : 0;
    c.examples.push_back(std::move(ex));
  }
  return c;
}

}  // namespace npp
