#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "npp/centrality.hpp"
#include "npp/learn.hpp"
#include "npp/tgraph.hpp"

namespace npp {

/// Pareto split into important (IN) and non-important (NIN) nodes.
struct ImportanceLabeling {
  Measure measure = Measure::kDegree;
  double threshold = 0.8;
  std::vector<NodeId> important;      // ascending
  std::vector<NodeId> non_important;  // ascending

  /// Empty when `v` was not labeled.
  std::optional<bool> is_important(NodeId v) const;
  bool covers(NodeId v) const { return is_important(v).has_value(); }
};

/// v is IN iff |{u : score(u) <= score(v)}| / |V| >= threshold; everyone else
/// is NIN. `ids` are the TemporalGraph ids matching `scores`.
ImportanceLabeling label_nodes(std::span<const double> scores, std::span<const NodeId> ids,
                               double threshold, Measure measure = Measure::kDegree);
ImportanceLabeling label_nodes(const CentralityScores& scores, const GraphSnapshot& s, double threshold);

enum class FeatureSet { kPA, kTC, kAll, kNPP };

FeatureSet parse_feature_set(std::string_view name);
std::string_view feature_set_name(FeatureSet f);
std::vector<std::string> feature_names(FeatureSet f);
inline constexpr FeatureSet kAllFeatureSets[] = {FeatureSet::kPA, FeatureSet::kTC, FeatureSet::kAll,
                                                 FeatureSet::kNPP};

struct CohortSpec {
  Timestamp join_start = 0;
  Timestamp join_end = 0;
  Timestamp obs_duration = 0;  // features from G at join_end + obs_duration
  Timestamp horizon = 0;       // labels from G at this absolute time
  FeatureSet features = FeatureSet::kNPP;
  Measure label_measure = Measure::kDegree;
  double threshold = 0.8;
  CentralityParams centrality;

  Timestamp observation_end() const { return join_end + obs_duration; }
};

struct CohortExample {
  NodeId node;
  std::vector<double> features;
  bool important;
};

struct Cohort {
  CohortSpec spec;
  std::vector<std::string> feature_names;
  std::vector<CohortExample> examples;
  // diagnostics
  std::size_t nodes_at_observation = 0;
  std::size_t nodes_at_horizon = 0;
  std::size_t important_count = 0;

  bool empty() const { return examples.empty(); }
  Dataset to_dataset() const;
};

/// One example per node joining in [join_start, join_end]. Features use only
/// events up to the observation end; labels come from the horizon snapshot.
Cohort build_cohort(const TemporalGraph& g, const CohortSpec& spec);

}  // namespace npp
