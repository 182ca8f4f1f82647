#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "npp/census.hpp"
#include "npp/cohort.hpp"
#include "npp/config.hpp"
#include "npp/eval.hpp"
#include "npp/influence.hpp"
#include "npp/learn.hpp"
#include "npp/tgraph.hpp"

namespace npp {

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Per-class seeded shuffle; round(test_fraction * class size) rows of each
/// class go to the test side. Both index lists are ascending.
Split stratified_split(std::span<const int> labels, double test_fraction, std::uint64_t seed);

/// Resolved experiment parameters. Zero-valued horizon / analysis times in the
/// config are filled in from the graph.
struct PipelineSettings {
  std::string dataset_name;
  CohortSpec cohort;
  BaggingOptions bagging;
  double test_fraction = 0.3;
  bool univariate_wald = true;
  Timestamp analyze_t = 0;
  Timestamp analyze_dt = 0;
  std::uint64_t sample_cap = 100000;
  PositionWeighting weighting = PositionWeighting::kIndicator;
  InfluenceOptions influence;
  std::uint64_t seed = 42;
};

PipelineSettings settings_from_config(const ExperimentConfig& cfg, const TemporalGraph& g);

/// Feature sets requested by the config; "compare" expands to all four.
std::vector<FeatureSet> requested_feature_sets(const ExperimentConfig& cfg);

struct FeatureSetOutcome {
  FeatureSet features;
  Cohort cohort;
  Split split;
  BaggedModel model;
  MetricPair metrics;
  WaldReport wald;
  std::vector<double> test_scores;
  std::vector<int> test_labels;
};

/// cohort -> stratified split -> bagged training -> held-out metrics.
FeatureSetOutcome run_feature_set(const TemporalGraph& g, const PipelineSettings& s, FeatureSet fs);

struct BalanceSide {
  std::size_t nodes = 0;
  std::size_t edges_t = 0;
  std::size_t edges_later = 0;
  double rate_t = 0.0;
  double rate_later = 0.0;
};

struct BalanceReport {
  Timestamp t = 0;
  Timestamp later = 0;
  BalanceSide important;
  BalanceSide non_important;
};

/// Cohort nodes split by their label at t + dt; balance rates of the IN and
/// NIN induced sub-networks in G_t and G_{t+dt}.
BalanceReport analyze_balance(const TemporalGraph& g, const PipelineSettings& s);

std::array<EvolutionResult, 2> analyze_evolution(const TemporalGraph& g, const PipelineSettings& s);

/// table[i-1][j-1] = Prob(i | j) on the census of G_t.
using PositionTable = std::array<std::array<std::optional<double>, 5>, 5>;
PositionTable analyze_positions(const TemporalGraph& g, const PipelineSettings& s);

struct InfluenceAnalysis {
  TemporalGraph graph;  // truncated at the horizon; ids below refer to it
  ImportanceLabeling labeling;
  InfluenceResult result;
  std::map<std::string, std::size_t> distribution;
};

/// Events on the graph up to the horizon, labeled by the horizon centrality.
InfluenceAnalysis analyze_influence(const TemporalGraph& g, const PipelineSettings& s);

}  // namespace npp
