#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "npp/tgraph.hpp"

namespace npp {

enum class Measure { kDegree, kPageRank, kBetweenness, kCloseness };

Measure parse_measure(std::string_view name);
std::string_view measure_name(Measure m);

enum class ClosenessVariant {
  kComponent,       // (reachable - 1) / sum of distances inside the component
  kWassermanFaust,  // component closeness scaled by (reachable - 1) / (n - 1)
  kHarmonic,        // sum of 1/d over reachable nodes, divided by n - 1
};

ClosenessVariant parse_closeness_variant(std::string_view name);
std::string_view closeness_variant_name(ClosenessVariant v);

struct CentralityParams {
  double damping = 0.85;
  double tolerance = 1e-10;
  int max_iterations = 200;
  ClosenessVariant closeness = ClosenessVariant::kComponent;
};

struct CentralityScores {
  Measure measure = Measure::kDegree;
  std::vector<double> scores;  // indexed by snapshot local id
  CentralityParams params;
  // PageRank only.
  int iterations = 0;
  bool converged = true;
};

CentralityScores compute_centrality(const GraphSnapshot& s, Measure measure,
                                    const CentralityParams& params = {});

std::vector<double> degree_centrality(const GraphSnapshot& s);
CentralityScores pagerank(const GraphSnapshot& s, const CentralityParams& params = {});
/// Exact Brandes betweenness; each unordered pair counted once. Sources are
/// processed in parallel with per-thread accumulators.
std::vector<double> betweenness(const GraphSnapshot& s);
std::vector<double> closeness(const GraphSnapshot& s, ClosenessVariant variant = ClosenessVariant::kComponent);

namespace serial {
std::vector<double> betweenness(const GraphSnapshot& s);
}  // namespace serial

}  // namespace npp
