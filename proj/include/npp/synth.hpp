#pragma once

#include <cstdint>
#include <ostream>

#include "npp/tgraph.hpp"

namespace npp {

/// Growth model mixing preferential attachment with triadic closure. One node
/// arrives per tick; existing nodes keep linking, either to a degree-weighted
/// target or by closing a uniformly drawn open wedge.
struct GrowthParams {
  std::size_t nodes = 3000;
  std::size_t initial_clique = 5;
  int arrival_links = 2;          // links made by each newcomer
  double arrival_closure = 0.5;   // chance a newcomer's extra link goes to a neighbor of its first target
  int internal_links = 2;         // links among existing nodes per tick
  double internal_closure = 0.6;  // chance an internal link closes an open wedge
  double repeat_rate = 0.5;       // expected repeated interactions on existing pairs per tick
  std::uint64_t seed = 1;
};

TemporalGraph generate_growth(const GrowthParams& p);

/// Same stream as `generate_growth`, written as CSV `src,dst,ts`.
void write_growth_csv(const GrowthParams& p, std::ostream& out);

}  // namespace npp
