#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "npp/tgraph.hpp"

namespace npp {

/// Occurrence counts of a node in the five triad positions:
///   1  endpoint of the single edge in an edge-plus-detached-node triad
///   2  the detached node of that triad
///   3  an end of an open wedge
///   4  the center of an open wedge
///   5  a corner of a triangle
struct NppVector {
  std::array<std::uint64_t, 5> counts{};

  /// position in 1..5
  std::uint64_t at(int position) const { return counts.at(static_cast<std::size_t>(position - 1)); }
  std::uint64_t& at(int position) { return counts.at(static_cast<std::size_t>(position - 1)); }

  friend bool operator==(const NppVector&, const NppVector&) = default;
};

/// Per-node census indexed by snapshot local id. Runs in parallel when OpenMP
/// is available.
std::vector<NppVector> npp_census(const GraphSnapshot& s);

/// Triangles containing each node, via sorted neighbor-list intersection.
std::vector<std::uint64_t> triangles_per_node(const GraphSnapshot& s);

/// Global triad statistics: T triangles, W connected triples.
struct TriadTotals {
  std::uint64_t triangles = 0;
  std::uint64_t connected_triples = 0;
};
TriadTotals triad_totals(const GraphSnapshot& s);

/// 3T / W, or 0 when there are no connected triples.
double balance_rate(const GraphSnapshot& s);

/// Single-threaded reference kernels. Same contracts as the parallel versions.
namespace serial {
std::vector<NppVector> npp_census(const GraphSnapshot& s);
std::vector<std::uint64_t> triangles_per_node(const GraphSnapshot& s);
}  // namespace serial

enum class TriadType { kEdgeAndDetached = 1, kOpenWedge = 2 };

struct EvolutionResult {
  TriadType type;
  std::uint64_t population = 0;  // triads of the type in G_t
  std::uint64_t sampled = 0;
  std::uint64_t evolved = 0;
  std::optional<double> rate;    // empty when population is 0
  std::uint64_t seed = 0;
};

/// Fraction of type-1 or type-2 triads in G_t that gain an internal edge by
/// t + dt. Populations above `sample_cap` are sampled uniformly without
/// replacement over a canonical instance ordering.
EvolutionResult triad_evolution_rate(const TemporalGraph& g, Timestamp t, Timestamp dt,
                                     TriadType type, std::uint64_t sample_cap,
                                     std::uint64_t seed);

enum class PositionWeighting {
  kIndicator,  // |{v : p_i > 0 and p_j > 0}| / |{v : p_j > 0}|
  kCount,      // sum of p_j over nodes with p_i > 0, over sum of p_j
};

/// Prob(i | j); empty when no node occupies position j.
std::optional<double> position_conditional_prob(std::span<const NppVector> npp, int i, int j,
                                                PositionWeighting weighting = PositionWeighting::kIndicator);

}  // namespace npp
