#pragma once

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "npp/types.hpp"

namespace npp {

/// Timestamps of every logged interaction between an unordered pair u < v.
struct EdgeRecord {
  NodeId u;
  NodeId v;
  std::vector<Timestamp> times;  // sorted ascending, never empty

  Timestamp first() const { return times.front(); }
};

struct IngestReport {
  std::size_t events = 0;              // accepted edge events
  std::size_t skipped_self_loops = 0;
  std::size_t duplicate_events = 0;    // repeated (u,v,t) triples, kept as multiset entries
  std::size_t arrival_records = 0;
  std::size_t arrival_conflicts = 0;   // arrival later than first edge; clamped
  std::size_t nodes = 0;
  std::size_t edges = 0;               // distinct unordered pairs
};

/// Undirected temporal multigraph G = (V, E, T_V, T_E). Immutable once built.
class TemporalGraph {
 public:
  TemporalGraph() = default;

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& name(NodeId v) const { return names_.at(v); }
  std::optional<NodeId> find(std::string_view name) const;
  /// Throws Error naming the id when it is not present.
  NodeId id(std::string_view name) const;

  Timestamp join_time(NodeId v) const { return join_time_.at(v); }
  std::span<const Timestamp> join_times() const { return join_time_; }

  /// Edge records sorted by (u, v) with u < v.
  std::span<const EdgeRecord> edges() const { return edges_; }

  /// Pointer to the record of pair {a, b}, or nullptr if never linked.
  const EdgeRecord* edge(NodeId a, NodeId b) const;
  std::optional<Timestamp> first_time(NodeId a, NodeId b) const;

  /// Partners ever linked to v, ascending.
  std::span<const NodeId> partners(NodeId v) const { return partners_.at(v); }

  std::optional<Timestamp> earliest_event() const;
  std::optional<Timestamp> latest_event() const;

  /// Copy keeping only events with timestamp <= t and nodes with join_time <= t.
  TemporalGraph truncated(Timestamp t) const;

 private:
  friend class TemporalGraphBuilder;

  void index();

  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> lookup_;
  std::vector<Timestamp> join_time_;
  std::vector<EdgeRecord> edges_;
  std::vector<std::vector<NodeId>> partners_;
  std::vector<std::vector<std::size_t>> partner_edge_;  // parallel to partners_
};

/// Single-writer accumulator for edge events and arrival records.
class TemporalGraphBuilder {
 public:
  /// Returns false (and counts a warning) for self-loops.
  bool add_event(std::string_view src, std::string_view dst, Timestamp t);
  void add_arrival(std::string_view node, Timestamp t);

  TemporalGraph build();
  const IngestReport& report() const { return report_; }

 private:
  NodeId intern(std::string_view name);

  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> lookup_;
  std::vector<std::pair<std::pair<NodeId, NodeId>, Timestamp>> events_;
  std::unordered_map<NodeId, Timestamp> arrivals_;
  IngestReport report_;
};

struct IngestResult {
  TemporalGraph graph;
  IngestReport report;
};

/// Reads a CSV/TSV edge stream with header columns `src,dst,ts` (extra columns
/// ignored). An optional node stream with columns `node,ts` overrides join times.
IngestResult ingest_edge_stream(std::istream& edges, std::istream* arrivals = nullptr);
IngestResult ingest_edge_file(const std::string& edge_path,
                              const std::string& arrival_path = {});

/// Static simple undirected graph in CSR form. Local ids index `ids`, which
/// holds the corresponding TemporalGraph ids in ascending order.
class GraphSnapshot {
 public:
  GraphSnapshot() : offsets_{0} {}

  /// Builds from local-id edge pairs. Duplicates and self-loops are dropped.
  GraphSnapshot(std::vector<NodeId> ids, std::vector<std::pair<LocalId, LocalId>> edges);

  /// Convenience for tests: nodes 0..n-1 with ids equal to local ids.
  static GraphSnapshot from_edges(std::size_t n,
                                  std::vector<std::pair<LocalId, LocalId>> edges);

  std::size_t n() const { return ids_.size(); }
  std::size_t m() const { return m_; }
  std::size_t degree(LocalId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const LocalId> neighbors(LocalId v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  bool adjacent(LocalId a, LocalId b) const;

  std::span<const NodeId> ids() const { return ids_; }
  NodeId id(LocalId v) const { return ids_[v]; }
  std::optional<LocalId> local(NodeId id) const;

  /// Edge list with a < b, ascending.
  std::vector<std::pair<LocalId, LocalId>> edge_list() const;

  friend bool operator==(const GraphSnapshot&, const GraphSnapshot&) = default;

 private:
  std::vector<NodeId> ids_;
  std::vector<std::size_t> offsets_;
  std::vector<LocalId> adj_;
  std::size_t m_ = 0;
};

/// Nodes with join_time <= t and edges whose first event is <= t.
GraphSnapshot snapshot_at(const TemporalGraph& g, Timestamp t);

/// Subgraph on `nodes` (TemporalGraph ids). Throws Error naming unknown ids.
GraphSnapshot induced_subgraph(const GraphSnapshot& s, std::span<const NodeId> nodes);

/// Nodes whose join time lies in [t_lo, t_hi], ascending.
std::vector<NodeId> cohort_join(const TemporalGraph& g, Timestamp t_lo, Timestamp t_hi);

}  // namespace npp
