#include "npp/tgraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <tuple>

namespace npp {

namespace {

std::vector<std::string_view> split_fields(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(delim, start);
    auto field = line.substr(start, pos == std::string_view::npos ? pos : pos - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '"')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '"' || field.back() == '\r'))
      field.remove_suffix(1);
    out.push_back(field);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Timestamp parse_timestamp(std::string_view s, std::size_t line) {
  Timestamp t = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), t);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("timestamp '" + std::string(s) + "' is not an integer", line);
  if (t < 0) throw ParseError("negative timestamp " + std::string(s), line);
  return t;
}

// Reads a delimited table, calling `row(fields, line)` with the requested
// columns in order.
template <class Fn>
void read_table(std::istream& in, std::span<const std::string_view> columns, Fn&& row) {
  std::string line;
  std::size_t lineno = 0;
  char delim = ',';
  std::vector<std::size_t> col_index;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.empty() || view.front() == '#') continue;
    if (col_index.empty()) {
      delim = view.find('\t') != std::string_view::npos ? '\t' : ',';
      auto header = split_fields(view, delim);
      for (auto want : columns) {
        auto it = std::find(header.begin(), header.end(), want);
        if (it == header.end())
          throw ParseError("header lacks column '" + std::string(want) + "'", lineno);
        col_index.push_back(static_cast<std::size_t>(it - header.begin()));
      }
      continue;
    }
    auto fields = split_fields(view, delim);
    std::vector<std::string_view> picked;
    picked.reserve(col_index.size());
    for (auto c : col_index) {
      if (c >= fields.size())
        throw ParseError("expected " + std::to_string(*std::max_element(col_index.begin(), col_index.end()) + 1) +
                             " fields, got " + std::to_string(fields.size()),
                         lineno);
      if (fields[c].empty()) throw ParseError("empty field", lineno);
      picked.push_back(fields[c]);
    }
    row(picked, lineno);
  }
  if (col_index.empty()) throw ParseError("missing header", lineno == 0 ? 1 : lineno);
}

}  // namespace

// ---------------------------------------------------------------------------
// TemporalGraph

std::optional<NodeId> TemporalGraph::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

NodeId TemporalGraph::id(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw Error("unknown node '" + std::string(name) + "'");
}

const EdgeRecord* TemporalGraph::edge(NodeId a, NodeId b) const {
  if (a >= partners_.size() || b >= partners_.size()) return nullptr;
  const auto& p = partners_[a];
  auto it = std::lower_bound(p.begin(), p.end(), b);
  if (it == p.end() || *it != b) return nullptr;
  return &edges_[partner_edge_[a][static_cast<std::size_t>(it - p.begin())]];
}

std::optional<Timestamp> TemporalGraph::first_time(NodeId a, NodeId b) const {
  if (const auto* e = edge(a, b)) return e->first();
  return std::nullopt;
}

std::optional<Timestamp> TemporalGraph::earliest_event() const {
  std::optional<Timestamp> best;
  for (const auto& e : edges_)
    if (!best || e.first() < *best) best = e.first();
  return best;
}

std::optional<Timestamp> TemporalGraph::latest_event() const {
  std::optional<Timestamp> best;
  for (const auto& e : edges_)
    if (!best || e.times.back() > *best) best = e.times.back();
  return best;
}

void TemporalGraph::index() {
  std::sort(edges_.begin(), edges_.end(),
            [](const EdgeRecord& a, const EdgeRecord& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  partners_.assign(names_.size(), {});
  partner_edge_.assign(names_.size(), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    partners_[edges_[i].u].push_back(edges_[i].v);
    partners_[edges_[i].v].push_back(edges_[i].u);
  }
  for (NodeId v = 0; v < partners_.size(); ++v) {
    std::sort(partners_[v].begin(), partners_[v].end());
    auto& pe = partner_edge_[v];
    pe.reserve(partners_[v].size());
    for (NodeId w : partners_[v]) {
      NodeId a = std::min(v, w), b = std::max(v, w);
      auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b},
                                 [](const EdgeRecord& e, const std::pair<NodeId, NodeId>& key) {
                                   return std::tie(e.u, e.v) < std::tie(key.first, key.second);
                                 });
      pe.push_back(static_cast<std::size_t>(it - edges_.begin()));
    }
  }
}

TemporalGraph TemporalGraph::truncated(Timestamp t) const {
  TemporalGraph out;
  std::vector<NodeId> remap(names_.size(), static_cast<NodeId>(-1));
  for (NodeId v = 0; v < names_.size(); ++v) {
    if (join_time_[v] > t) continue;
    remap[v] = static_cast<NodeId>(out.names_.size());
    out.lookup_.emplace(names_[v], remap[v]);
    out.names_.push_back(names_[v]);
    out.join_time_.push_back(join_time_[v]);
  }
  for (const auto& e : edges_) {
    if (e.first() > t) continue;
    EdgeRecord r{remap[e.u], remap[e.v], {}};
    for (auto ts : e.times)
      if (ts <= t) r.times.push_back(ts);
    if (r.u > r.v) std::swap(r.u, r.v);
    out.edges_.push_back(std::move(r));
  }
  out.index();
  return out;
}

// ---------------------------------------------------------------------------
// Builder

NodeId TemporalGraphBuilder::intern(std::string_view name) {
  auto [it, inserted] = lookup_.try_emplace(std::string(name), static_cast<NodeId>(names_.size()));
  if (inserted) names_.emplace_back(name);
  return it->second;
}

bool TemporalGraphBuilder::add_event(std::string_view src, std::string_view dst, Timestamp t) {
  if (t < 0) throw Error("negative timestamp");
  if (src == dst) {
    ++report_.skipped_self_loops;
    return false;
  }
  NodeId a = intern(src), b = intern(dst);
  if (a > b) std::swap(a, b);
  events_.push_back({{a, b}, t});
  ++report_.events;
  return true;
}

void TemporalGraphBuilder::add_arrival(std::string_view node, Timestamp t) {
  if (t < 0) throw Error("negative timestamp");
  NodeId v = intern(node);
  ++report_.arrival_records;
  auto [it, inserted] = arrivals_.try_emplace(v, t);
  if (!inserted) it->second = std::min(it->second, t);
}

TemporalGraph TemporalGraphBuilder::build() {
  TemporalGraph g;
  g.names_ = names_;
  g.lookup_ = lookup_;
  std::sort(events_.begin(), events_.end());
  for (std::size_t i = 1; i < events_.size(); ++i)
    if (events_[i] == events_[i - 1]) ++report_.duplicate_events;

  constexpr Timestamp kNever = std::numeric_limits<Timestamp>::max();
  std::vector<Timestamp> first_edge(names_.size(), kNever);
  for (std::size_t i = 0; i < events_.size();) {
    auto [a, b] = events_[i].first;
    EdgeRecord r{a, b, {}};
    for (; i < events_.size() && events_[i].first == std::pair{a, b}; ++i)
      r.times.push_back(events_[i].second);
    first_edge[a] = std::min(first_edge[a], r.first());
    first_edge[b] = std::min(first_edge[b], r.first());
    g.edges_.push_back(std::move(r));
  }

  g.join_time_.resize(names_.size());
  for (NodeId v = 0; v < names_.size(); ++v) {
    auto it = arrivals_.find(v);
    if (it == arrivals_.end()) {
      g.join_time_[v] = first_edge[v];
    } else if (it->second > first_edge[v]) {
      ++report_.arrival_conflicts;
      g.join_time_[v] = first_edge[v];
    } else {
      g.join_time_[v] = it->second;
    }
  }
  g.index();
  report_.nodes = g.node_count();
  report_.edges = g.edge_count();
  return g;
}

IngestResult ingest_edge_stream(std::istream& edges, std::istream* arrivals) {
  TemporalGraphBuilder b;
  static constexpr std::string_view kEdgeCols[] = {"src", "dst", "ts"};
  read_table(edges, kEdgeCols, [&](const std::vector<std::string_view>& f, std::size_t line) {
    b.add_event(f[0], f[1], parse_timestamp(f[2], line));
  });
  if (arrivals) {
    static constexpr std::string_view kNodeCols[] = {"node", "ts"};
    read_table(*arrivals, kNodeCols, [&](const std::vector<std::string_view>& f, std::size_t line) {
      b.add_arrival(f[0], parse_timestamp(f[1], line));
    });
  }
  auto g = b.build();
  return {std::move(g), b.report()};
}

IngestResult ingest_edge_file(const std::string& edge_path, const std::string& arrival_path) {
  std::ifstream edges(edge_path);
  if (!edges) throw Error("cannot open '" + edge_path + "'");
  if (arrival_path.empty()) return ingest_edge_stream(edges);
  std::ifstream arrivals(arrival_path);
  if (!arrivals) throw Error("cannot open '" + arrival_path + "'");
  return ingest_edge_stream(edges, &arrivals);
}

// ---------------------------------------------------------------------------
// GraphSnapshot

GraphSnapshot::GraphSnapshot(std::vector<NodeId> ids, std::vector<std::pair<LocalId, LocalId>> edges)
    : ids_(std::move(ids)) {
  const std::size_t n = ids_.size();
  for (auto& [a, b] : edges) {
    if (a >= n || b >= n) throw Error("edge endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  m_ = edges.size();

  offsets_.assign(n + 1, 0);
  for (auto [a, b] : edges) {
    ++offsets_[a + 1];
    ++offsets_[b + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adj_.resize(2 * m_);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (auto [a, b] : edges) {
    adj_[fill[a]++] = b;
    adj_[fill[b]++] = a;
  }
  for (std::size_t v = 0; v < n; ++v)
    std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
}

GraphSnapshot GraphSnapshot::from_edges(std::size_t n, std::vector<std::pair<LocalId, LocalId>> edges) {
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  return GraphSnapshot(std::move(ids), std::move(edges));
}

bool GraphSnapshot::adjacent(LocalId a, LocalId b) const {
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::optional<LocalId> GraphSnapshot::local(NodeId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<LocalId>(it - ids_.begin());
}

std::vector<std::pair<LocalId, LocalId>> GraphSnapshot::edge_list() const {
  std::vector<std::pair<LocalId, LocalId>> out;
  out.reserve(m_);
  for (LocalId v = 0; v < n(); ++v)
    for (LocalId u : neighbors(v))
      if (v < u) out.emplace_back(v, u);
  return out;
}

GraphSnapshot snapshot_at(const TemporalGraph& g, Timestamp t) {
  std::vector<NodeId> ids;
  std::vector<LocalId> local(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.join_time(v) <= t) {
      local[v] = static_cast<LocalId>(ids.size());
      ids.push_back(v);
    }
  }
  std::vector<std::pair<LocalId, LocalId>> edges;
  for (const auto& e : g.edges())
    if (e.first() <= t) edges.emplace_back(local[e.u], local[e.v]);
  return GraphSnapshot(std::move(ids), std::move(edges));
}

GraphSnapshot induced_subgraph(const GraphSnapshot& s, std::span<const NodeId> nodes) {
  std::vector<NodeId> ids(nodes.begin(), nodes.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<LocalId> old_local;
  old_local.reserve(ids.size());
  for (NodeId id : ids) {
    auto l = s.local(id);
    if (!l) throw Error("node id " + std::to_string(id) + " is not in the snapshot");
    old_local.push_back(*l);
  }
  std::vector<std::int64_t> remap(s.n(), -1);
  for (std::size_t i = 0; i < old_local.size(); ++i) remap[old_local[i]] = static_cast<std::int64_t>(i);

  std::vector<std::pair<LocalId, LocalId>> edges;
  for (std::size_t i = 0; i < old_local.size(); ++i)
    for (LocalId u : s.neighbors(old_local[i]))
      if (remap[u] > static_cast<std::int64_t>(i)) edges.emplace_back(static_cast<LocalId>(i), static_cast<LocalId>(remap[u]));
  return GraphSnapshot(std::move(ids), std::move(edges));
}

std::vector<NodeId> cohort_join(const TemporalGraph& g, Timestamp t_lo, Timestamp t_hi) {
  if (t_lo > t_hi) throw Error("join window start exceeds end");
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (g.join_time(v) >= t_lo && g.join_time(v) <= t_hi) out.push_back(v);
  return out;
}

}  // namespace npp
