#include "npp/influence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace npp {

namespace {

std::vector<NodeId> common_partners(const TemporalGraph& g, NodeId u, NodeId v) {
  auto pu = g.partners(u), pv = g.partners(v);
  std::vector<NodeId> out;
  std::set_intersection(pu.begin(), pu.end(), pv.begin(), pv.end(), std::back_inserter(out));
  return out;
}

char status(const ImportanceLabeling& labeling, const TemporalGraph& g, NodeId v) {
  auto s = labeling.is_important(v);
  if (!s) throw Error("labeling does not cover node '" + g.name(v) + "'");
  return *s ? '1' : '0';
}

}  // namespace

std::vector<LinkAction> link_actions(const TemporalGraph& g, NodeId u) {
  if (u >= g.node_count()) throw Error("unknown node id " + std::to_string(u));
  std::vector<LinkAction> out;
  for (NodeId w : g.partners(u))
    for (Timestamp t : g.edge(u, w)->times) out.push_back({w, t});
  std::sort(out.begin(), out.end(),
            [](const LinkAction& a, const LinkAction& b) { return std::tie(a.t, a.partner) < std::tie(b.t, b.partner); });
  return out;
}

std::optional<double> average_action_delay(const TemporalGraph& g, NodeId u, NodeId v) {
  if (!g.edge(u, v)) throw Error("nodes '" + g.name(u) + "' and '" + g.name(v) + "' are not adjacent");
  const auto common = common_partners(g, u, v);
  if (common.empty()) return std::nullopt;
  double total = 0.0;
  for (NodeId w : common)
    total += static_cast<double>(std::abs(*g.first_time(v, w) - *g.first_time(u, w)));
  return total / static_cast<double>(common.size());
}

bool satisfies_influence_predicate(const TemporalGraph& g, const InfluenceEvent& e) {
  if (e.w == e.u || e.w == e.v || e.u == e.v) return false;
  const EdgeRecord* uv = g.edge(e.u, e.v);
  const EdgeRecord* uw = g.edge(e.u, e.w);
  const EdgeRecord* vw = g.edge(e.v, e.w);
  if (!uv || !uw || !vw) return false;
  const bool u_acts = std::find(uw->times.begin(), uw->times.end(), e.t) != uw->times.end();
  const bool v_acts = std::find(vw->times.begin(), vw->times.end(), e.t_prime) != vw->times.end();
  return u_acts && v_acts && uv->first() < e.t && e.t < e.t_prime &&
         static_cast<double>(e.t_prime - e.t) < e.sigma;
}

InfluenceResult detect_influence_events(const TemporalGraph& g, const ImportanceLabeling& labeling,
                                        const InfluenceOptions& opts) {
  const auto edges = g.edges();
  const auto ne = static_cast<std::int64_t>(edges.size());
  std::vector<std::vector<InfluenceEvent>> found(edges.size());
  std::vector<std::uint8_t> undefined(edges.size(), 0);

#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t ei = 0; ei < ne; ++ei) {
    const auto& e = edges[static_cast<std::size_t>(ei)];
    std::optional<double> sigma;
    if (opts.sigma_mode == SigmaMode::kGlobal)
      sigma = opts.global_sigma;
    else
      sigma = average_action_delay(g, e.u, e.v);
    if (!sigma) {
      undefined[static_cast<std::size_t>(ei)] = 1;
      continue;
    }
    const Timestamp linked = e.first();
    const auto common = common_partners(g, e.u, e.v);
    auto& out = found[static_cast<std::size_t>(ei)];
    for (auto [u, v] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      for (NodeId w : common) {
        const EdgeRecord* uw = g.edge(u, w);
        const EdgeRecord* vw = g.edge(v, w);
        auto consider = [&](Timestamp t, Timestamp tp) {
          if (linked < t && t < tp && static_cast<double>(tp - t) < *sigma) out.push_back({u, v, w, t, tp, *sigma});
        };
        if (opts.matching == ActionMatching::kFirst) {
          consider(uw->first(), vw->first());
        } else {
          for (Timestamp t : uw->times)
            for (Timestamp tp : vw->times) consider(t, tp);
        }
      }
    }
  }

  InfluenceResult res;
  res.ordered_pairs_scanned = 2 * edges.size();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    res.pairs_undefined_sigma += 2 * undefined[i];
    for (const auto& ev : found[i]) {
      EventCode code{status(labeling, g, ev.u), status(labeling, g, ev.v), status(labeling, g, ev.w)};
      res.events.push_back({ev, code});
    }
  }
  std::sort(res.events.begin(), res.events.end(),
            [](const CodedEvent& a, const CodedEvent& b) { return a.event < b.event; });
  return res;
}

const std::vector<std::string>& distribution_patterns() {
  static const std::vector<std::string> patterns = {
      "000", "001", "010", "011", "100", "101", "110", "111", "1XX", "0XX", "X1X",
      "X0X", "XX1", "XX0", "11X", "00X", "10X", "01X"};
  return patterns;
}

std::map<std::string, std::size_t> event_distribution(std::span<const CodedEvent> events) {
  std::map<std::string, std::size_t> out;
  for (const auto& p : distribution_patterns()) out[p] = 0;
  for (const auto& e : events) {
    for (const auto& p : distribution_patterns()) {
      bool match = true;
      for (std::size_t k = 0; k < 3; ++k)
        if (p[k] != 'X' && p[k] != e.code[k]) match = false;
      if (match) ++out[p];
    }
  }
  return out;
}

}  // namespace npp
