#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "npp/cohort.hpp"
#include "npp/tgraph.hpp"

namespace npp {

/// A link action of `u` toward `w` at time t, followed by a link action of its
/// neighbor `v` toward the same `w` at t_prime.
struct InfluenceEvent {
  NodeId u;
  NodeId v;
  NodeId w;
  Timestamp t;
  Timestamp t_prime;
  double sigma;

  friend auto operator<=>(const InfluenceEvent&, const InfluenceEvent&) = default;
};

/// Three characters over {0,1}: importance of u, v, w in that order.
using EventCode = std::array<char, 3>;

inline std::string to_string(const EventCode& c) { return {c.begin(), c.end()}; }

struct CodedEvent {
  InfluenceEvent event;
  EventCode code;
};

struct LinkAction {
  NodeId partner;
  Timestamp t;
  friend bool operator==(const LinkAction&, const LinkAction&) = default;
};

/// Every logged interaction of `u`, ordered by time then partner.
std::vector<LinkAction> link_actions(const TemporalGraph& g, NodeId u);

/// Mean |first(v,w) - first(u,w)| over common partners w. Empty without a
/// common partner; throws Error when u and v were never linked.
std::optional<double> average_action_delay(const TemporalGraph& g, NodeId u, NodeId v);

enum class SigmaMode { kPerPair, kGlobal };
enum class ActionMatching {
  kFirst,  // first interaction per (node, partner)
  kAll,    // every logged interaction
};

struct InfluenceOptions {
  SigmaMode sigma_mode = SigmaMode::kPerPair;
  double global_sigma = 0.0;  // used when sigma_mode == kGlobal
  ActionMatching matching = ActionMatching::kFirst;
};

struct InfluenceResult {
  std::vector<CodedEvent> events;  // canonical order
  std::size_t ordered_pairs_scanned = 0;
  std::size_t pairs_undefined_sigma = 0;
};

InfluenceResult detect_influence_events(const TemporalGraph& g, const ImportanceLabeling& labeling,
                                        const InfluenceOptions& opts = {});

/// Checks the three link-influence conditions for a candidate event.
bool satisfies_influence_predicate(const TemporalGraph& g, const InfluenceEvent& e);

/// The 8 exact codes plus wildcard patterns 1XX, 0XX, X1X, X0X, XX1, XX0,
/// 11X, 00X, 10X, 01X.
std::map<std::string, std::size_t> event_distribution(std::span<const CodedEvent> events);

/// Pattern keys in output order.
const std::vector<std::string>& distribution_patterns();

}  // namespace npp
