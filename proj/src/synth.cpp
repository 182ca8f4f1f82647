#include "npp/synth.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

namespace npp {

namespace {

// Prefix sums over per-node wedge counts C(deg, 2) for weighted center draws.
class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

  void add(std::size_t i, std::uint64_t delta) {
    total_ += delta;
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }
  std::uint64_t total() const { return total_; }

  /// Smallest index whose inclusive prefix sum exceeds `target`.
  std::size_t find(std::uint64_t target) const {
    std::size_t pos = 0;
    std::size_t step = 1;
    while (step * 2 < tree_.size()) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return pos;
  }

 private:
  std::vector<std::uint64_t> tree_;
  std::uint64_t total_ = 0;
};

struct Event {
  NodeId a, b;
  Timestamp t;
};

class Growth {
 public:
  explicit Growth(const GrowthParams& p) : p_(p), rng_(p.seed), wedges_(p.nodes), adj_(p.nodes) {}

  std::vector<Event> run() {
    const std::size_t seed_nodes = std::clamp<std::size_t>(p_.initial_clique, 2, p_.nodes);
    for (NodeId a = 0; a < seed_nodes; ++a)
      for (NodeId b = a + 1; b < seed_nodes; ++b) link(a, b, 0);
    present_ = seed_nodes;

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t x = seed_nodes; x < p_.nodes; ++x) {
      const auto t = static_cast<Timestamp>(x - seed_nodes + 1);
      const auto newcomer = static_cast<NodeId>(x);
      const NodeId first = pick_by_degree();
      present_ = x + 1;
      link(newcomer, first, t);
      for (int k = 1; k < p_.arrival_links; ++k) {
        for (int attempt = 0; attempt < 10; ++attempt) {
          NodeId target = first;
          if (coin(rng_) < p_.arrival_closure && adj_[first].size() > 1)
            target = adj_[first][uniform(adj_[first].size())];
          else
            target = pick_by_degree();
          if (target != newcomer && !adjacent(newcomer, target)) {
            link(newcomer, target, t);
            break;
          }
        }
      }
      for (int k = 0; k < p_.internal_links; ++k) {
        for (int attempt = 0; attempt < 10; ++attempt) {
          if (coin(rng_) < p_.internal_closure && wedges_.total() > 0) {
            std::uniform_int_distribution<std::uint64_t> pick(0, wedges_.total() - 1);
            const auto center = static_cast<NodeId>(wedges_.find(pick(rng_)));
            const auto& nb = adj_[center];
            const std::size_t i = uniform(nb.size());
            std::size_t j = uniform(nb.size() - 1);
            if (j >= i) ++j;
            if (!adjacent(nb[i], nb[j])) {
              link(nb[i], nb[j], t);
              break;
            }
          } else {
            const auto a = static_cast<NodeId>(uniform(present_));
            const NodeId b = pick_by_degree();
            if (a != b && !adjacent(a, b)) {
              link(a, b, t);
              break;
            }
          }
        }
      }
      const double whole = std::floor(p_.repeat_rate);
      int repeats = static_cast<int>(whole) + (coin(rng_) < p_.repeat_rate - whole ? 1 : 0);
      for (int r = 0; r < repeats && !pairs_.empty(); ++r) {
        const auto& [a, b] = pairs_[uniform(pairs_.size())];
        events_.push_back({a, b, t});
      }
    }
    return std::move(events_);
  }

 private:
  std::size_t uniform(std::size_t n) {
    std::uniform_int_distribution<std::size_t> d(0, n - 1);
    return d(rng_);
  }

  // Degree-proportional most of the time, uniform otherwise so that isolated
  // and low-degree nodes stay reachable.
  NodeId pick_by_degree() {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (!endpoints_.empty() && coin(rng_) < 0.9) return endpoints_[uniform(endpoints_.size())];
    return static_cast<NodeId>(uniform(present_));
  }

  bool adjacent(NodeId a, NodeId b) const { return keys_.contains(key(a, b)); }
  static std::uint64_t key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  void link(NodeId a, NodeId b, Timestamp t) {
    keys_.insert(key(a, b));
    for (NodeId v : {a, b}) {
      // C(d+1, 2) - C(d, 2) = d
      wedges_.add(v, adj_[v].size());
      endpoints_.push_back(v);
    }
    adj_[a].push_back(b);
    adj_[b].push_back(a);
    pairs_.emplace_back(a, b);
    events_.push_back({a, b, t});
  }

  GrowthParams p_;
  std::mt19937_64 rng_;
  Fenwick wedges_;
  std::vector<std::vector<NodeId>> adj_;
  std::vector<NodeId> endpoints_;
  std::vector<std::pair<NodeId, NodeId>> pairs_;
  std::unordered_set<std::uint64_t> keys_;
  std::vector<Event> events_;
  std::size_t present_ = 0;
};

std::string node_name(NodeId v) { return "n" + std::to_string(v); }

}  // namespace

TemporalGraph generate_growth(const GrowthParams& p) {
  if (p.nodes < 3) throw Error("growth model needs at least 3 nodes");
  TemporalGraphBuilder b;
  for (const auto& e : Growth(p).run()) b.add_event(node_name(e.a), node_name(e.b), e.t);
  return b.build();
}

void write_growth_csv(const GrowthParams& p, std::ostream& out) {
  if (p.nodes < 3) throw Error("growth model needs at least 3 nodes");
  out << "src,dst,ts\n";
  for (const auto& e : Growth(p).run()) out << node_name(e.a) << ',' << node_name(e.b) << ',' << e.t << '\n';
}

}  // namespace npp
