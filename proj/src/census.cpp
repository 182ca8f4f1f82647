#include "npp/census.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

namespace npp {

namespace {

std::uint64_t intersect_count(std::span<const LocalId> a, std::span<const LocalId> b) {
  std::uint64_t c = 0;
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++c;
      ++i;
      ++j;
    }
  }
  return c;
}

std::uint64_t choose2(std::uint64_t k) { return k < 2 ? 0 : k * (k - 1) / 2; }

// Closed-form positions from per-node aggregates.
NppVector assemble(std::uint64_t m, std::uint64_t deg, std::uint64_t tri,
                   std::uint64_t wedge_ends_sum, std::uint64_t detached_sum) {
  NppVector out;
  out.at(1) = detached_sum;
  out.at(2) = m - deg - (wedge_ends_sum - tri);
  out.at(3) = wedge_ends_sum - 2 * tri;
  out.at(4) = choose2(deg) - tri;
  out.at(5) = tri;
  return out;
}

}  // namespace

std::vector<NppVector> npp_census(const GraphSnapshot& s) {
  const auto n = static_cast<std::int64_t>(s.n());
  const std::uint64_t m = s.m();
  std::vector<NppVector> out(s.n());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t vi = 0; vi < n; ++vi) {
    const auto v = static_cast<LocalId>(vi);
    const auto nv = s.neighbors(v);
    const std::uint64_t deg_v = nv.size();
    std::uint64_t common_sum = 0, ends = 0, detached = 0;
    for (LocalId u : nv) {
      const std::uint64_t deg_u = s.degree(u);
      const std::uint64_t common = intersect_count(nv, s.neighbors(u));
      common_sum += common;
      ends += deg_u - 1;
      // third nodes adjacent to neither endpoint of edge (v, u)
      detached += (s.n() - 2) - ((deg_v - 1) + (deg_u - 1) - common);
    }
    out[v] = assemble(m, deg_v, common_sum / 2, ends, detached);
  }
  return out;
}

std::vector<std::uint64_t> triangles_per_node(const GraphSnapshot& s) {
  const auto n = static_cast<std::int64_t>(s.n());
  std::vector<std::uint64_t> tri(s.n(), 0);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t vi = 0; vi < n; ++vi) {
    const auto v = static_cast<LocalId>(vi);
    const auto nv = s.neighbors(v);
    std::uint64_t c = 0;
    for (LocalId u : nv) c += intersect_count(nv, s.neighbors(u));
    tri[v] = c / 2;
  }
  return tri;
}

namespace serial {

// Edge-centric: each edge's common-neighbor count is computed once and
// credited to both endpoints.
std::vector<NppVector> npp_census(const GraphSnapshot& s) {
  const std::uint64_t n = s.n();
  std::vector<std::uint64_t> common_sum(n, 0), ends(n, 0), detached(n, 0);
  for (LocalId a = 0; a < n; ++a) {
    for (LocalId b : s.neighbors(a)) {
      if (b <= a) continue;
      const std::uint64_t da = s.degree(a), db = s.degree(b);
      const std::uint64_t common = intersect_count(s.neighbors(a), s.neighbors(b));
      const std::uint64_t d = (n - 2) - ((da - 1) + (db - 1) - common);
      common_sum[a] += common;
      common_sum[b] += common;
      detached[a] += d;
      detached[b] += d;
      ends[a] += db - 1;
      ends[b] += da - 1;
    }
  }
  std::vector<NppVector> out(n);
  for (LocalId v = 0; v < n; ++v)
    out[v] = assemble(s.m(), s.degree(v), common_sum[v] / 2, ends[v], detached[v]);
  return out;
}

// Forward enumeration a < b < c: each triangle visited exactly once.
std::vector<std::uint64_t> triangles_per_node(const GraphSnapshot& s) {
  std::vector<std::uint64_t> tri(s.n(), 0);
  for (LocalId a = 0; a < s.n(); ++a) {
    for (LocalId b : s.neighbors(a)) {
      if (b <= a) continue;
      auto na = s.neighbors(a), nb = s.neighbors(b);
      auto i = std::upper_bound(na.begin(), na.end(), b);
      auto j = std::upper_bound(nb.begin(), nb.end(), b);
      while (i != na.end() && j != nb.end()) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          ++tri[a];
          ++tri[b];
          ++tri[*i];
          ++i;
          ++j;
        }
      }
    }
  }
  return tri;
}

}  // namespace serial

TriadTotals triad_totals(const GraphSnapshot& s) {
  const auto tri = triangles_per_node(s);
  TriadTotals t;
  std::uint64_t corner_sum = 0;
  for (LocalId v = 0; v < s.n(); ++v) {
    corner_sum += tri[v];
    t.connected_triples += choose2(s.degree(v));
  }
  t.triangles = corner_sum / 3;
  return t;
}

double balance_rate(const GraphSnapshot& s) {
  const auto t = triad_totals(s);
  if (t.connected_triples == 0) return 0.0;
  return 3.0 * static_cast<double>(t.triangles) / static_cast<double>(t.connected_triples);
}

// ---------------------------------------------------------------------------
// Triad evolution

namespace {

// Floyd's algorithm: `k` distinct values from [0, population), sorted.
std::vector<std::uint64_t> sample_indices(std::uint64_t population, std::uint64_t k, std::uint64_t seed) {
  std::vector<std::uint64_t> out;
  if (k >= population) {
    out.resize(population);
    for (std::uint64_t i = 0; i < population; ++i) out[i] = i;
    return out;
  }
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(k * 2);
  for (std::uint64_t j = population - k; j < population; ++j) {
    std::uniform_int_distribution<std::uint64_t> dist(0, j);
    std::uint64_t r = dist(rng);
    if (!chosen.insert(r).second) chosen.insert(j);
  }
  out.assign(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

EvolutionResult triad_evolution_rate(const TemporalGraph& g, Timestamp t, Timestamp dt, TriadType type,
                                     std::uint64_t sample_cap, std::uint64_t seed) {
  if (sample_cap < 1) throw Error("sample_cap must be at least 1");
  if (type != TriadType::kEdgeAndDetached && type != TriadType::kOpenWedge)
    throw Error("evolution rate is defined for triad types 1 and 2 only");
  const GraphSnapshot s = snapshot_at(g, t);
  const Timestamp later = t + dt;
  auto linked_by = [&](LocalId a, LocalId b) {
    auto ft = g.first_time(s.id(a), s.id(b));
    return ft && *ft <= later;
  };

  EvolutionResult res{type, 0, 0, 0, std::nullopt, seed};

  // Groups in canonical order: type 1 by edge (a < b), type 2 by center.
  struct Group {
    LocalId a, b;  // edge endpoints, or center in `a`
    std::uint64_t count;
  };
  std::vector<Group> groups;
  if (type == TriadType::kEdgeAndDetached) {
    for (auto [a, b] : s.edge_list()) {
      const std::uint64_t common = intersect_count(s.neighbors(a), s.neighbors(b));
      const std::uint64_t touched = (s.degree(a) - 1) + (s.degree(b) - 1) - common;
      groups.push_back({a, b, (s.n() - 2) - touched});
    }
  } else {
    const auto tri = triangles_per_node(s);
    for (LocalId v = 0; v < s.n(); ++v) groups.push_back({v, v, choose2(s.degree(v)) - tri[v]});
  }
  for (const auto& gr : groups) res.population += gr.count;
  if (res.population == 0) return res;

  const auto picks = sample_indices(res.population, sample_cap, seed);
  res.sampled = picks.size();

  std::size_t next = 0;
  std::uint64_t base = 0;
  for (const auto& gr : groups) {
    if (next == picks.size()) break;
    if (picks[next] >= base + gr.count) {
      base += gr.count;
      continue;
    }
    // Walk this group's instances in order, evaluating the selected ones.
    std::uint64_t k = base;
    auto visit = [&](auto&& evolved) {
      if (next < picks.size() && picks[next] == k) {
        if (evolved()) ++res.evolved;
        ++next;
      }
      ++k;
    };
    if (type == TriadType::kEdgeAndDetached) {
      for (LocalId c = 0; c < s.n() && k < base + gr.count; ++c) {
        if (c == gr.a || c == gr.b || s.adjacent(c, gr.a) || s.adjacent(c, gr.b)) continue;
        visit([&] { return linked_by(c, gr.a) || linked_by(c, gr.b); });
      }
    } else {
      auto nb = s.neighbors(gr.a);
      for (std::size_t i = 0; i < nb.size() && k < base + gr.count; ++i)
        for (std::size_t j = i + 1; j < nb.size() && k < base + gr.count; ++j) {
          if (s.adjacent(nb[i], nb[j])) continue;
          visit([&] { return linked_by(nb[i], nb[j]); });
        }
    }
    base += gr.count;
  }
  res.rate = static_cast<double>(res.evolved) / static_cast<double>(res.sampled);
  return res;
}

std::optional<double> position_conditional_prob(std::span<const NppVector> npp, int i, int j,
                                                PositionWeighting weighting) {
  if (i < 1 || i > 5 || j < 1 || j > 5) throw Error("positions must lie in 1..5");
  double num = 0, den = 0;
  for (const auto& v : npp) {
    if (v.at(j) == 0) continue;
    const double w = weighting == PositionWeighting::kIndicator ? 1.0 : static_cast<double>(v.at(j));
    den += w;
    if (v.at(i) > 0) num += w;
  }
  if (den == 0) return std::nullopt;
  return num / den;
}

}  // namespace npp
