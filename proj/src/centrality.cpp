#include "npp/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace npp {

Measure parse_measure(std::string_view name) {
  if (name == "degree") return Measure::kDegree;
  if (name == "pagerank") return Measure::kPageRank;
  if (name == "betweenness") return Measure::kBetweenness;
  if (name == "closeness") return Measure::kCloseness;
  throw Error("unknown centrality measure '" + std::string(name) + "'");
}

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::kDegree: return "degree";
    case Measure::kPageRank: return "pagerank";
    case Measure::kBetweenness: return "betweenness";
    case Measure::kCloseness: return "closeness";
  }
  return "?";
}

ClosenessVariant parse_closeness_variant(std::string_view name) {
  if (name == "component") return ClosenessVariant::kComponent;
  if (name == "wasserman-faust") return ClosenessVariant::kWassermanFaust;
  if (name == "harmonic") return ClosenessVariant::kHarmonic;
  throw Error("unknown closeness variant '" + std::string(name) + "'");
}

std::string_view closeness_variant_name(ClosenessVariant v) {
  switch (v) {
    case ClosenessVariant::kComponent: return "component";
    case ClosenessVariant::kWassermanFaust: return "wasserman-faust";
    case ClosenessVariant::kHarmonic: return "harmonic";
  }
  return "?";
}

std::vector<double> degree_centrality(const GraphSnapshot& s) {
  std::vector<double> out(s.n());
  for (LocalId v = 0; v < s.n(); ++v) out[v] = static_cast<double>(s.degree(v));
  return out;
}

CentralityScores pagerank(const GraphSnapshot& s, const CentralityParams& params) {
  CentralityScores res{Measure::kPageRank, {}, params, 0, false};
  const std::size_t n = s.n();
  if (n == 0) {
    res.converged = true;
    return res;
  }
  const double d = params.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> x(n, inv_n), next(n), share(n);
  const auto ni = static_cast<std::int64_t>(n);
  for (int it = 1; it <= params.max_iterations; ++it) {
    double dangling = 0.0;
    for (LocalId v = 0; v < n; ++v) {
      if (s.degree(v) == 0) {
        dangling += x[v];
        share[v] = 0.0;
      } else {
        share[v] = x[v] / static_cast<double>(s.degree(v));
      }
    }
    const double base = (1.0 - d) * inv_n + d * dangling * inv_n;
    double delta = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : delta)
    for (std::int64_t vi = 0; vi < ni; ++vi) {
      const auto v = static_cast<LocalId>(vi);
      double acc = 0.0;
      for (LocalId u : s.neighbors(v)) acc += share[u];
      next[v] = base + d * acc;
      delta += std::abs(next[v] - x[v]);
    }
    x.swap(next);
    res.iterations = it;
    if (delta < params.tolerance) {
      res.converged = true;
      break;
    }
  }
  res.scores = std::move(x);
  return res;
}

namespace {

// Single-source Brandes pass; adds pair dependencies of `src` into `acc`.
struct BrandesWork {
  std::vector<std::int64_t> dist;
  std::vector<double> sigma, delta;
  std::vector<LocalId> order, queue;

  explicit BrandesWork(std::size_t n) : dist(n, -1), sigma(n, 0), delta(n, 0) {
    order.reserve(n);
    queue.reserve(n);
  }

  void run(const GraphSnapshot& s, LocalId src, std::vector<double>& acc) {
    order.clear();
    queue.clear();
    dist[src] = 0;
    sigma[src] = 1;
    queue.push_back(src);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      LocalId v = queue[head];
      order.push_back(v);
      for (LocalId w : s.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      LocalId w = *it;
      for (LocalId v : s.neighbors(w))
        if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != src) acc[w] += delta[w];
    }
    for (LocalId v : order) {
      dist[v] = -1;
      sigma[v] = 0;
      delta[v] = 0;
    }
  }
};

}  // namespace

std::vector<double> betweenness(const GraphSnapshot& s) {
  const std::size_t n = s.n();
  // Fixed source blocks reduced in order, so results do not depend on the
  // number of threads or on scheduling.
  const std::size_t blocks = std::min<std::size_t>(n, 64);
  std::vector<std::vector<double>> partial(blocks);
  const auto nb = static_cast<std::int64_t>(blocks);
#pragma omp parallel
  {
    BrandesWork work(n);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < nb; ++b) {
      auto& acc = partial[static_cast<std::size_t>(b)];
      acc.assign(n, 0.0);
      for (std::size_t src = static_cast<std::size_t>(b); src < n; src += blocks)
        work.run(s, static_cast<LocalId>(src), acc);
    }
  }
  std::vector<double> out(n, 0.0);
  for (const auto& acc : partial)
    for (std::size_t v = 0; v < n; ++v) out[v] += acc[v];
  for (auto& x : out) x *= 0.5;
  return out;
}

namespace serial {

std::vector<double> betweenness(const GraphSnapshot& s) {
  std::vector<double> out(s.n(), 0.0);
  BrandesWork work(s.n());
  for (LocalId src = 0; src < s.n(); ++src) work.run(s, src, out);
  for (auto& x : out) x *= 0.5;
  return out;
}

}  // namespace serial

std::vector<double> closeness(const GraphSnapshot& s, ClosenessVariant variant) {
  const std::size_t n = s.n();
  std::vector<double> out(n, 0.0);
  const auto ni = static_cast<std::int64_t>(n);
#pragma omp parallel
  {
    std::vector<std::int64_t> dist(n, -1);
    std::vector<LocalId> queue;
    queue.reserve(n);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t vi = 0; vi < ni; ++vi) {
      const auto src = static_cast<LocalId>(vi);
      queue.assign(1, src);
      dist[src] = 0;
      double total = 0.0, harmonic = 0.0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        LocalId v = queue[head];
        for (LocalId w : s.neighbors(v)) {
          if (dist[w] >= 0) continue;
          dist[w] = dist[v] + 1;
          total += static_cast<double>(dist[w]);
          harmonic += 1.0 / static_cast<double>(dist[w]);
          queue.push_back(w);
        }
      }
      const double reach = static_cast<double>(queue.size() - 1);
      double score = 0.0;
      switch (variant) {
        case ClosenessVariant::kComponent:
          score = total > 0 ? reach / total : 0.0;
          break;
        case ClosenessVariant::kWassermanFaust:
          score = total > 0 ? (reach / total) * (reach / static_cast<double>(n - 1)) : 0.0;
          break;
        case ClosenessVariant::kHarmonic:
          score = n > 1 ? harmonic / static_cast<double>(n - 1) : 0.0;
          break;
      }
      out[src] = score;
      for (LocalId v : queue) dist[v] = -1;
    }
  }
  return out;
}

CentralityScores compute_centrality(const GraphSnapshot& s, Measure measure, const CentralityParams& params) {
  switch (measure) {
    case Measure::kDegree: return {measure, degree_centrality(s), params};
    case Measure::kPageRank: return pagerank(s, params);
    case Measure::kBetweenness: return {measure, betweenness(s), params};
    case Measure::kCloseness: return {measure, closeness(s, params.closeness), params};
  }
  throw Error("unknown centrality measure");
}

}  // namespace npp
