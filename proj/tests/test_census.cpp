#include <doctest.h>

#include <numeric>
#include <sstream>

#include "npp/census.hpp"
#include "oracles.hpp"

using namespace npp;

namespace {

NppVector v(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d, std::uint64_t e) {
  return NppVector{{a, b, c, d, e}};
}

TemporalGraph graph_of(const std::string& csv) {
  std::istringstream in(csv);
  return ingest_edge_stream(in).graph;
}

}  // namespace

TEST_CASE("census of the three small triads") {
  auto k3 = npp_census(GraphSnapshot::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}));
  for (auto& x : k3) CHECK(x == v(0, 0, 0, 0, 1));

  auto path = npp_census(GraphSnapshot::from_edges(3, {{0, 1}, {1, 2}}));
  CHECK(path[1] == v(0, 0, 0, 1, 0));
  CHECK(path[0] == v(0, 0, 1, 0, 0));
  CHECK(path[2] == v(0, 0, 1, 0, 0));

  auto edge = npp_census(GraphSnapshot::from_edges(3, {{0, 1}}));
  CHECK(edge[0] == v(1, 0, 0, 0, 0));
  CHECK(edge[1] == v(1, 0, 0, 0, 0));
  CHECK(edge[2] == v(0, 1, 0, 0, 0));
}

TEST_CASE("triangle counts") {
  for (auto t : triangles_per_node(oracle::complete(4))) CHECK(t == 3);
  for (auto t : triangles_per_node(GraphSnapshot::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}))) CHECK(t == 0);
  auto pend = triangles_per_node(GraphSnapshot::from_edges(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}));
  CHECK(pend[2] == 1);
  CHECK(pend[3] == 0);
}

TEST_CASE("census matches triple enumeration and the serial kernel") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 3 + seed % 30;
    const double p = (seed % 3 + 1) * 0.2;
    auto g = oracle::erdos_renyi(n, p, seed);
    auto ref = oracle::census(g);
    CHECK(npp_census(g) == ref);
    CHECK(serial::npp_census(g) == ref);
    CHECK(serial::triangles_per_node(g) == triangles_per_node(g));
  }
}

TEST_CASE("global census identities") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = oracle::erdos_renyi(25, 0.25, seed);
    auto c = npp_census(g);
    const auto tt = triad_totals(g);
    std::uint64_t s3 = 0, s4 = 0, s5 = 0;
    for (auto& x : c) s3 += x.at(3), s4 += x.at(4), s5 += x.at(5);
    CHECK(s5 == 3 * tt.triangles);
    CHECK(s4 == tt.connected_triples - 3 * tt.triangles);
    CHECK(s3 == 2 * (tt.connected_triples - 3 * tt.triangles));
  }
}

TEST_CASE("p1 and p2 survive relabeling") {
  auto g = oracle::erdos_renyi(20, 0.3, 11);
  std::vector<LocalId> perm(20);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(3);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<LocalId, LocalId>> e;
  for (auto [a, b] : g.edge_list()) e.emplace_back(perm[a], perm[b]);
  auto h = GraphSnapshot::from_edges(20, e);
  auto cg = npp_census(g), ch = npp_census(h);
  for (LocalId x = 0; x < 20; ++x) CHECK(cg[x] == ch[perm[x]]);
}

TEST_CASE("balance rate") {
  CHECK(balance_rate(oracle::complete(3)) == 1.0);
  CHECK(balance_rate(GraphSnapshot::from_edges(4, {{0, 1}, {0, 2}, {0, 3}})) == 0.0);
  CHECK(balance_rate(GraphSnapshot::from_edges(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}})) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(balance_rate(GraphSnapshot::from_edges(3, {})) == 0.0);
}

TEST_CASE("triad evolution examples") {
  // path a-b-c at t=1, a-c at 2
  auto g = graph_of("src,dst,ts\na,b,1\nb,c,1\na,c,2\n");
  auto r = triad_evolution_rate(g, 1, 1, TriadType::kOpenWedge, 100, 1);
  CHECK(r.population == 1);
  CHECK(r.rate == 1.0);

  auto tri1 = triad_evolution_rate(graph_of("src,dst,ts\na,b,1\nc,z,1\n"), 1, 5, TriadType::kEdgeAndDetached, 100, 1);
  CHECK(tri1.population == 4);  // edges ab and cz, each with two detached nodes
  CHECK(tri1.rate == 0.0);

  auto two = graph_of("src,dst,ts\na,b,1\nb,c,1\nd,e,1\ne,f,1\na,c,3\n");
  auto w = triad_evolution_rate(two, 1, 5, TriadType::kOpenWedge, 100, 1);
  CHECK(w.population == 2);
  CHECK(w.rate == 0.5);

  auto empty = triad_evolution_rate(graph_of("src,dst,ts\na,b,1\n"), 1, 5, TriadType::kOpenWedge, 100, 1);
  CHECK(empty.population == 0);
  CHECK_FALSE(empty.rate.has_value());
}

TEST_CASE("evolution sampling is reproducible and bounded") {
  auto g = graph_of([] {
    std::ostringstream s;
    s << "src,dst,ts\n";
    for (int i = 1; i < 40; ++i) s << "hub,n" << i << ",1\n";
    for (int i = 1; i < 40; i += 2) s << "n" << i << ",n" << i + 1 << ",3\n";
    return s.str();
  }());
  auto a = triad_evolution_rate(g, 1, 5, TriadType::kOpenWedge, 50, 9);
  auto b = triad_evolution_rate(g, 1, 5, TriadType::kOpenWedge, 50, 9);
  CHECK(a.population == 39 * 38 / 2);
  CHECK(a.sampled == 50);
  CHECK(a.evolved == b.evolved);
  auto full = triad_evolution_rate(g, 1, 5, TriadType::kOpenWedge, 1u << 20, 9);
  CHECK(full.sampled == full.population);
  CHECK(full.evolved == 19);
}

TEST_CASE("position conditional probability") {
  auto star = npp_census(GraphSnapshot::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}));
  CHECK(position_conditional_prob(star, 3, 4) == 0.0);
  auto path = npp_census(GraphSnapshot::from_edges(3, {{0, 1}, {1, 2}}));
  CHECK(position_conditional_prob(path, 4, 3) == 0.0);
  auto g = npp_census(oracle::erdos_renyi(15, 0.3, 2));
  for (int i = 1; i <= 5; ++i) {
    auto p = position_conditional_prob(g, i, i);
    if (p) CHECK(*p == 1.0);
    auto q = position_conditional_prob(g, i, i, PositionWeighting::kCount);
    if (q) CHECK(*q == 1.0);
  }
  CHECK_FALSE(position_conditional_prob(path, 1, 5).has_value());
  CHECK_THROWS(position_conditional_prob(path, 0, 1));
  CHECK_THROWS(position_conditional_prob(path, 1, 6));
}

TEST_CASE("count weighting") {
  auto c = npp_census(GraphSnapshot::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
  double num = 0, den = 0;
  for (auto& x : c) {
    den += static_cast<double>(x.at(4));
    if (x.at(3) > 0) num += static_cast<double>(x.at(4));
  }
  CHECK(position_conditional_prob(c, 3, 4, PositionWeighting::kCount) == doctest::Approx(num / den));
}
