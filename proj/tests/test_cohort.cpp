#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "npp/cohort.hpp"
#include "npp/synth.hpp"

using namespace npp;

namespace {

ImportanceLabeling label(std::vector<double> scores, double threshold) {
  std::vector<NodeId> ids(scores.size());
  for (NodeId i = 0; i < ids.size(); ++i) ids[i] = i;
  return label_nodes(scores, ids, threshold);
}

TemporalGraph graph_of(const std::string& csv, const std::string& arrivals = {}) {
  std::istringstream e(csv), a(arrivals);
  return ingest_edge_stream(e, arrivals.empty() ? nullptr : &a).graph;
}

CohortSpec spec(FeatureSet f) {
  CohortSpec s;
  s.join_start = 600;
  s.join_end = 900;
  s.obs_duration = 100;
  s.horizon = 2000;
  s.features = f;
  return s;
}

}  // namespace

TEST_CASE("Pareto labeling on distinct degrees") {
  auto l = label({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 0.8);
  CHECK(l.important == std::vector<NodeId>{7, 8, 9});
  CHECK(l.non_important.size() == 7);
}

TEST_CASE("ties and degenerate inputs") {
  auto tied = label({3, 3, 3, 3}, 0.8);
  CHECK(tied.important.size() == 4);
  CHECK(tied.non_important.empty());
  CHECK(label({5}, 0.8).important == std::vector<NodeId>{0});
  CHECK_THROWS(label({}, 0.8));
  CHECK_THROWS(label({1, 2}, 0.0));
  CHECK_THROWS(label({1, 2}, 1.0));
  CHECK_FALSE(tied.is_important(99).has_value());
}

TEST_CASE("labeling is a partition, monotone in the threshold, and captures the top mass") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> s(50);
    for (auto& x : s) x = std::uniform_int_distribution<int>(0, 12)(rng);
    auto a = label(s, 0.8), b = label(s, 0.9);
    CHECK(a.important.size() + a.non_important.size() == s.size());
    std::vector<NodeId> both;
    std::set_intersection(a.important.begin(), a.important.end(), a.non_important.begin(), a.non_important.end(),
                          std::back_inserter(both));
    CHECK(both.empty());
    CHECK(std::includes(a.important.begin(), a.important.end(), b.important.begin(), b.important.end()));
    CHECK(static_cast<double>(a.important.size()) / s.size() >= 0.2 - 1e-12);
  }
}

TEST_CASE("feature sets") {
  CHECK(feature_names(FeatureSet::kPA) == std::vector<std::string>{"degree"});
  CHECK(feature_names(FeatureSet::kTC) == std::vector<std::string>{"p3"});
  CHECK(feature_names(FeatureSet::kNPP) == std::vector<std::string>{"p1", "p2", "p3", "p4", "p5"});
  CHECK(feature_names(FeatureSet::kAll).size() == 4);
  CHECK(parse_feature_set("All") == FeatureSet::kAll);
  CHECK_THROWS(parse_feature_set("npp2"));
}

TEST_CASE("cohort examples carry the requested features") {
  GrowthParams gp;
  gp.nodes = 1200;
  auto g = generate_growth(gp);
  auto pa = build_cohort(g, spec(FeatureSet::kPA));
  auto npp = build_cohort(g, spec(FeatureSet::kNPP));
  REQUIRE_FALSE(pa.empty());
  CHECK(pa.examples.size() == npp.examples.size());
  for (auto& ex : pa.examples) CHECK(ex.features.size() == 1);
  for (auto& ex : npp.examples) {
    CHECK(ex.features.size() == 5);
    CHECK(g.join_time(ex.node) >= 600);
    CHECK(g.join_time(ex.node) <= 900);
  }
  auto d = npp.to_dataset();
  d.validate();
  CHECK(d.cols() == 5);
  CHECK(d.positives() == npp.important_count);
}

TEST_CASE("features ignore events after the observation end") {
  GrowthParams gp;
  gp.nodes = 1500;
  auto g = generate_growth(gp);
  for (FeatureSet f : kAllFeatureSets) {
    auto s = spec(f);
    auto full = build_cohort(g, s);
    auto cut = build_cohort(g.truncated(s.observation_end()), [&] {
      auto t = s;
      t.horizon = s.observation_end() + 1;
      return t;
    }());
    REQUIRE(full.examples.size() == cut.examples.size());
    for (std::size_t i = 0; i < full.examples.size(); ++i) CHECK(full.examples[i].features == cut.examples[i].features);
  }
}

TEST_CASE("inactive arrivals keep zero features") {
  auto g = graph_of("src,dst,ts\na,b,1\nb,c,2\nc,x,50\n", "node,ts\nx,5\n");
  CohortSpec s;
  s.join_start = 3;
  s.join_end = 6;
  s.obs_duration = 4;
  s.horizon = 60;
  for (FeatureSet f : {FeatureSet::kPA, FeatureSet::kTC}) {
    s.features = f;
    auto c = build_cohort(g, s);
    REQUIRE(c.examples.size() == 1);
    CHECK(g.name(c.examples[0].node) == "x");
    for (double v : c.examples[0].features) CHECK(v == 0.0);
  }
  // an isolated node is the detached corner of every edge
  s.features = FeatureSet::kNPP;
  auto c = build_cohort(g, s);
  CHECK(c.examples[0].features == std::vector<double>{0, 2, 0, 0, 0});
}

TEST_CASE("empty cohorts and bad windows") {
  auto g = graph_of("src,dst,ts\na,b,1\nb,c,2\n");
  CohortSpec s;
  s.join_start = 10;
  s.join_end = 20;
  s.horizon = 30;
  auto c = build_cohort(g, s);
  CHECK(c.empty());
  CHECK(c.nodes_at_horizon == 3);
  s.horizon = 20;
  CHECK_THROWS(build_cohort(g, s));
}
