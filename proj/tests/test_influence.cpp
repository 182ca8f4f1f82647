#include <doctest.h>

#include <sstream>

#include "npp/influence.hpp"
#include "npp/synth.hpp"

using namespace npp;

namespace {

TemporalGraph graph_of(const std::string& csv) {
  std::istringstream in(csv);
  return ingest_edge_stream(in).graph;
}

ImportanceLabeling labels(const TemporalGraph& g, const std::vector<std::string>& important) {
  ImportanceLabeling l;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (std::find(important.begin(), important.end(), g.name(v)) != important.end())
      l.important.push_back(v);
    else
      l.non_important.push_back(v);
  }
  return l;
}

}  // namespace

TEST_CASE("link actions") {
  auto g = graph_of("src,dst,ts\nu,w,3\nw,u,7\nu,w1,2\nu,w2,5\nz,q,1\n");
  auto acts = link_actions(g, g.id("u"));
  REQUIRE(acts.size() == 4);
  CHECK(acts[0] == LinkAction{g.id("w1"), 2});
  CHECK(acts[1] == LinkAction{g.id("w"), 3});
  CHECK(acts[2] == LinkAction{g.id("w2"), 5});
  CHECK(acts[3] == LinkAction{g.id("w"), 7});

  std::istringstream e("src,dst,ts\na,b,1\n"), a("node,ts\nlonely,1\n");
  auto h = ingest_edge_stream(e, &a).graph;
  CHECK(link_actions(h, h.id("lonely")).empty());
}

TEST_CASE("average action delay") {
  auto one = graph_of("src,dst,ts\nu,v,0\nu,w,5\nv,w,7\n");
  CHECK(average_action_delay(one, one.id("u"), one.id("v")) == 2.0);
  auto two = graph_of("src,dst,ts\nu,v,0\nu,a,1\nv,a,3\nu,b,10\nv,b,6\n");
  CHECK(average_action_delay(two, two.id("u"), two.id("v")) == 3.0);
  auto none = graph_of("src,dst,ts\nu,v,0\nu,a,1\n");
  CHECK_FALSE(average_action_delay(none, none.id("u"), none.id("v")).has_value());
  CHECK_THROWS(average_action_delay(none, none.id("v"), none.id("a")));
}

TEST_CASE("strict delay bound") {
  auto g = graph_of("src,dst,ts\nu,v,0\nu,w,5\nv,w,7\n");
  auto r = detect_influence_events(g, labels(g, {}));
  CHECK(r.events.empty());
}

TEST_CASE("hand timeline with two common partners") {
  auto g = graph_of("src,dst,ts\nu,v,0\nu,w1,5\nv,w1,6\nu,w2,10\nv,w2,13\n");
  auto r = detect_influence_events(g, labels(g, {"u"}));
  REQUIRE(r.events.size() == 1);
  const auto& e = r.events[0].event;
  CHECK(g.name(e.u) == "u");
  CHECK(g.name(e.v) == "v");
  CHECK(g.name(e.w) == "w1");
  CHECK(e.sigma == 2.0);
  CHECK(to_string(r.events[0].code) == "100");
  CHECK(satisfies_influence_predicate(g, e));
}

TEST_CASE("action before the pair linked is not an influence") {
  auto g = graph_of("src,dst,ts\nu,w1,1\nv,w1,2\nu,v,5\nu,w2,10\nv,w2,20\n");
  CHECK(detect_influence_events(g, labels(g, {})).events.empty());
}

TEST_CASE("global sigma and repeated interactions") {
  auto g = graph_of("src,dst,ts\nu,v,0\nu,w,5\nv,w,7\nv,w,30\nu,w,29\n");
  InfluenceOptions glob;
  glob.sigma_mode = SigmaMode::kGlobal;
  glob.global_sigma = 3;
  CHECK(detect_influence_events(g, labels(g, {}), glob).events.size() == 1);
  InfluenceOptions all = glob;
  all.matching = ActionMatching::kAll;
  // (5,7) and (29,30) for u->v
  CHECK(detect_influence_events(g, labels(g, {}), all).events.size() == 2);
}

TEST_CASE("distribution counting") {
  auto ev = [](const char* code) {
    CodedEvent c{};
    c.code = {code[0], code[1], code[2]};
    return c;
  };
  std::vector<CodedEvent> two{ev("100"), ev("110")};
  auto d = event_distribution(two);
  CHECK(d["1XX"] == 2);
  CHECK(d["X1X"] == 1);
  CHECK(d["XX0"] == 2);

  auto empty = event_distribution({});
  CHECK(empty.size() == distribution_patterns().size());
  for (auto& [k, v] : empty) CHECK(v == 0);

  std::vector<CodedEvent> each;
  for (const char* c : {"000", "001", "010", "011", "100", "101", "110", "111"}) each.push_back(ev(c));
  auto all = event_distribution(each);
  for (const char* k : {"1XX", "0XX", "X1X", "X0X", "XX1", "XX0"}) CHECK(all[k] == 4);
}

TEST_CASE("events on a growth network satisfy the predicate and are canonical") {
  GrowthParams gp;
  gp.nodes = 600;
  gp.seed = 4;
  auto g = generate_growth(gp);
  ImportanceLabeling l;
  for (NodeId v = 0; v < g.node_count(); ++v) (v % 3 ? l.non_important : l.important).push_back(v);
  auto r = detect_influence_events(g, l);
  REQUIRE_FALSE(r.events.empty());
  for (std::size_t i = 0; i < r.events.size(); ++i) {
    CHECK(satisfies_influence_predicate(g, r.events[i].event));
    if (i) CHECK(r.events[i - 1].event < r.events[i].event);
  }
  auto d = event_distribution(r.events);
  CHECK(d["1XX"] + d["0XX"] == r.events.size());
  CHECK(d["X1X"] + d["X0X"] == r.events.size());
  CHECK(d["XX1"] + d["XX0"] == r.events.size());
  auto again = detect_influence_events(g, l);
  CHECK(again.events.size() == r.events.size());
  for (std::size_t i = 0; i < r.events.size(); ++i) CHECK(again.events[i].event == r.events[i].event);

  ImportanceLabeling partial;
  partial.important.push_back(0);
  CHECK_THROWS(detect_influence_events(g, partial));
}
