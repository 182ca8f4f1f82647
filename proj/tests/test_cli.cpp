#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "npp");
  std::ostringstream out, err;
  int code = npp::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh scratch directory per test.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("npp_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& content) const {
    std::ofstream(dir / name, std::ios::binary) << content;
    return (dir / name).string();
  }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

const std::string kToy = std::string(NPP_DATA_DIR) + "/toy.cfg";

// IN = triangle {a,b,c} (degree 4); NIN cohort members x-y-z form a path.
const char* kBalanceEdges =
    "src,dst,ts\na,b,5\nb,c,5\na,c,5\na,p,5\na,q,5\nb,p,5\nb,q,5\nc,p,5\nc,q,5\nx,y,5\ny,z,5\n";

}  // namespace

TEST_CASE("ingest writes a report") {
  Scratch s("ingest");
  auto edges = s.file("e.csv", "src,dst,ts\na,b,1\nb,b,2\nb,c,3\n");
  auto r = run({"ingest", "--edges", edges, "--out", s / "o"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["events"] == 2);
  CHECK(j["skipped_self_loops"] == 1);
  CHECK(fs::exists(s / "o/events.csv"));
  CHECK(json::parse(slurp(s / "o/ingest_report.json")) == j);
}

TEST_CASE("missing input names the path") {
  auto r = run({"ingest", "--edges", "/no/such/file.csv"});
  CHECK(r.code == 2);
  CHECK(r.err.find("/no/such/file.csv") != std::string::npos);
}

TEST_CASE("usage errors exit 2 and help exits 0") {
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"run"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
}

TEST_CASE("census and centrality CSVs") {
  Scratch s("graph");
  auto edges = s.file("e.csv", "src,dst,ts\na,b,1\nb,c,2\nc,a,3\nc,d,4\n");
  auto c = run({"census", "--edges", edges});
  REQUIRE(c.code == 0);
  CHECK(c.out.rfind("node,p1,p2,p3,p4,p5\n", 0) == 0);
  CHECK(c.out.find("c,0,0,0,2,1\n") != std::string::npos);
  auto early = run({"census", "--edges", edges, "--t", "2"});
  CHECK(early.out.find("\nd,") == std::string::npos);
  auto b = run({"centrality", "--edges", edges, "--measure", "betweenness"});
  REQUIRE(b.code == 0);
  CHECK(b.out.find("c,betweenness,2\n") != std::string::npos);
  CHECK(run({"centrality", "--edges", edges, "--measure", "katz"}).code != 0);
  auto l = run({"label", "--edges", edges, "--threshold", "0.8"});
  REQUIRE(l.code == 0);
  CHECK(l.out.find("c,3,IN\n") != std::string::npos);
  CHECK(l.out.find("d,1,NIN\n") != std::string::npos);
}

TEST_CASE("run on the toy dataset") {
  Scratch s("run");
  auto r = run({"run", "--config", kToy, "--out", s / "a"});
  REQUIRE(r.code == 0);
  auto m = json::parse(slurp(s / "a/metrics.json"));
  CHECK(m["results"]["NPP"].contains("auroc"));
  CHECK(m["results"]["NPP"].contains("aupr"));
  CHECK(m.contains("config_hash"));
  auto manifest = json::parse(slurp(s / "a/MANIFEST.json"));
  CHECK(manifest["complete"] == true);
  CHECK(slurp(s / "a/wald_NPP.csv").rfind("feature,z,p,stars\n", 0) == 0);

  REQUIRE(run({"run", "--config", kToy, "--out", s / "b"}).code == 0);
  CHECK(slurp(s / "a/metrics.json") == slurp(s / "b/metrics.json"));
  CHECK(slurp(s / "a/model_NPP.json") == slurp(s / "b/model_NPP.json"));

  REQUIRE(run({"--seed", "99", "run", "--config", kToy, "--out", s / "c"}).code == 0);
  CHECK(json::parse(slurp(s / "c/metrics.json"))["seed"] == 99);
}

TEST_CASE("comparison mode reports every feature set") {
  Scratch s("compare");
  auto cfg = s.file("c.cfg", "dataset.edges = " + std::string(NPP_DATA_DIR) +
                                 "/toy_edges.csv\nwindow.join_start = 80\nwindow.join_end = 160\n"
                                 "window.obs_duration = 20\nfeatures = compare\nmodel.bags = 3\n");
  REQUIRE(run({"run", "--config", cfg, "--out", s / "o"}).code == 0);
  auto m = json::parse(slurp(s / "o/metrics.json"));
  for (const char* k : {"PA", "TC", "All", "NPP"}) CHECK(m["results"].contains(k));
}

TEST_CASE("failed stages are recorded") {
  Scratch s("fail");
  // the only cohort member has no edges and everyone else is older: one class
  s.file("e.csv", "src,dst,ts\na,b,1\nb,c,1\n");
  s.file("n.csv", "node,ts\nz,5\n");
  auto cfg = s.file("f.cfg", "dataset.edges = e.csv\ndataset.nodes = n.csv\nwindow.join_start = 4\n"
                             "window.join_end = 6\nwindow.obs_duration = 1\nwindow.horizon = 9\n");
  auto r = run({"run", "--config", cfg, "--out", s / "o"});
  CHECK(r.code == 1);
  CHECK(r.err.find("train:NPP") != std::string::npos);
  auto manifest = json::parse(slurp(s / "o/MANIFEST.json"));
  CHECK(manifest["complete"] == false);
  CHECK(manifest["failed_stage"] == "train:NPP");
}

TEST_CASE("transfer matrices") {
  Scratch s("transfer");
  auto one = run({"transfer", "--config", kToy});
  CHECK(one.code == 2);
  CHECK(one.err.find("transfer requires ≥ 2 datasets") != std::string::npos);

  std::vector<std::string> args{"transfer"};
  for (int seed : {1, 2, 3, 4}) {
    auto edges = s.dir / ("g" + std::to_string(seed) + ".csv");
    REQUIRE(run({"--seed", std::to_string(seed), "generate", "--nodes", "400", "--out", edges.string()}).code == 0);
    auto cfg = s.file("d" + std::to_string(seed) + ".cfg",
                      "dataset.name = d" + std::to_string(seed) + "\ndataset.edges = " + edges.string() +
                          "\nwindow.join_start = 80\nwindow.join_end = 160\nwindow.obs_duration = 20\nmodel.bags = 3\n");
    args.insert(args.end(), {"--config", cfg});
  }
  args.insert(args.end(), {"--out", s / "o"});
  auto r = run(args);
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["datasets"].size() == 4);
  int off = 0;
  for (auto& c : j["cells"]) {
    if (c["train"] == c["test"])
      CHECK(c["aupr_loss"] == 0.0);
    else
      ++off;
  }
  CHECK(off == 12);
  auto csv = slurp(s / "o/transfer_aupr_loss.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("analyses") {
  Scratch s("analyze");
  s.file("e.csv", kBalanceEdges);
  s.file("n.csv", "node,ts\np,1\nq,1\n");
  auto cfg = s.file("b.cfg", "dataset.edges = e.csv\ndataset.nodes = n.csv\nwindow.join_start = 2\n"
                             "window.join_end = 6\nwindow.obs_duration = 1\nwindow.horizon = 10\n");
  auto b = run({"analyze", "balance", "--config", cfg, "--out", s / "o"});
  REQUIRE(b.code == 0);
  auto j = json::parse(b.out);
  CHECK(j["IN"]["nodes"] == 3);
  CHECK(j["IN"]["balance_rate_t"] == 1.0);
  CHECK(j["NIN"]["nodes"] == 3);
  CHECK(j["NIN"]["balance_rate_t"] == 0.0);

  auto none = run({"analyze", "influence", "--config", cfg, "--out", s / "o"});
  REQUIRE(none.code == 0);
  for (auto& [k, v] : json::parse(none.out)["distribution"].items()) CHECK(v == 0);

  s.file("star.csv", "src,dst,ts\nh,a,5\nh,b,5\nh,c,5\n");
  auto star = s.file("s.cfg", "dataset.edges = star.csv\nwindow.join_start = 1\nwindow.join_end = 5\n"
                              "window.obs_duration = 1\nwindow.horizon = 8\n");
  REQUIRE(run({"analyze", "positions", "--config", star, "--out", s / "p"}).code == 0);
  CHECK(slurp(s / "p/positions.csv").find("\n3,4,0\n") != std::string::npos);

  auto ev = run({"analyze", "evolution", "--config", cfg, "--out", s / "o"});
  REQUIRE(ev.code == 0);
  CHECK(json::parse(ev.out)["triads"].size() == 2);
  CHECK(run({"analyze", "nothing", "--config", cfg}).code == 2);
}

TEST_CASE("print-defaults parses back") {
  auto r = run({"config", "print-defaults"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("label.threshold = 0.8") != std::string::npos);
}
