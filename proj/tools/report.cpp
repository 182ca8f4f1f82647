#include "report.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace npp::report {

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error("cannot format number");
  return std::string(buf, ptr);
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string{}; }

nlohmann::json opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

void write_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json ingest_json(const IngestReport& r) {
  return {{"events", r.events},
          {"skipped_self_loops", r.skipped_self_loops},
          {"duplicate_events", r.duplicate_events},
          {"arrival_records", r.arrival_records},
          {"arrival_conflicts", r.arrival_conflicts},
          {"nodes", r.nodes},
          {"edges", r.edges}};
}

nlohmann::json evolution_json(const EvolutionResult& r) {
  return {{"type", static_cast<int>(r.type)},
          {"population", r.population},
          {"sampled", r.sampled},
          {"evolved", r.evolved},
          {"rate", opt(r.rate)},
          {"seed", r.seed}};
}

nlohmann::json balance_json(const BalanceReport& r) {
  auto side = [](const BalanceSide& s) {
    return nlohmann::json{{"nodes", s.nodes},
                          {"edges_t", s.edges_t},
                          {"edges_t_plus_dt", s.edges_later},
                          {"balance_rate_t", s.rate_t},
                          {"balance_rate_t_plus_dt", s.rate_later}};
  };
  return {{"t", r.t}, {"t_plus_dt", r.later}, {"IN", side(r.important)}, {"NIN", side(r.non_important)}};
}

nlohmann::json metrics_json(const MetricPair& m) { return {{"auroc", opt(m.auroc)}, {"aupr", opt(m.aupr)}}; }

std::string census_csv(const TemporalGraph& g, const GraphSnapshot& s, std::span<const NppVector> census) {
  std::ostringstream out;
  out << "node,p1,p2,p3,p4,p5\n";
  for (LocalId v = 0; v < s.n(); ++v) {
    out << g.name(s.id(v));
    for (int p = 1; p <= 5; ++p) out << ',' << census[v].at(p);
    out << '\n';
  }
  return out.str();
}

std::string cohort_csv(const TemporalGraph& g, const Cohort& c) {
  std::ostringstream out;
  out << "node";
  for (const auto& f : c.feature_names) out << ',' << f;
  out << ",label\n";
  for (const auto& ex : c.examples) {
    out << g.name(ex.node);
    for (double x : ex.features) out << ',' << num(x);
    out << ',' << (ex.important ? "IN" : "NIN") << '\n';
  }
  return out.str();
}

std::string wald_csv(const WaldReport& w) {
  std::ostringstream out;
  out << "feature,z,p,stars\n";
  for (const auto& e : w.entries) out << e.feature << ',' << num(e.z) << ',' << num(e.p_value) << ',' << e.stars << '\n';
  return out.str();
}

std::string curve_csv(std::span<const CurvePoint> pts) {
  std::ostringstream out;
  out << "threshold,fpr,tpr,recall,precision\n";
  for (const auto& p : pts)
    out << num(p.threshold) << ',' << num(p.fpr) << ',' << num(p.tpr) << ',' << num(p.recall) << ','
        << num(p.precision) << '\n';
  return out.str();
}

std::string events_csv(const TemporalGraph& g, std::span<const CodedEvent> events) {
  std::ostringstream out;
  out << "u,v,w,t,t_prime,sigma,code\n";
  for (const auto& ce : events) {
    const auto& e = ce.event;
    out << g.name(e.u) << ',' << g.name(e.v) << ',' << g.name(e.w) << ',' << e.t << ',' << e.t_prime << ','
        << num(e.sigma) << ',' << to_string(ce.code) << '\n';
  }
  return out.str();
}

std::string positions_csv(const PositionTable& table) {
  std::ostringstream out;
  out << "i,j,prob_i_given_j\n";
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      const auto& v = table[i - 1][j - 1];
      out << i << ',' << j << ',' << (v ? num(*v) : std::string("undefined")) << '\n';
    }
  return out.str();
}

}  // namespace npp::report
