#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "npp/pipeline.hpp"

namespace npp::report {

/// Shortest round-trip decimal form; identical bits always print identically.
std::string num(double v);
std::string num(const std::optional<double>& v);  // empty when undefined
nlohmann::json opt(const std::optional<double>& v);

void write_file(const std::string& path, const std::string& content);
std::string json_text(const nlohmann::json& j);

nlohmann::json ingest_json(const IngestReport& r);
nlohmann::json evolution_json(const EvolutionResult& r);
nlohmann::json balance_json(const BalanceReport& r);
nlohmann::json metrics_json(const MetricPair& m);

std::string census_csv(const TemporalGraph& g, const GraphSnapshot& s, std::span<const NppVector> census);
std::string cohort_csv(const TemporalGraph& g, const Cohort& c);
std::string wald_csv(const WaldReport& w);
std::string curve_csv(std::span<const CurvePoint> pts);
std::string events_csv(const TemporalGraph& g, std::span<const CodedEvent> events);
std::string positions_csv(const PositionTable& table);

}  // namespace npp::report
