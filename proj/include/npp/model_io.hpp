#pragma once

#include <string>

#include <json.hpp>

#include "npp/learn.hpp"

namespace npp {

nlohmann::json model_to_json(const LogisticModel& m);
nlohmann::json model_to_json(const BaggedModel& m);
BaggedModel bagged_model_from_json(const nlohmann::json& j);

void save_model(const BaggedModel& m, const std::string& path);
BaggedModel load_model(const std::string& path);

}  // namespace npp
