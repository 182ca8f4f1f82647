#include "npp/model_io.hpp"

#include <fstream>

namespace npp {

nlohmann::json model_to_json(const LogisticModel& m) {
  return {
      {"weights", m.weights},
      {"intercept", m.intercept},
      {"lambda", m.lambda},
      {"mean", m.standardization.mean},
      {"scale", m.standardization.scale},
      {"iterations", m.diagnostics.iterations},
      {"final_loss", m.diagnostics.final_loss},
      {"converged", m.diagnostics.converged},
  };
}

nlohmann::json model_to_json(const BaggedModel& m) {
  nlohmann::json members = nlohmann::json::array();
  for (const auto& member : m.members) members.push_back(model_to_json(member));
  return {
      {"feature_names", m.feature_names},
      {"bags", m.bags()},
      {"seed", m.seed},
      {"bootstrap", m.bootstrap},
      {"members", std::move(members)},
  };
}

BaggedModel bagged_model_from_json(const nlohmann::json& j) {
  try {
    BaggedModel m;
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.bootstrap = j.at("bootstrap").get<bool>();
    for (const auto& mj : j.at("members")) {
      LogisticModel lm;
      lm.feature_names = m.feature_names;
      lm.weights = mj.at("weights").get<std::vector<double>>();
      lm.intercept = mj.at("intercept").get<double>();
      lm.lambda = mj.at("lambda").get<double>();
      lm.standardization.mean = mj.at("mean").get<std::vector<double>>();
      lm.standardization.scale = mj.at("scale").get<std::vector<double>>();
      lm.diagnostics.iterations = mj.value("iterations", 0);
      lm.diagnostics.final_loss = mj.value("final_loss", 0.0);
      lm.diagnostics.converged = mj.value("converged", false);
      const auto p = m.feature_names.size();
      if (lm.weights.size() != p || lm.standardization.mean.size() != p || lm.standardization.scale.size() != p)
        throw Error("model member has inconsistent lengths");
      m.members.push_back(std::move(lm));
    }
    if (m.members.empty()) throw Error("model has no members");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed model JSON: ") + e.what());
  }
}

void save_model(const BaggedModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << model_to_json(m).dump(2) << '\n';
}

BaggedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed model JSON: ") + e.what());
  }
  return bagged_model_from_json(j);
}

}  // namespace npp
