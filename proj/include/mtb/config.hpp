#pragma once
// Experiment configuration: JSON in, validated config out. Unknown keys are
// rejected by name so typos fail loudly instead of silently running defaults.

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "instance.hpp"
#include "oracle.hpp"
#include "policies.hpp"

namespace mtb {

struct ExperimentConfig {
  BanditInstance instance;
  Objective objective;
  std::string policy = "auto";  // auto | crossing | ranked | proximity
  double c = 3.1;               // exploration schedule constant
  std::int64_t horizon = 0;
  int trials = 1;
  std::uint64_t seed = 1;
  int checkpoints = 50;
  std::string out = "mtb_out";  // output path prefix
};

inline ObjectiveKind objective_kind_from_string(const std::string& s) {
  if (s == "crossing") return ObjectiveKind::crossing;
  if (s == "ranked") return ObjectiveKind::ranked;
  if (s == "proximity") return ObjectiveKind::proximity;
  throw std::invalid_argument("objective must be \"crossing\", \"ranked\" or \"proximity\", got \"" + s + "\"");
}

// "auto" pairs each objective with its natural sampler.
inline PolicyKind resolved_policy(const ExperimentConfig& cfg) {
  if (cfg.policy == "crossing") return PolicyKind::crossing;
  if (cfg.policy == "ranked") return PolicyKind::ranked;
  if (cfg.policy == "proximity") return PolicyKind::proximity;
  if (cfg.policy == "auto") {
    switch (cfg.objective.kind) {
      case ObjectiveKind::crossing: return PolicyKind::crossing;
      case ObjectiveKind::ranked: return PolicyKind::ranked;
      case ObjectiveKind::proximity: return PolicyKind::proximity;
    }
  }
  throw std::invalid_argument("policy must be \"auto\", \"crossing\", \"ranked\" or \"proximity\", got \"" +
                              cfg.policy + "\"");
}

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  static const std::set<std::string> known = {"means",   "tau",    "direction", "objective", "rank",
                                              "policy",  "c",      "horizon",   "trials",    "seed",
                                              "checkpoints", "out"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) throw std::invalid_argument("unknown config key: \"" + item.key() + "\"");
  }
  const auto require = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw std::invalid_argument(std::string("config is missing \"") + key + "\"");
    return j.at(key);
  };

  ExperimentConfig cfg;
  const nlohmann::json& means = require("means");
  if (!means.is_array() || means.empty()) throw std::invalid_argument("\"means\" must be a non-empty array");
  for (const auto& v : means) {
    if (!v.is_number()) throw std::invalid_argument("\"means\" entries must be numbers");
    cfg.instance.means.push_back(v.get<double>());
  }
  if (!require("tau").is_number()) throw std::invalid_argument("\"tau\" must be a number");
  cfg.instance.tau = j.at("tau").get<double>();
  if (j.contains("direction")) cfg.instance.direction = direction_from_string(j.at("direction").get<std::string>());

  cfg.objective.kind = objective_kind_from_string(require("objective").get<std::string>());
  if (cfg.objective.kind == ObjectiveKind::ranked) {
    const nlohmann::json& r = require("rank");
    if (!r.is_number_integer()) throw std::invalid_argument("\"rank\" must be an integer");
    cfg.objective.rank = r.get<int>();
  } else if (j.contains("rank")) {
    throw std::invalid_argument("\"rank\" is only meaningful for the ranked objective");
  }

  if (j.contains("policy")) cfg.policy = j.at("policy").get<std::string>();
  if (j.contains("c")) {
    if (!j.at("c").is_number()) throw std::invalid_argument("\"c\" must be a number");
    cfg.c = j.at("c").get<double>();
  }
  const nlohmann::json& horizon = require("horizon");
  if (!horizon.is_number_integer() || horizon.get<std::int64_t>() < 1)
    throw std::invalid_argument("\"horizon\" must be a positive integer");
  cfg.horizon = horizon.get<std::int64_t>();
  if (j.contains("trials")) {
    if (!j.at("trials").is_number_integer() || j.at("trials").get<int>() < 1)
      throw std::invalid_argument("\"trials\" must be a positive integer");
    cfg.trials = j.at("trials").get<int>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) throw std::invalid_argument("\"seed\" must be an integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("checkpoints")) {
    if (!j.at("checkpoints").is_number_integer() || j.at("checkpoints").get<int>() < 1)
      throw std::invalid_argument("\"checkpoints\" must be a positive integer");
    cfg.checkpoints = j.at("checkpoints").get<int>();
  }
  if (j.contains("out")) cfg.out = j.at("out").get<std::string>();

  // Fail early on anything the run would reject later.
  require_valid(cfg.instance);
  ExplorationSchedule sched{cfg.c};  // throws when c <= 3
  (void)sched;
  if (cfg.horizon < static_cast<std::int64_t>(cfg.instance.means.size()))
    throw std::invalid_argument("\"horizon\" must cover at least one sweep of the arms");
  (void)resolved_policy(cfg);           // validates the policy name
  (void)optimal_arm(cfg.instance, cfg.objective);  // validates the rank against the instance
  return cfg;
}

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["means"] = cfg.instance.means;
  j["tau"] = cfg.instance.tau;
  j["direction"] = to_string(cfg.instance.direction);
  j["objective"] = cfg.objective.kind == ObjectiveKind::crossing    ? "crossing"
                   : cfg.objective.kind == ObjectiveKind::ranked    ? "ranked"
                                                                    : "proximity";
  if (cfg.objective.kind == ObjectiveKind::ranked) j["rank"] = cfg.objective.rank;
  j["policy"] = cfg.policy;
  j["c"] = cfg.c;
  j["horizon"] = cfg.horizon;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["checkpoints"] = cfg.checkpoints;
  j["out"] = cfg.out;
  return j;
}

// Accepts either a bare config or a result manifest (whose "config" member is
// the config), so a manifest can be re-run directly.
inline ExperimentConfig parse_config_or_manifest(const nlohmann::json& j) {
  if (j.is_object() && j.contains("config")) return parse_config(j.at("config"));
  return parse_config(j);
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config file " + path + " is not valid JSON: " + e.what());
  }
  return parse_config_or_manifest(j);
}

// Built-in experiment presets: a ten-arm instance with a wide spread of means
// around threshold 0.6, one panel per objective variant. Mirrored on disk
// under configs/; a unit test keeps the two copies identical.
inline const std::map<std::string, std::string>& preset_texts() {
  static const std::map<std::string, std::string> presets = {
      {"figure1a", R"({
  "means": [0.038, 0.041, 0.078, 0.36, 0.533, 0.796, 0.814, 0.85, 0.94, 0.967],
  "tau": 0.6,
  "direction": "increasing",
  "objective": "crossing",
  "policy": "auto",
  "c": 3.1,
  "horizon": 1000000,
  "trials": 30,
  "seed": 2001,
  "checkpoints": 50,
  "out": "figure1a"
}
)"},
      {"figure1b", R"({
  "means": [0.038, 0.041, 0.078, 0.36, 0.533, 0.796, 0.814, 0.85, 0.94, 0.967],
  "tau": 0.6,
  "direction": "increasing",
  "objective": "proximity",
  "policy": "auto",
  "c": 3.1,
  "horizon": 1000000,
  "trials": 30,
  "seed": 2002,
  "checkpoints": 50,
  "out": "figure1b"
}
)"},
      {"figure1c", R"({
  "means": [0.038, 0.041, 0.078, 0.36, 0.533, 0.796, 0.814, 0.85, 0.94, 0.967],
  "tau": 0.6,
  "direction": "increasing",
  "objective": "ranked",
  "rank": 4,
  "policy": "auto",
  "c": 3.1,
  "horizon": 1000000,
  "trials": 30,
  "seed": 2003,
  "checkpoints": 50,
  "out": "figure1c"
}
)"},
      {"figure1d", R"({
  "means": [0.038, 0.041, 0.078, 0.36, 0.533, 0.796, 0.814, 0.85, 0.94, 0.967],
  "tau": 0.6,
  "direction": "increasing",
  "objective": "ranked",
  "rank": -2,
  "policy": "auto",
  "c": 3.1,
  "horizon": 1000000,
  "trials": 30,
  "seed": 2004,
  "checkpoints": 50,
  "out": "figure1d"
}
)"}};
  return presets;
}

inline ExperimentConfig preset_config(const std::string& name) {
  const auto& all = preset_texts();
  const auto it = all.find(name);
  if (it == all.end()) {
    std::string names;
    for (const auto& [n, _] : all) names += (names.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown preset \"" + name + "\" (available: " + names + ")");
  }
  return parse_config(nlohmann::json::parse(it->second));
}

}  // namespace mtb
