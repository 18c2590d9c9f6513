#pragma once
// Result serialization. CSV numbers carry 17 significant digits so re-parsing
// reproduces the exact doubles; files are UTF-8 with LF line endings and a
// trailing newline. The manifest embeds the full config verbatim, which makes
// any result file re-runnable as-is.

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bounds.hpp"
#include "config.hpp"
#include "oracle.hpp"
#include "sim.hpp"

namespace mtb {

// Shortest-round-trip would also do, but a fixed %.17g keeps the format
// identical across standard libraries.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string regret_csv(const AggregateResult& agg) {
  std::string s = "t,mean_regret,stderr,lower_bound\n";
  for (std::size_t i = 0; i < agg.rounds.size(); ++i) {
    s += std::to_string(agg.rounds[i]);
    s += ',';
    s += format_double(agg.mean_regret[i]);
    s += ',';
    if (!agg.stderr_regret.empty()) s += format_double(agg.stderr_regret[i]);
    s += ',';
    s += format_double(agg.lower_bound[i]);
    s += '\n';
  }
  return s;
}

// Inverse of regret_csv, for round-trip checks and downstream tooling.
inline AggregateResult parse_regret_csv(const std::string& text) {
  AggregateResult agg;
  std::size_t pos = 0;
  const auto next_line = [&](std::string& line) {
    if (pos >= text.size()) return false;
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) throw std::invalid_argument("regret csv: missing trailing newline");
    line = text.substr(pos, nl - pos);
    pos = nl + 1;
    return true;
  };
  std::string line;
  if (!next_line(line) || line != "t,mean_regret,stderr,lower_bound")
    throw std::invalid_argument("regret csv: bad header");
  const auto parse_field = [](const std::string& field, const char* what) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (errno != 0 || end != field.c_str() + field.size() || field.empty())
      throw std::invalid_argument(std::string("regret csv: bad ") + what + " field: \"" + field + "\"");
    return v;
  };
  bool any_stderr = false;
  while (next_line(line)) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 4) throw std::invalid_argument("regret csv: expected 4 fields per row");
    agg.rounds.push_back(static_cast<std::int64_t>(parse_field(fields[0], "round")));
    agg.mean_regret.push_back(parse_field(fields[1], "mean"));
    if (!fields[2].empty()) {
      any_stderr = true;
      agg.stderr_regret.push_back(parse_field(fields[2], "stderr"));
    } else if (any_stderr) {
      throw std::invalid_argument("regret csv: stderr present on some rows only");
    }
    agg.lower_bound.push_back(parse_field(fields[3], "bound"));
  }
  if (any_stderr && agg.stderr_regret.size() != agg.rounds.size())
    throw std::invalid_argument("regret csv: stderr present on some rows only");
  return agg;
}

inline nlohmann::json bound_to_json(const BoundResult& bound) {
  nlohmann::json terms = nlohmann::json::array();
  for (const BoundTerm& t : bound.terms)
    terms.push_back({{"arm", t.arm}, {"coefficient", t.coefficient}, {"target", t.target}});
  return {{"objective", to_string(bound.objective)}, {"constant", bound.constant}, {"terms", terms}};
}

inline nlohmann::json result_manifest(const ExperimentConfig& cfg, const OptimalArm& opt,
                                      const AggregateResult& agg) {
  nlohmann::json j;
  j["format"] = "regret-manifest-v1";
  j["generator"] = "splitmix64-v1";
  j["config"] = config_to_json(cfg);
  j["best_arm"] = opt.index;
  j["bound"] = bound_to_json(agg.bound);
  j["results"] = {{"final_round", agg.rounds.back()},
                  {"final_mean_regret", agg.mean_regret.back()},
                  {"best_arm_fraction_late", agg.best_arm_fraction},
                  {"trials", agg.trials}};
  return j;
}

// CSV view of a bound: one row per term, the constant repeated for cohesion.
inline std::string bound_csv(const BoundResult& bound) {
  std::string s = "objective,constant,arm,coefficient,target\n";
  for (const BoundTerm& t : bound.terms) {
    s += to_string(bound.objective) + "," + format_double(bound.constant) + "," + std::to_string(t.arm) +
         "," + format_double(t.coefficient) + "," + format_double(t.target) + "\n";
  }
  return s;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);  // binary: no newline translation anywhere
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return s;
}

}  // namespace mtb
