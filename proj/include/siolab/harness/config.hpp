#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace siolab::harness {

// Parses the configuration grammar (a TOML subset): `key = value` lines,
// `[table]` / `[a.b]` headers, dotted keys, `#` comments, and values that are
// strings, numbers, booleans, arrays or inline tables `{ k = v, ... }`.
// Arrays and inline tables may span lines. The bare word `inf` is stored as
// the string "inf". Errors carry the line number.
nlohmann::json parse_config_text(const std::string& text);
nlohmann::json load_config_file(const std::string& path);

// `path.to.leaf=value`, where value uses the same value grammar; a value that
// does not parse is taken as a bare string.
void apply_override(nlohmann::json& cfg, const std::string& assignment);

struct ExperimentConfig {
  std::string experiment;
  nlohmann::json domain = nlohmann::json::object();
  nlohmann::json omega = nlohmann::json::object();
  nlohmann::json op = nlohmann::json::object();
  std::vector<int> resolutions;
  std::string output_dir = "siolab-out";
  std::uint64_t seed = 1;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json raw;  // the full tree after overrides

  // Validates keys, resolutions (strictly increasing, >= 16) and the
  // experiment/operator pairing; SpecError on failure.
  static ExperimentConfig from_json(const nlohmann::json& j);
};

const std::vector<std::string>& experiment_names();

}  // namespace siolab::harness
