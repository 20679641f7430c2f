#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "dfp/engine.hpp"
#include "dfp/target_assignment.hpp"

namespace dfp {

// A SimConfig plus everything the reporting layer wants to echo back.
struct ResolvedConfig {
  SimConfig sim;
  nlohmann::ordered_json echo;
  std::string game_kind;
  std::optional<TargetWorld> world;
};

// Builds a runnable configuration from a JSON document with sections
// {game, graph, weights, learning, run}.  Unknown keys anywhere are a
// ConfigError: silently ignored experiment parameters are worse than a
// failed parse.
ResolvedConfig parse_config(const nlohmann::ordered_json& doc);

// Reads and parses a config file; file-system and JSON syntax problems
// surface as ConfigError.
ResolvedConfig load_config_file(const std::string& path);

}  // namespace dfp
