#pragma once

#include <json.hpp>

#include "gx/game.hpp"
#include "gx/net.hpp"

namespace gx {

using Json = nlohmann::ordered_json;

Json game_config_to_json(const GameConfig& cfg);
// Strict: unknown keys are rejected with the offending key in the message.
GameConfig game_config_from_json(const Json& j);

Json network_config_to_json(const NetworkConfig& cfg);
NetworkConfig network_config_from_json(const Json& j);

// Human-readable tag for report rows/columns, e.g. "hex-5x5" or
// "line-hexhex5-w4l3-swap".
std::string game_config_label(const GameConfig& cfg);

}  // namespace gx
