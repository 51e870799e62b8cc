#include "gx/serialize.hpp"

#include <set>
#include <sstream>

#include "gx/errors.hpp"

namespace gx {

namespace {

void check_keys(const Json& j, const std::set<std::string>& allowed, const char* where) {
    if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigError(std::string(where) + ": unknown key '" + it.key() + "'");
    }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback, const char* where) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw ConfigError(std::string(where) + ": field '" + key + "' has the wrong type");
    }
}

}  // namespace

Json game_config_to_json(const GameConfig& cfg) {
    Json j;
    switch (cfg.family) {
        case GameFamily::hex: j["family"] = "hex"; break;
        case GameFamily::lineGame: j["family"] = "line"; break;
        case GameFamily::breakthrough: j["family"] = "breakthrough"; break;
    }
    j["board"] = cfg.boardShape == BoardShape::square ? "square" : "hexhex";
    j["side"] = cfg.side;
    j["misere"] = cfg.misere;
    j["winLen"] = cfg.winLen;
    if (cfg.lossLen)
        j["lossLen"] = *cfg.lossLen;
    else
        j["lossLen"] = nullptr;
    j["diagonalOnly"] = cfg.diagonalOnly;
    j["swapRule"] = cfg.swapRule;
    return j;
}

GameConfig game_config_from_json(const Json& j) {
    check_keys(j, {"family", "board", "side", "misere", "winLen", "lossLen",
                   "diagonalOnly", "swapRule"},
               "game");
    GameConfig cfg;
    std::string family = get_or<std::string>(j, "family", "hex", "game");
    if (family == "hex")
        cfg.family = GameFamily::hex;
    else if (family == "line")
        cfg.family = GameFamily::lineGame;
    else if (family == "breakthrough")
        cfg.family = GameFamily::breakthrough;
    else
        throw ConfigError("game: unknown family '" + family + "'");
    std::string board = get_or<std::string>(j, "board", "square", "game");
    if (board == "square")
        cfg.boardShape = BoardShape::square;
    else if (board == "hexhex")
        cfg.boardShape = BoardShape::hexhex;
    else
        throw ConfigError("game: unknown board '" + board + "'");
    cfg.side = get_or<int>(j, "side", 5, "game");
    cfg.misere = get_or<bool>(j, "misere", false, "game");
    cfg.winLen = get_or<int>(j, "winLen", 0, "game");
    if (j.contains("lossLen") && !j.at("lossLen").is_null())
        cfg.lossLen = get_or<int>(j, "lossLen", 0, "game");
    cfg.diagonalOnly = get_or<bool>(j, "diagonalOnly", false, "game");
    cfg.swapRule = get_or<bool>(j, "swapRule", false, "game");
    cfg.validate();
    return cfg;
}

Json network_config_to_json(const NetworkConfig& cfg) {
    Json j;
    j["cState"] = cfg.cState;
    j["cAction"] = cfg.cAction;
    j["hiddenChannels"] = cfg.hiddenChannels;
    j["blocks"] = cfg.blocks;
    j["layersPerBlock"] = cfg.layersPerBlock;
    j["valueChannels"] = cfg.valueChannels;
    return j;
}

NetworkConfig network_config_from_json(const Json& j) {
    check_keys(j, {"cState", "cAction", "hiddenChannels", "hiddenMultiplier", "blocks",
                   "layersPerBlock", "valueChannels"},
               "network");
    NetworkConfig cfg;
    cfg.cState = get_or<int>(j, "cState", 0, "network");
    cfg.cAction = get_or<int>(j, "cAction", 0, "network");
    cfg.hiddenChannels = get_or<int>(j, "hiddenChannels", 0, "network");
    int multiplier = get_or<int>(j, "hiddenMultiplier", 0, "network");
    if (multiplier > 0 && cfg.hiddenChannels == 0 && cfg.cState > 0)
        cfg.hiddenChannels = multiplier * cfg.cState;
    cfg.blocks = get_or<int>(j, "blocks", 2, "network");
    cfg.layersPerBlock = get_or<int>(j, "layersPerBlock", 2, "network");
    cfg.valueChannels = get_or<int>(j, "valueChannels", 4, "network");
    return cfg;
}

std::string game_config_label(const GameConfig& cfg) {
    std::ostringstream os;
    switch (cfg.family) {
        case GameFamily::hex: os << (cfg.misere ? "misere-hex" : "hex"); break;
        case GameFamily::lineGame: os << "line"; break;
        case GameFamily::breakthrough: os << "breakthrough"; break;
    }
    os << "-" << (cfg.boardShape == BoardShape::square ? "" : "hexhex") << cfg.side;
    if (cfg.boardShape == BoardShape::square) os << "x" << cfg.side;
    if (cfg.family == GameFamily::lineGame) {
        os << "-w" << cfg.winLen;
        if (cfg.lossLen) os << "l" << *cfg.lossLen;
        if (cfg.diagonalOnly) os << "-diag";
    }
    if (cfg.swapRule) os << "-swap";
    return os.str();
}

}  // namespace gx
