#include "gx/ruletree.hpp"

#include "gx/errors.hpp"

namespace gx {

RuleTree build_rule_tree(const GameConfig& config, const std::string& pieceType) {
    if (pieceType != config.pieceTypeName())
        throw ConfigError("unknown piece type '" + pieceType + "' for this game");
    if (config.family == GameFamily::breakthrough) {
        return RuleTree{"pawn", {RuleTree{"forwardStep", {}}, RuleTree{"diagonalCapture", {}}}};
    }
    return RuleTree{"stone", {RuleTree{"place", {}}}};
}

}  // namespace gx
