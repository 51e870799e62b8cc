#pragma once

#include <string>
#include <vector>

#include "gx/game.hpp"

namespace gx {

// Ordered labeled tree describing a piece type's rules; the unit the
// Zhang-Shasha edit distance compares when piece names differ.
struct RuleTree {
    std::string label;
    std::vector<RuleTree> children;

    bool operator==(const RuleTree&) const = default;
    size_t size() const {
        size_t n = 1;
        for (const auto& c : children) n += c.size();
        return n;
    }
};

// Deterministic rule proxy per piece type. The root carries the piece name's
// family; children encode movement/capture behavior. Win-condition parameters
// (winLen etc.) live in end rules, not piece rules, so variants of one family
// share identical trees.
RuleTree build_rule_tree(const GameConfig& config, const std::string& pieceType);

}  // namespace gx
