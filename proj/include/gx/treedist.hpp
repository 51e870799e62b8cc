#pragma once

#include "gx/ruletree.hpp"

namespace gx {

// Minimum-cost ordered-tree edit distance with unit insert/delete/rename
// costs, computed with the Zhang-Shasha keyroot / leftmost-leaf dynamic
// program.
int zhang_shasha_distance(const RuleTree& a, const RuleTree& b);

}  // namespace gx
