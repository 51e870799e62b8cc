#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gx/game.hpp"
#include "gx/ruletree.hpp"
#include "gx/tensor.hpp"

namespace gx {

enum class ChannelKind {
    containerExists,
    piecePresence,
    isCurrentPlayer,
    swappedRoles,
    lastMoveFrom,
    lastMoveTo,
    secondLastMoveFrom,
    secondLastMoveTo,
    stackHeight,
    pieceCount,
    playerAmount,
    localState,
};

const char* channel_kind_name(ChannelKind k);

// One state channel's meaning. Equality is kind + payload; the rule tree is
// carried for piece-type matching but does not participate in equality.
struct ChannelSemantic {
    ChannelKind kind = ChannelKind::containerExists;
    int player = 0;              // piecePresence, isCurrentPlayer, playerAmount
    int containerIndex = 0;      // containerExists
    std::string pieceTypeName;   // piecePresence
    RuleTree ruleTree;           // piecePresence

    static ChannelSemantic container(int index) {
        ChannelSemantic c;
        c.kind = ChannelKind::containerExists;
        c.containerIndex = index;
        return c;
    }
    static ChannelSemantic piece(int player, std::string name, RuleTree tree) {
        ChannelSemantic c;
        c.kind = ChannelKind::piecePresence;
        c.player = player;
        c.pieceTypeName = std::move(name);
        c.ruleTree = std::move(tree);
        return c;
    }
    static ChannelSemantic currentPlayer(int player) {
        ChannelSemantic c;
        c.kind = ChannelKind::isCurrentPlayer;
        c.player = player;
        return c;
    }
    static ChannelSemantic simple(ChannelKind kind) {
        ChannelSemantic c;
        c.kind = kind;
        return c;
    }
    static ChannelSemantic amount(int player) {
        ChannelSemantic c;
        c.kind = ChannelKind::playerAmount;
        c.player = player;
        return c;
    }

    bool operator==(const ChannelSemantic& o) const {
        return kind == o.kind && player == o.player && containerIndex == o.containerIndex &&
               pieceTypeName == o.pieceTypeName;
    }
    std::string describe() const;
};

struct StateTensorSpec {
    std::vector<ChannelSemantic> channels;
    int rows = 0;
    int cols = 0;
    int channelCount() const { return static_cast<int>(channels.size()); }
};

// Movement buckets clamp coordinate deltas to {<=-3,-2,-1,0,1,2,>=3},
// represented here as ints in [-3, 3].
struct ActionChannelSemantic {
    enum class Kind { placement, movement, pass, swap } kind = Kind::placement;
    int dRowBucket = 0;  // movement only
    int dColBucket = 0;  // movement only

    static ActionChannelSemantic placement() { return {Kind::placement, 0, 0}; }
    static ActionChannelSemantic movement(int dRow, int dCol) {
        return {Kind::movement, dRow, dCol};
    }
    static ActionChannelSemantic pass() { return {Kind::pass, 0, 0}; }
    static ActionChannelSemantic swap() { return {Kind::swap, 0, 0}; }

    bool operator==(const ActionChannelSemantic&) const = default;
    std::string describe() const;
};

struct ActionTensorSpec {
    std::vector<ActionChannelSemantic> channels;
    int rows = 0;
    int cols = 0;
    int channelCount() const { return static_cast<int>(channels.size()); }
    // Index of the first channel with the given kind, or -1.
    int findChannel(ActionChannelSemantic::Kind kind) const;
    int findMovementChannel(int dRowBucket, int dColBucket) const;
};

struct PolicyIndex {
    int channel = 0;
    int row = 0;
    int col = 0;
    bool operator==(const PolicyIndex&) const = default;
    auto operator<=>(const PolicyIndex&) const = default;
    size_t flat(int rows, int cols) const {
        return (static_cast<size_t>(channel) * rows + row) * cols + col;
    }
};

// Legal moves sharing one policy cell. Groups are emitted sorted by policy
// index; moves inside a group keep legal_moves order.
struct AliasGroup {
    PolicyIndex index;
    std::vector<MoveRecord> moves;
};

int movement_bucket(int delta);  // clamps to [-3, 3]

StateTensorSpec build_state_spec(const GameConfig& config);
ActionTensorSpec build_action_spec(const GameConfig& config);

// Fills the tensor channel by channel in the order the spec lists them, so a
// permuted spec yields the correspondingly permuted encoding.
Tensor encode_state(const GameState& state, const StateTensorSpec& spec);

PolicyIndex move_to_policy_index(const MoveRecord& move, const ActionTensorSpec& spec);

std::vector<AliasGroup> alias_groups(const std::vector<MoveRecord>& legalMoves,
                                     const ActionTensorSpec& spec);

// Normalized visit-count distribution; aliased moves' counts are summed into
// their shared cell. Throws DataError when total visits are zero.
Tensor policy_target_from_visits(const std::map<MoveRecord, int>& visitCounts,
                                 const ActionTensorSpec& spec);

}  // namespace gx
