#include "gx/codec.hpp"

#include <algorithm>
#include <sstream>

#include "gx/errors.hpp"

namespace gx {

const char* channel_kind_name(ChannelKind k) {
    switch (k) {
        case ChannelKind::containerExists: return "containerExists";
        case ChannelKind::piecePresence: return "piecePresence";
        case ChannelKind::isCurrentPlayer: return "isCurrentPlayer";
        case ChannelKind::swappedRoles: return "swappedRoles";
        case ChannelKind::lastMoveFrom: return "lastMoveFrom";
        case ChannelKind::lastMoveTo: return "lastMoveTo";
        case ChannelKind::secondLastMoveFrom: return "secondLastMoveFrom";
        case ChannelKind::secondLastMoveTo: return "secondLastMoveTo";
        case ChannelKind::stackHeight: return "stackHeight";
        case ChannelKind::pieceCount: return "pieceCount";
        case ChannelKind::playerAmount: return "playerAmount";
        case ChannelKind::localState: return "localState";
    }
    return "?";
}

std::string ChannelSemantic::describe() const {
    std::ostringstream os;
    os << channel_kind_name(kind);
    switch (kind) {
        case ChannelKind::containerExists: os << "(" << containerIndex << ")"; break;
        case ChannelKind::piecePresence: os << "(P" << player << "," << pieceTypeName << ")"; break;
        case ChannelKind::isCurrentPlayer:
        case ChannelKind::playerAmount: os << "(P" << player << ")"; break;
        default: break;
    }
    return os.str();
}

std::string ActionChannelSemantic::describe() const {
    switch (kind) {
        case Kind::placement: return "placement";
        case Kind::pass: return "pass";
        case Kind::swap: return "swap";
        case Kind::movement: {
            std::ostringstream os;
            os << "movement(dr=" << dRowBucket << ",dc=" << dColBucket << ")";
            return os.str();
        }
    }
    return "?";
}

int ActionTensorSpec::findChannel(ActionChannelSemantic::Kind kind) const {
    for (size_t i = 0; i < channels.size(); ++i)
        if (channels[i].kind == kind) return static_cast<int>(i);
    return -1;
}

int ActionTensorSpec::findMovementChannel(int dRowBucket, int dColBucket) const {
    for (size_t i = 0; i < channels.size(); ++i) {
        const auto& c = channels[i];
        if (c.kind == ActionChannelSemantic::Kind::movement && c.dRowBucket == dRowBucket &&
            c.dColBucket == dColBucket)
            return static_cast<int>(i);
    }
    return -1;
}

int movement_bucket(int delta) { return std::clamp(delta, -3, 3); }

StateTensorSpec build_state_spec(const GameConfig& config) {
    config.validate();
    Geometry g = config.geometry();
    StateTensorSpec spec;
    spec.rows = g.rows;
    spec.cols = g.cols;
    std::string piece = config.pieceTypeName();
    RuleTree tree = build_rule_tree(config, piece);
    spec.channels.push_back(ChannelSemantic::container(0));
    spec.channels.push_back(ChannelSemantic::piece(1, piece, tree));
    spec.channels.push_back(ChannelSemantic::piece(2, piece, tree));
    spec.channels.push_back(ChannelSemantic::currentPlayer(1));
    spec.channels.push_back(ChannelSemantic::currentPlayer(2));
    spec.channels.push_back(ChannelSemantic::simple(ChannelKind::lastMoveFrom));
    spec.channels.push_back(ChannelSemantic::simple(ChannelKind::lastMoveTo));
    spec.channels.push_back(ChannelSemantic::simple(ChannelKind::secondLastMoveFrom));
    spec.channels.push_back(ChannelSemantic::simple(ChannelKind::secondLastMoveTo));
    if (config.swapRule)
        spec.channels.push_back(ChannelSemantic::simple(ChannelKind::swappedRoles));
    return spec;
}

ActionTensorSpec build_action_spec(const GameConfig& config) {
    config.validate();
    Geometry g = config.geometry();
    ActionTensorSpec spec;
    spec.rows = g.rows;
    spec.cols = g.cols;
    if (config.placementGame()) {
        spec.channels.push_back(ActionChannelSemantic::placement());
    } else {
        for (int dr = -3; dr <= 3; ++dr)
            for (int dc = -3; dc <= 3; ++dc)
                spec.channels.push_back(ActionChannelSemantic::movement(dr, dc));
    }
    spec.channels.push_back(ActionChannelSemantic::pass());
    spec.channels.push_back(ActionChannelSemantic::swap());
    return spec;
}

namespace {

// The move at history[size-1-ago], if any.
const MoveRecord* history_move(const GameState& s, int ago) {
    int n = static_cast<int>(s.moveHistory.size());
    if (ago >= n) return nullptr;
    return &s.moveHistory[n - 1 - ago];
}

void fill_move_cell(Tensor& t, int channel, const GameState& s, int ago, bool from) {
    const MoveRecord* m = history_move(s, ago);
    if (!m) return;
    if (from && m->hasFrom) t.at3(channel, m->from.row, m->from.col) = 1.0;
    if (!from && m->hasTo) t.at3(channel, m->to.row, m->to.col) = 1.0;
}

}  // namespace

Tensor encode_state(const GameState& state, const StateTensorSpec& spec) {
    const Geometry& g = state.geo;
    if (g.rows != spec.rows || g.cols != spec.cols)
        throw DataError("encode_state: geometry does not match spec dims");
    Tensor t({spec.channelCount(), spec.rows, spec.cols});
    for (int ci = 0; ci < spec.channelCount(); ++ci) {
        const ChannelSemantic& ch = spec.channels[ci];
        switch (ch.kind) {
            case ChannelKind::containerExists:
                for (int r = 0; r < g.rows; ++r)
                    for (int c = 0; c < g.cols; ++c)
                        t.at3(ci, r, c) = g.playable({r, c}) ? 1.0 : 0.0;
                break;
            case ChannelKind::piecePresence:
                if (ch.pieceTypeName == state.config->pieceTypeName()) {
                    for (int r = 0; r < g.rows; ++r)
                        for (int c = 0; c < g.cols; ++c)
                            if (state.ownerAt({r, c}) == ch.player) t.at3(ci, r, c) = 1.0;
                }
                break;
            case ChannelKind::isCurrentPlayer:
                if (state.toMove.id == ch.player)
                    for (int r = 0; r < g.rows; ++r)
                        for (int c = 0; c < g.cols; ++c) t.at3(ci, r, c) = 1.0;
                break;
            case ChannelKind::swappedRoles:
                if (state.swapped)
                    for (int r = 0; r < g.rows; ++r)
                        for (int c = 0; c < g.cols; ++c) t.at3(ci, r, c) = 1.0;
                break;
            case ChannelKind::lastMoveFrom: fill_move_cell(t, ci, state, 0, true); break;
            case ChannelKind::lastMoveTo: fill_move_cell(t, ci, state, 0, false); break;
            case ChannelKind::secondLastMoveFrom: fill_move_cell(t, ci, state, 1, true); break;
            case ChannelKind::secondLastMoveTo: fill_move_cell(t, ci, state, 1, false); break;
            case ChannelKind::stackHeight:
            case ChannelKind::pieceCount:
            case ChannelKind::playerAmount:
            case ChannelKind::localState:
                // Representable for transfer matching, never produced by the
                // three game families; encoded as all-zero.
                break;
        }
    }
    return t;
}

PolicyIndex move_to_policy_index(const MoveRecord& move, const ActionTensorSpec& spec) {
    switch (move.kind) {
        case MoveKind::placement: {
            int c = spec.findChannel(ActionChannelSemantic::Kind::placement);
            if (c < 0) throw DataError("spec has no placement channel");
            return {c, move.to.row, move.to.col};
        }
        case MoveKind::movement: {
            int c = spec.findMovementChannel(movement_bucket(move.to.row - move.from.row),
                                             movement_bucket(move.to.col - move.from.col));
            if (c < 0) throw DataError("spec has no movement channels");
            return {c, move.to.row, move.to.col};
        }
        case MoveKind::pass: {
            int c = spec.findChannel(ActionChannelSemantic::Kind::pass);
            if (c < 0) throw DataError("spec has no pass channel");
            return {c, 0, 0};
        }
        case MoveKind::swap_sides: {
            int c = spec.findChannel(ActionChannelSemantic::Kind::swap);
            if (c < 0) throw DataError("spec has no swap channel");
            return {c, 0, 0};
        }
    }
    throw DataError("unreachable move kind");
}

std::vector<AliasGroup> alias_groups(const std::vector<MoveRecord>& legalMoves,
                                     const ActionTensorSpec& spec) {
    if (legalMoves.empty()) throw DataError("alias_groups: empty legal move list");
    std::map<PolicyIndex, std::vector<MoveRecord>> byIndex;
    for (const MoveRecord& m : legalMoves)
        byIndex[move_to_policy_index(m, spec)].push_back(m);
    std::vector<AliasGroup> groups;
    groups.reserve(byIndex.size());
    for (auto& [idx, moves] : byIndex) groups.push_back(AliasGroup{idx, std::move(moves)});
    return groups;
}

Tensor policy_target_from_visits(const std::map<MoveRecord, int>& visitCounts,
                                 const ActionTensorSpec& spec) {
    Tensor t({spec.channelCount(), spec.rows, spec.cols});
    long long total = 0;
    for (const auto& [move, count] : visitCounts) {
        if (count < 0) throw DataError("negative visit count");
        total += count;
        PolicyIndex idx = move_to_policy_index(move, spec);
        t.at3(idx.channel, idx.row, idx.col) += static_cast<double>(count);
    }
    if (total <= 0) throw DataError("policy target requires positive total visits");
    for (double& v : t.data) v /= static_cast<double>(total);
    return t;
}

}  // namespace gx
