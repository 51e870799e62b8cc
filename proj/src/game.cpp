#include "gx/game.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "gx/errors.hpp"

namespace gx {

Geometry GameConfig::geometry() const {
    switch (family) {
        case GameFamily::hex:
            // Rhombus board: square grid dims, 6-neighbor axial adjacency.
            return make_geometry(BoardShape::square, side, Adjacency::hexAxial);
        case GameFamily::lineGame:
            return make_geometry(boardShape, side);
        case GameFamily::breakthrough:
            return make_geometry(BoardShape::square, side);
    }
    throw ConfigError("unknown game family");
}

void GameConfig::validate() const {
    if (side < 1) throw ConfigError("game.side must be >= 1");
    switch (family) {
        case GameFamily::hex:
            if (boardShape != BoardShape::square)
                throw ConfigError("hex requires a square (rhombus) board");
            break;
        case GameFamily::lineGame:
            if (winLen < 2) throw ConfigError("lineGame.winLen must be >= 2");
            if (lossLen && (*lossLen < 2 || *lossLen >= winLen))
                throw ConfigError("lineGame.lossLen must satisfy 2 <= lossLen < winLen");
            if (misere) throw ConfigError("misere applies to hex only");
            break;
        case GameFamily::breakthrough:
            if (boardShape != BoardShape::square || side < 4)
                throw ConfigError("breakthrough requires a square board with side >= 4");
            if (misere) throw ConfigError("misere applies to hex only");
            if (swapRule) throw ConfigError("swapRule applies to placement games only");
            break;
    }
}

int GameState::pieceCount(PlayerId p) const {
    return static_cast<int>(std::count(boardOwner.begin(), boardOwner.end(),
                                       static_cast<uint8_t>(p.id)));
}

GameState initial_state(const GameConfig& config) {
    return initial_state(std::make_shared<const GameConfig>(config));
}

GameState initial_state(std::shared_ptr<const GameConfig> config) {
    config->validate();
    GameState s;
    s.config = std::move(config);
    s.geo = s.config->geometry();
    s.boardOwner.assign(static_cast<size_t>(s.geo.rows) * s.geo.cols, 0);
    s.toMove = PlayerId(1);
    if (s.config->family == GameFamily::breakthrough) {
        int n = s.geo.cols;
        // Two back ranks per player, capped so at least one empty row
        // separates the armies (one rank on a 4x4 board).
        int ranks = std::min(2, (s.config->side - 1) / 2);
        for (int r = 0; r < ranks; ++r) {
            for (int c = 0; c < n; ++c) {
                s.boardOwner[static_cast<size_t>(r) * n + c] = 1;
                s.boardOwner[static_cast<size_t>(s.geo.rows - 1 - r) * n + c] = 2;
            }
        }
    }
    return s;
}

namespace {

// Maximal run of `player` stones through `cell` along +-dir.
int run_length(const GameState& s, Cell cell, Direction dir, uint8_t player) {
    int len = 1;
    for (int sign : {1, -1}) {
        Cell c{cell.row + sign * dir.dRow, cell.col + sign * dir.dCol};
        while (s.geo.playable(c) && s.ownerAt(c) == player) {
            ++len;
            c.row += sign * dir.dRow;
            c.col += sign * dir.dCol;
        }
    }
    return len;
}

bool board_full(const GameState& s) {
    for (int r = 0; r < s.geo.rows; ++r)
        for (int c = 0; c < s.geo.cols; ++c)
            if (s.geo.playable({r, c}) && s.ownerAt({r, c}) == 0) return false;
    return true;
}

// Hex connectivity: player 1 connects row 0 to the last row, player 2
// connects column 0 to the last column.
bool hex_connected(const GameState& s, PlayerId p) {
    const Geometry& g = s.geo;
    std::vector<uint8_t> seen(static_cast<size_t>(g.rows) * g.cols, 0);
    std::vector<Cell> stack;
    for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < g.cols; ++c) {
            bool startEdge = (p.id == 1) ? (r == 0) : (c == 0);
            Cell cell{r, c};
            if (startEdge && s.ownerAt(cell) == p.id) {
                stack.push_back(cell);
                seen[g.cellIndex(cell)] = 1;
            }
        }
    }
    while (!stack.empty()) {
        Cell cur = stack.back();
        stack.pop_back();
        bool endEdge = (p.id == 1) ? (cur.row == g.rows - 1) : (cur.col == g.cols - 1);
        if (endEdge) return true;
        for (const Cell& nb : neighbors(g, cur)) {
            if (s.ownerAt(nb) == p.id && !seen[g.cellIndex(nb)]) {
                seen[g.cellIndex(nb)] = 1;
                stack.push_back(nb);
            }
        }
    }
    return false;
}

GameOutcome line_game_outcome(const GameState& s) {
    const GameConfig& cfg = *s.config;
    if (!s.moveHistory.empty()) {
        const MoveRecord& last = s.moveHistory.back();
        if (last.kind == MoveKind::placement) {
            uint8_t mover = static_cast<uint8_t>(last.player.id);
            auto dirs = line_directions(s.geo, cfg.diagonalOnly);
            int maxRun = 0;
            bool lossRun = false;
            for (const Direction& d : dirs) {
                int run = run_length(s, last.to, d, mover);
                maxRun = std::max(maxRun, run);
                if (cfg.lossLen && run == *cfg.lossLen) lossRun = true;
            }
            if (maxRun >= cfg.winLen) return GameOutcome::win(last.player);
            if (lossRun) return GameOutcome::win(last.player.opponent());
        }
    }
    if (board_full(s)) return GameOutcome::draw();
    return GameOutcome::ongoing();
}

GameOutcome breakthrough_outcome(const GameState& s) {
    int lastRow = s.geo.rows - 1;
    for (int c = 0; c < s.geo.cols; ++c) {
        if (s.ownerAt({lastRow, c}) == 1) return GameOutcome::win(PlayerId(1));
        if (s.ownerAt({0, c}) == 2) return GameOutcome::win(PlayerId(2));
    }
    if (s.pieceCount(PlayerId(2)) == 0) return GameOutcome::win(PlayerId(1));
    if (s.pieceCount(PlayerId(1)) == 0) return GameOutcome::win(PlayerId(2));
    return GameOutcome::ongoing();
}

}  // namespace

GameOutcome outcome(const GameState& state) {
    switch (state.config->family) {
        case GameFamily::hex: {
            for (int pid : {1, 2}) {
                if (hex_connected(state, PlayerId(pid))) {
                    PlayerId connector(pid);
                    return GameOutcome::win(state.config->misere ? connector.opponent()
                                                                 : connector);
                }
            }
            if (board_full(state)) return GameOutcome::draw();  // unreachable for hex
            return GameOutcome::ongoing();
        }
        case GameFamily::lineGame:
            return line_game_outcome(state);
        case GameFamily::breakthrough:
            return breakthrough_outcome(state);
    }
    throw ConfigError("unknown game family");
}

std::vector<MoveRecord> legal_moves(const GameState& state) {
    if (outcome(state).terminal())
        throw std::logic_error("legal_moves called on a terminal state");
    std::vector<MoveRecord> moves;
    const Geometry& g = state.geo;
    if (state.config->placementGame()) {
        moves.reserve(g.playableCount());
        for (int r = 0; r < g.rows; ++r)
            for (int c = 0; c < g.cols; ++c)
                if (g.playable({r, c}) && state.ownerAt({r, c}) == 0)
                    moves.push_back(MoveRecord::placement({r, c}, state.toMove));
        if (state.config->swapRule && state.plyCount == 1 && !state.swapped)
            moves.push_back(MoveRecord::swap_move(state.toMove));
    } else {
        int dir = (state.toMove.id == 1) ? 1 : -1;
        uint8_t me = static_cast<uint8_t>(state.toMove.id);
        for (int r = 0; r < g.rows; ++r) {
            for (int c = 0; c < g.cols; ++c) {
                if (state.ownerAt({r, c}) != me) continue;
                for (int dc : {-1, 0, 1}) {
                    Cell to{r + dir, c + dc};
                    if (!g.inBounds(to)) continue;
                    uint8_t occ = state.ownerAt(to);
                    bool ok = (dc == 0) ? occ == 0 : occ != me;
                    if (ok) moves.push_back(MoveRecord::movement({r, c}, to, state.toMove));
                }
            }
        }
    }
    // None of the three families can run out of moves while ongoing; the pass
    // path exists only as a safety valve.
    assert(!moves.empty());
    if (moves.empty()) moves.push_back(MoveRecord::pass_move(state.toMove));
    return moves;
}

namespace {

[[noreturn]] void reject(const GameState& s, const MoveRecord& m, const char* why) {
    std::ostringstream os;
    os << "illegal move (" << why << "): kind="
       << (m.kind == MoveKind::placement  ? "placement"
           : m.kind == MoveKind::movement ? "movement"
           : m.kind == MoveKind::pass     ? "pass"
                                          : "swap")
       << " player=" << m.player.id << " ply=" << s.plyCount;
    if (m.hasFrom) os << " from=(" << m.from.row << "," << m.from.col << ")";
    if (m.hasTo) os << " to=(" << m.to.row << "," << m.to.col << ")";
    throw std::invalid_argument(os.str());
}

void check_legal(const GameState& s, const MoveRecord& m) {
    if (outcome(s).terminal()) reject(s, m, "game over");
    if (m.player != s.toMove) reject(s, m, "not this player's turn");
    switch (m.kind) {
        case MoveKind::placement:
            if (!s.config->placementGame()) reject(s, m, "placement in a movement game");
            if (!m.hasTo || m.hasFrom) reject(s, m, "placement needs `to` only");
            if (!s.geo.playable(m.to)) reject(s, m, "cell not playable");
            if (s.ownerAt(m.to) != 0) reject(s, m, "cell occupied");
            return;
        case MoveKind::swap_sides:
            if (!s.config->swapRule || s.plyCount != 1 || s.swapped)
                reject(s, m, "swap only as the second player's first response");
            return;
        case MoveKind::movement: {
            if (s.config->placementGame()) reject(s, m, "movement in a placement game");
            if (!m.hasFrom || !m.hasTo) reject(s, m, "movement needs `from` and `to`");
            if (!s.geo.playable(m.from) || !s.geo.playable(m.to)) reject(s, m, "off board");
            if (s.ownerAt(m.from) != s.toMove.id) reject(s, m, "no own piece on `from`");
            int dir = (s.toMove.id == 1) ? 1 : -1;
            int dr = m.to.row - m.from.row;
            int dc = m.to.col - m.from.col;
            if (dr != dir || dc < -1 || dc > 1) reject(s, m, "not a forward step");
            uint8_t occ = s.ownerAt(m.to);
            if (dc == 0 && occ != 0) reject(s, m, "straight step onto occupied cell");
            if (dc != 0 && occ == s.toMove.id) reject(s, m, "own piece on target");
            return;
        }
        case MoveKind::pass: {
            auto legal = legal_moves(s);
            if (legal.size() != 1 || legal[0].kind != MoveKind::pass)
                reject(s, m, "pass while other moves exist");
            return;
        }
    }
}

}  // namespace

GameState apply_move(const GameState& state, const MoveRecord& move) {
    check_legal(state, move);
    GameState next = state;
    switch (move.kind) {
        case MoveKind::placement:
            next.boardOwner[next.geo.cellIndex(move.to)] =
                static_cast<uint8_t>(move.player.id);
            break;
        case MoveKind::movement: {
            next.boardOwner[next.geo.cellIndex(move.from)] = 0;
            next.boardOwner[next.geo.cellIndex(move.to)] =
                static_cast<uint8_t>(move.player.id);
            break;
        }
        case MoveKind::swap_sides: {
            // Pie rule as recoloring: the single placed stone becomes the
            // mover's.
            for (auto& owner : next.boardOwner) {
                if (owner != 0) owner = static_cast<uint8_t>(move.player.id);
            }
            next.swapped = true;
            break;
        }
        case MoveKind::pass:
            break;
    }
    next.toMove = state.toMove.opponent();
    next.plyCount = state.plyCount + 1;
    next.moveHistory.push_back(move);
    if (next.moveHistory.size() > 2)
        next.moveHistory.erase(next.moveHistory.begin());
    assert(next.plyCount <= 4 * state.geo.side * state.geo.side + 1);
    return next;
}

}  // namespace gx
