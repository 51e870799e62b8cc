#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gx/geometry.hpp"

namespace gx {

enum class GameFamily { hex, lineGame, breakthrough };

enum class OutcomeStatus { ongoing, win, draw };

struct GameOutcome {
    OutcomeStatus status = OutcomeStatus::ongoing;
    PlayerId winner{};  // meaningful only when status == win

    static GameOutcome ongoing() { return {OutcomeStatus::ongoing, PlayerId{}}; }
    static GameOutcome win(PlayerId p) { return {OutcomeStatus::win, p}; }
    static GameOutcome draw() { return {OutcomeStatus::draw, PlayerId{}}; }
    bool terminal() const { return status != OutcomeStatus::ongoing; }
    bool operator==(const GameOutcome&) const = default;
};

struct GameConfig {
    GameFamily family = GameFamily::hex;
    BoardShape boardShape = BoardShape::square;
    int side = 5;
    bool misere = false;             // hex only
    int winLen = 0;                  // lineGame only
    std::optional<int> lossLen;      // lineGame only, must be < winLen
    bool diagonalOnly = false;       // lineGame only
    bool swapRule = false;           // placement games only

    Geometry geometry() const;
    bool placementGame() const { return family != GameFamily::breakthrough; }
    // Single piece type per player in all three families.
    std::string pieceTypeName() const {
        return family == GameFamily::breakthrough ? "pawn" : "stone";
    }
    void validate() const;
    bool operator==(const GameConfig&) const = default;
};

// Immutable position. apply_move returns a new value.
struct GameState {
    std::shared_ptr<const GameConfig> config;
    Geometry geo;                    // cached from config
    std::vector<uint8_t> boardOwner; // rows*cols, 0 empty / 1 / 2
    PlayerId toMove{1};
    bool swapped = false;
    std::vector<MoveRecord> moveHistory;  // most recent last, keeps last two
    int plyCount = 0;

    uint8_t ownerAt(Cell c) const { return boardOwner[static_cast<size_t>(c.row) * geo.cols + c.col]; }
    int pieceCount(PlayerId p) const;
};

GameState initial_state(const GameConfig& config);
GameState initial_state(std::shared_ptr<const GameConfig> config);

// Nonempty for ongoing states; throws std::logic_error on terminal states.
// Emits a lone pass only if the rules would otherwise yield no move (does not
// happen in the three families as configured).
std::vector<MoveRecord> legal_moves(const GameState& state);

// Throws std::invalid_argument with a diagnostic if the move is not legal.
GameState apply_move(const GameState& state, const MoveRecord& move);

GameOutcome outcome(const GameState& state);

}  // namespace gx
