#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gx/mcts.hpp"

namespace gx {

// A per-move policy; implementations are stateless between moves, all
// randomness flows through the caller's rng.
class Agent {
public:
    virtual ~Agent() = default;
    virtual MoveRecord choose(const GameState& state, std::mt19937_64& rng) const = 0;
};

// Uniform over legal moves.
class RandomAgent : public Agent {
public:
    MoveRecord choose(const GameState& state, std::mt19937_64& rng) const override;
};

// Plain UCT: UCB1 selection, uniform random playouts, most-visited move.
class UctAgent : public Agent {
public:
    explicit UctAgent(int iterations) : iterations_(iterations) {}
    MoveRecord choose(const GameState& state, std::mt19937_64& rng) const override;

private:
    int iterations_;
};

// Network-guided PUCT search; fresh tree per move.
class MctsNetAgent : public Agent {
public:
    MctsNetAgent(std::shared_ptr<const Network> net, const GameConfig& game,
                 SearchConfig cfg);
    MoveRecord choose(const GameState& state, std::mt19937_64& rng) const override;

private:
    std::shared_ptr<const Network> net_;
    NetEvaluator eval_;
    SearchConfig cfg_;
};

struct GameRecord {
    int index = 0;
    char firstSeat = 'A';  // who moved first (played Player 1)
    int winner = 0;        // 0 draw, 1 agent A, 2 agent B
    int plies = 0;
    uint64_t seed = 0;
};

struct MatchResult {
    int gamesPlayed = 0;
    int winsA = 0;
    int winsB = 0;
    int draws = 0;
    std::vector<GameRecord> records;

    // Draws count as half-wins so the two percentages sum to 100.
    double winPctA() const {
        return gamesPlayed ? 100.0 * (winsA + 0.5 * draws) / gamesPlayed : 0.0;
    }
    double winPctB() const {
        return gamesPlayed ? 100.0 * (winsB + 0.5 * draws) / gamesPlayed : 0.0;
    }
};

// Plays nGames with strictly alternating seats (even games: A first) and
// per-game seeds derived from masterSeed. Worker count never changes results.
MatchResult play_match(const GameConfig& game, const Agent& a, const Agent& b,
                       int nGames, uint64_t masterSeed, int workers);

}  // namespace gx
