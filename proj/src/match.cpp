#include "gx/match.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "gx/errors.hpp"
#include "gx/rng.hpp"

namespace gx {

MoveRecord RandomAgent::choose(const GameState& state, std::mt19937_64& rng) const {
    std::vector<MoveRecord> moves = legal_moves(state);
    return moves[uniform_int(static_cast<int>(moves.size()), rng)];
}

namespace {

// Uniformly random playout; result from `perspective`'s view in [0,1].
double random_playout(GameState state, PlayerId perspective, std::mt19937_64& rng) {
    GameOutcome result = outcome(state);
    while (!result.terminal()) {
        std::vector<MoveRecord> moves = legal_moves(state);
        state = apply_move(state, moves[uniform_int(static_cast<int>(moves.size()), rng)]);
        result = outcome(state);
    }
    if (result.status == OutcomeStatus::draw) return 0.5;
    return result.winner == perspective ? 1.0 : 0.0;
}

struct UctNode {
    GameState state;
    GameOutcome result;
    std::vector<MoveRecord> untried;
    std::vector<std::unique_ptr<UctNode>> children;
    std::vector<MoveRecord> childMoves;
    std::vector<int> childVisits;
    std::vector<double> childValue;  // sum of results from this node's view
    int visits = 0;

    explicit UctNode(GameState s) : state(std::move(s)), result(outcome(state)) {
        if (!result.terminal()) untried = legal_moves(state);
    }
};

}  // namespace

MoveRecord UctAgent::choose(const GameState& rootState, std::mt19937_64& rng) const {
    UctNode root(rootState);
    if (root.untried.size() == 1) return root.untried.front();
    const double c = std::sqrt(2.0);
    for (int it = 0; it < iterations_; ++it) {
        UctNode* node = &root;
        std::vector<std::pair<UctNode*, int>> path;  // (node, child slot taken)
        // selection
        while (node->untried.empty() && !node->result.terminal()) {
            int best = 0;
            double bestScore = -1.0;
            for (size_t i = 0; i < node->children.size(); ++i) {
                double mean = node->childValue[i] / node->childVisits[i];
                double score = mean + c * std::sqrt(std::log(static_cast<double>(node->visits)) /
                                                    node->childVisits[i]);
                if (score > bestScore) {
                    bestScore = score;
                    best = static_cast<int>(i);
                }
            }
            path.emplace_back(node, best);
            node = node->children[best].get();
        }
        // expansion
        if (!node->result.terminal() && !node->untried.empty()) {
            int pick = uniform_int(static_cast<int>(node->untried.size()), rng);
            MoveRecord move = node->untried[pick];
            node->untried.erase(node->untried.begin() + pick);
            node->children.push_back(std::make_unique<UctNode>(apply_move(node->state, move)));
            node->childMoves.push_back(move);
            node->childVisits.push_back(0);
            node->childValue.push_back(0.0);
            path.emplace_back(node, static_cast<int>(node->children.size()) - 1);
            node = node->children.back().get();
        }
        // simulation: result from the leaf's to-move player's view
        double leafValue;
        if (node->result.terminal()) {
            leafValue = node->result.status == OutcomeStatus::draw
                            ? 0.5
                            : (node->result.winner == node->state.toMove ? 1.0 : 0.0);
        } else {
            leafValue = random_playout(node->state, node->state.toMove, rng);
        }
        node->visits += 1;
        // backpropagation: each parent scores the child edge from its own view
        double v = leafValue;
        for (auto it2 = path.rbegin(); it2 != path.rend(); ++it2) {
            v = 1.0 - v;
            it2->first->visits += 1;
            it2->first->childVisits[it2->second] += 1;
            it2->first->childValue[it2->second] += v;
        }
    }
    if (root.childMoves.empty()) {
        // fewer iterations than moves; fall back to a random legal move
        std::vector<MoveRecord> moves = legal_moves(rootState);
        return moves[uniform_int(static_cast<int>(moves.size()), rng)];
    }
    int best = 0;
    for (size_t i = 1; i < root.childMoves.size(); ++i)
        if (root.childVisits[i] > root.childVisits[best]) best = static_cast<int>(i);
    return root.childMoves[best];
}

MctsNetAgent::MctsNetAgent(std::shared_ptr<const Network> net, const GameConfig& game,
                           SearchConfig cfg)
    : net_(std::move(net)), eval_(NetEvaluator::for_game(*net_, game)), cfg_(cfg) {}

MoveRecord MctsNetAgent::choose(const GameState& state, std::mt19937_64& rng) const {
    std::vector<GroupVisits> counts = run_search(state, eval_, cfg_, rng);
    return select_move(counts, state.plyCount, cfg_.temperatureMoves, rng);
}

MatchResult play_match(const GameConfig& game, const Agent& a, const Agent& b,
                       int nGames, uint64_t masterSeed, int workers) {
    game.validate();
    MatchResult result;
    result.records.resize(nGames);
    std::atomic<int> nextGame{0};
    auto playOne = [&](int i) {
        GameRecord rec;
        rec.index = i;
        rec.firstSeat = (i % 2 == 0) ? 'A' : 'B';
        rec.seed = mix_seed(masterSeed, 0xE7a1, i);
        std::mt19937_64 rngFirst(mix_seed(rec.seed, 1));
        std::mt19937_64 rngSecond(mix_seed(rec.seed, 2));
        const Agent& first = (rec.firstSeat == 'A') ? a : b;
        const Agent& second = (rec.firstSeat == 'A') ? b : a;
        GameState state = initial_state(game);
        GameOutcome out = outcome(state);
        while (!out.terminal()) {
            const bool firstToMove = (state.toMove.id == 1);
            const Agent& mover = firstToMove ? first : second;
            std::mt19937_64& rng = firstToMove ? rngFirst : rngSecond;
            state = apply_move(state, mover.choose(state, rng));
            out = outcome(state);
        }
        rec.plies = state.plyCount;
        if (out.status == OutcomeStatus::draw) {
            rec.winner = 0;
        } else {
            bool firstWon = (out.winner.id == 1);
            bool aWasFirst = (rec.firstSeat == 'A');
            rec.winner = (firstWon == aWasFirst) ? 1 : 2;
        }
        result.records[i] = rec;
    };
    auto work = [&]() {
        while (true) {
            int i = nextGame.fetch_add(1);
            if (i >= nGames) break;
            playOne(i);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < workers; ++t) threads.emplace_back(work);
        for (auto& t : threads) t.join();
    }
    result.gamesPlayed = nGames;
    for (const GameRecord& rec : result.records) {
        if (rec.winner == 1) result.winsA += 1;
        else if (rec.winner == 2) result.winsB += 1;
        else result.draws += 1;
    }
    return result;
}

}  // namespace gx
