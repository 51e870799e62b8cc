#pragma once

#include <optional>
#include <random>
#include <vector>

#include "gx/codec.hpp"
#include "gx/game.hpp"
#include "gx/net.hpp"

namespace gx {

struct SearchConfig {
    int iterations = 400;
    double cPuct = 1.5;
    std::optional<double> rootDirichletAlpha = 0.3;  // nullopt disables root noise
    double rootNoiseWeight = 0.25;
    int temperatureMoves = 8;  // sample proportionally for the first k plies

    void validate() const;
    SearchConfig withoutNoise() const {
        SearchConfig c = *this;
        c.rootDirichletAlpha.reset();
        return c;
    }
};

// Network-backed leaf evaluator: priors come from the masked aliased softmax
// over the policy logits, the value from the tanh head (to-move perspective).
struct NetEvaluator {
    const Network* net = nullptr;
    StateTensorSpec stateSpec;
    ActionTensorSpec actionSpec;

    static NetEvaluator for_game(const Network& net, const GameConfig& game);

    struct Evaluation {
        std::vector<double> priors;  // aligned with the alias-group list
        double value = 0.0;
    };
    Evaluation evaluate(const GameState& state,
                        const std::vector<AliasGroup>& groups) const;
};

struct GroupVisits {
    AliasGroup group;
    int visits = 0;
};

// PUCT search. Fresh tree per call; the returned per-group visit counts sum
// to cfg.iterations. Terminal leaves back up their true outcome, others the
// network value, sign-flipped each ply. Throws std::logic_error on a terminal
// root.
std::vector<GroupVisits> run_search(const GameState& root, const NetEvaluator& eval,
                                    const SearchConfig& cfg, std::mt19937_64& rng);

// Visit-proportional sampling for ply < temperatureMoves, then argmax with
// lowest-policy-index tie-break. A concrete move is drawn uniformly within
// the chosen alias group.
MoveRecord select_move(const std::vector<GroupVisits>& visitCounts, int ply,
                       int temperatureMoves, std::mt19937_64& rng);

}  // namespace gx
