#include "gx/mcts.hpp"

#include <cassert>
#include <cmath>
#include <memory>

#include "gx/errors.hpp"
#include "gx/rng.hpp"

namespace gx {

std::vector<double> dirichlet(double alpha, size_t n, std::mt19937_64& rng) {
    std::gamma_distribution<double> gamma(alpha, 1.0);
    std::vector<double> draws(n);
    double sum = 0.0;
    for (double& d : draws) {
        d = gamma(rng);
        sum += d;
    }
    if (sum <= 0.0) {
        for (double& d : draws) d = 1.0 / static_cast<double>(n);
        return draws;
    }
    for (double& d : draws) d /= sum;
    return draws;
}

void SearchConfig::validate() const {
    if (iterations < 1) throw ConfigError("search.iterations must be >= 1");
    if (rootNoiseWeight < 0.0 || rootNoiseWeight >= 1.0)
        throw ConfigError("search.rootNoiseWeight must be in [0,1)");
    if (rootDirichletAlpha && *rootDirichletAlpha <= 0.0)
        throw ConfigError("search.rootDirichletAlpha must be positive");
    if (temperatureMoves < 0) throw ConfigError("search.temperatureMoves must be >= 0");
}

NetEvaluator NetEvaluator::for_game(const Network& net, const GameConfig& game) {
    NetEvaluator e;
    e.net = &net;
    e.stateSpec = build_state_spec(game);
    e.actionSpec = build_action_spec(game);
    if (net.cfg.cState != e.stateSpec.channelCount() ||
        net.cfg.cAction != e.actionSpec.channelCount())
        throw DataError("network channels do not match this game's tensor specs");
    return e;
}

NetEvaluator::Evaluation NetEvaluator::evaluate(
    const GameState& state, const std::vector<AliasGroup>& groups) const {
    Tensor encoded = encode_state(state, stateSpec);
    Network::Out out = net->evaluate(encoded);
    std::vector<size_t> cells;
    cells.reserve(groups.size());
    for (const AliasGroup& g : groups)
        cells.push_back(g.index.flat(actionSpec.rows, actionSpec.cols));
    Evaluation ev;
    ev.priors = masked_softmax(out.logits, cells);
    ev.value = out.values[0];
    return ev;
}

namespace {

struct Node;

struct Edge {
    AliasGroup group;
    double prior = 0.0;
    int visits = 0;
    double valueSum = 0.0;
    std::unique_ptr<Node> child;
};

struct Node {
    GameState state;
    GameOutcome result;
    bool expanded = false;
    int visitCount = 0;
    std::vector<Edge> edges;

    explicit Node(GameState s) : state(std::move(s)), result(outcome(state)) {}
};

double terminal_value(const Node& node) {
    if (node.result.status == OutcomeStatus::draw) return 0.0;
    return node.result.winner == node.state.toMove ? 1.0 : -1.0;
}

// Priors from the evaluator; returns the leaf value.
double expand(Node& node, const NetEvaluator& eval) {
    std::vector<AliasGroup> groups = alias_groups(legal_moves(node.state), eval.actionSpec);
    NetEvaluator::Evaluation ev = eval.evaluate(node.state, groups);
    node.edges.reserve(groups.size());
    for (size_t i = 0; i < groups.size(); ++i)
        node.edges.push_back(Edge{std::move(groups[i]), ev.priors[i], 0, 0.0, nullptr});
    node.expanded = true;
    return ev.value;
}

Edge& select_edge(Node& node, double cPuct) {
    const double sqrtTotal = std::sqrt(static_cast<double>(node.visitCount - 1));
    Edge* best = nullptr;
    double bestScore = 0.0;
    for (Edge& e : node.edges) {
        const double q = e.visits > 0 ? e.valueSum / e.visits : 0.0;
        const double u = cPuct * e.prior * sqrtTotal / (1.0 + e.visits);
        const double score = q + u;
        if (!best || score > bestScore) {
            best = &e;
            bestScore = score;
        }
    }
    return *best;
}

}  // namespace

std::vector<GroupVisits> run_search(const GameState& rootState, const NetEvaluator& eval,
                                    const SearchConfig& cfg, std::mt19937_64& rng) {
    cfg.validate();
    if (outcome(rootState).terminal())
        throw std::logic_error("run_search called on a terminal root");

    Node root(rootState);
    root.visitCount = 1;
    expand(root, eval);
    if (cfg.rootDirichletAlpha) {
        std::vector<double> noise = dirichlet(*cfg.rootDirichletAlpha, root.edges.size(), rng);
        for (size_t i = 0; i < root.edges.size(); ++i)
            root.edges[i].prior = (1.0 - cfg.rootNoiseWeight) * root.edges[i].prior +
                                  cfg.rootNoiseWeight * noise[i];
    }

    for (int it = 0; it < cfg.iterations; ++it) {
        Node* node = &root;
        std::vector<Edge*> path;
        double value = 0.0;
        while (true) {
            node->visitCount += 1;
            if (node->result.terminal()) {
                value = terminal_value(*node);
                break;
            }
            if (!node->expanded) {
                value = expand(*node, eval);
                break;
            }
            Edge& e = select_edge(*node, cfg.cPuct);
            path.push_back(&e);
            if (!e.child)
                e.child = std::make_unique<Node>(
                    apply_move(node->state, e.group.moves.front()));
            node = e.child.get();
        }
        // value is from the leaf's to-move perspective; flip once per ply up.
        assert(value >= -1.0 && value <= 1.0);
        for (auto it2 = path.rbegin(); it2 != path.rend(); ++it2) {
            value = -value;
            (*it2)->visits += 1;
            (*it2)->valueSum += value;  // keeps Q = valueSum/visits in [-1,1]
        }
    }

    std::vector<GroupVisits> counts;
    counts.reserve(root.edges.size());
    for (const Edge& e : root.edges) counts.push_back(GroupVisits{e.group, e.visits});
    return counts;
}

MoveRecord select_move(const std::vector<GroupVisits>& visitCounts, int ply,
                       int temperatureMoves, std::mt19937_64& rng) {
    if (visitCounts.empty()) throw DataError("select_move: empty visit counts");
    int chosen = 0;
    if (ply < temperatureMoves) {
        std::vector<double> weights(visitCounts.size());
        for (size_t i = 0; i < visitCounts.size(); ++i)
            weights[i] = static_cast<double>(visitCounts[i].visits);
        chosen = sample_weighted(weights, rng);
    } else {
        for (size_t i = 1; i < visitCounts.size(); ++i)
            if (visitCounts[i].visits > visitCounts[chosen].visits)
                chosen = static_cast<int>(i);
    }
    const auto& moves = visitCounts[chosen].group.moves;
    if (moves.size() == 1) return moves.front();
    return moves[uniform_int(static_cast<int>(moves.size()), rng)];
}

}  // namespace gx
