#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gx/mcts.hpp"
#include "gx/net.hpp"

namespace gx {

struct TrainingExample {
    Tensor state;                    // (cState, H, W)
    Tensor policyTarget;             // (cAction, H, W), sums to 1
    std::vector<size_t> legalCells;  // flat logits index per legal alias group
    int z = 0;                       // outcome from the to-move player's view
};

// FIFO ring buffer; sampling is gated on the warmup threshold.
class ReplayBuffer {
public:
    ReplayBuffer(size_t capacity, size_t warmup);
    void push(TrainingExample ex);
    bool ready() const { return size() >= warmup_; }
    size_t size() const { return full_ ? ring_.size() : next_; }
    size_t capacity() const { return ring_.size(); }
    const TrainingExample& sample(std::mt19937_64& rng) const;
    const TrainingExample& at(size_t i) const;  // 0 = oldest retained

private:
    std::vector<TrainingExample> ring_;
    size_t warmup_ = 0;
    size_t next_ = 0;
    bool full_ = false;
};

struct EpisodeResult {
    std::vector<TrainingExample> examples;  // one per ply
    GameOutcome finalOutcome;
    int plies = 0;
};

EpisodeResult self_play_episode(const GameConfig& game, const NetEvaluator& eval,
                                const SearchConfig& cfg, std::mt19937_64& rng);

struct TrainConfig {
    int epochs = 5;
    int episodesPerEpoch = 20;
    int batchesPerEpoch = 64;
    int batchSize = 64;
    size_t replayCapacity = 20000;
    size_t replayWarmup = 1000;
    OptimizerConfig optimizer;
    int workers = 1;
    void validate() const;
};

struct EpochStats {
    int epoch = 0;
    size_t bufferSize = 0;
    double meanLoss = 0.0;
    bool trained = false;  // false while the buffer is below warmup
    int episodesPlayed = 0;
    long long stepsDone = 0;  // cumulative optimizer steps
};

using EpochCallback = std::function<void(const EpochStats&, const Network&)>;

// Alternates self-play generation into the replay buffer with batched
// optimizer steps; invokes the callback once per epoch (checkpointing and
// logging live there). Fully deterministic for a fixed seed: each episode
// draws from its own (seed, epoch, index)-derived stream and is inserted in
// index order, so worker count does not change the results.
void train_loop(const GameConfig& game, Network& net, const TrainConfig& tc,
                const SearchConfig& selfplayCfg, uint64_t seed, const EpochCallback& cb);

// One batched gradient step on examples sampled from the buffer; returns the
// mean batch loss.
double training_step(Network& net, SgdOptimizer& opt, const OptimizerConfig& optCfg,
                     const ReplayBuffer& buffer, int batchSize, std::mt19937_64& rng);

}  // namespace gx
