#include "gx/selfplay.hpp"

#include <atomic>
#include <map>
#include <thread>

#include "gx/errors.hpp"
#include "gx/rng.hpp"

namespace gx {

ReplayBuffer::ReplayBuffer(size_t capacity, size_t warmup) : warmup_(warmup) {
    if (capacity == 0) throw ConfigError("replay capacity must be positive");
    if (warmup > capacity) throw ConfigError("replay warmup cannot exceed capacity");
    ring_.reserve(capacity);
    ring_.resize(capacity);
}

void ReplayBuffer::push(TrainingExample ex) {
    ring_[next_] = std::move(ex);
    next_ += 1;
    if (next_ == ring_.size()) {
        next_ = 0;
        full_ = true;
    }
}

const TrainingExample& ReplayBuffer::sample(std::mt19937_64& rng) const {
    if (!ready()) throw DataError("replay buffer sampled before warmup");
    return at(static_cast<size_t>(uniform_int(static_cast<int>(size()), rng)));
}

const TrainingExample& ReplayBuffer::at(size_t i) const {
    if (i >= size()) throw DataError("replay buffer index out of range");
    size_t idx = full_ ? (next_ + i) % ring_.size() : i;
    return ring_[idx];
}

EpisodeResult self_play_episode(const GameConfig& game, const NetEvaluator& eval,
                                const SearchConfig& cfg, std::mt19937_64& rng) {
    EpisodeResult result;
    GameState state = initial_state(game);
    std::vector<PlayerId> toMoveAt;
    while (!outcome(state).terminal()) {
        std::vector<GroupVisits> counts = run_search(state, eval, cfg, rng);
        std::map<MoveRecord, int> visits;
        for (const GroupVisits& gv : counts)
            visits[gv.group.moves.front()] += gv.visits;

        TrainingExample ex;
        ex.state = encode_state(state, eval.stateSpec);
        ex.policyTarget = policy_target_from_visits(visits, eval.actionSpec);
        ex.legalCells.reserve(counts.size());
        for (const GroupVisits& gv : counts)
            ex.legalCells.push_back(gv.group.index.flat(eval.actionSpec.rows,
                                                        eval.actionSpec.cols));
        result.examples.push_back(std::move(ex));
        toMoveAt.push_back(state.toMove);

        MoveRecord move = select_move(counts, state.plyCount, cfg.temperatureMoves, rng);
        state = apply_move(state, move);
    }
    result.finalOutcome = outcome(state);
    result.plies = state.plyCount;
    for (size_t i = 0; i < result.examples.size(); ++i) {
        if (result.finalOutcome.status == OutcomeStatus::draw)
            result.examples[i].z = 0;
        else
            result.examples[i].z = (result.finalOutcome.winner == toMoveAt[i]) ? 1 : -1;
    }
    return result;
}

void TrainConfig::validate() const {
    if (epochs < 0 || episodesPerEpoch < 0 || batchesPerEpoch < 1 || batchSize < 1)
        throw ConfigError("training schedule fields must be positive");
    if (workers < 1) throw ConfigError("workers must be >= 1");
}

double training_step(Network& net, SgdOptimizer& opt, const OptimizerConfig& optCfg,
                     const ReplayBuffer& buffer, int batchSize, std::mt19937_64& rng) {
    const TrainingExample& first = buffer.at(0);
    const int C = first.state.dim(0), H = first.state.dim(1), W = first.state.dim(2);
    const int N = batchSize;

    std::vector<const TrainingExample*> batch(N);
    for (int n = 0; n < N; ++n) batch[n] = &buffer.sample(rng);

    Tensor states({N, C, H, W});
    const size_t stateLen = static_cast<size_t>(C) * H * W;
    for (int n = 0; n < N; ++n)
        std::copy(batch[n]->state.data.begin(), batch[n]->state.data.end(),
                  states.data.begin() + n * stateLen);

    ForwardCache cache;
    Network::Out out = net.forward(states, NetMode::train, &cache);
    const size_t logitLen = out.logits.numel() / N;

    Tensor dLogits(out.logits.shape);
    std::vector<double> dValues(N);
    double lossSum = 0.0;
    for (int n = 0; n < N; ++n) {
        const TrainingExample& ex = *batch[n];
        Tensor logits({static_cast<int>(logitLen)});
        std::copy_n(out.logits.data.begin() + n * logitLen, logitLen, logits.data.begin());
        LossTerms terms = loss_terms(logits, out.values[n], ex.policyTarget,
                                     static_cast<double>(ex.z), ex.legalCells);
        lossSum += terms.total();
        std::vector<double> probs = masked_softmax(logits, ex.legalCells);
        for (size_t gi = 0; gi < ex.legalCells.size(); ++gi) {
            const size_t cell = ex.legalCells[gi];
            dLogits.data[n * logitLen + cell] =
                (probs[gi] - ex.policyTarget[cell]) / static_cast<double>(N);
        }
        dValues[n] = 2.0 * (out.values[n] - static_cast<double>(ex.z)) / static_cast<double>(N);
    }

    net.zeroGrads();
    net.backward(cache, dLogits, dValues);
    opt.step(net, optCfg);
    return lossSum / static_cast<double>(N);
}

namespace {

std::vector<EpisodeResult> generate_episodes(const GameConfig& game, const Network& net,
                                             const SearchConfig& cfg, int count,
                                             uint64_t seed, int epoch, int workers) {
    std::vector<EpisodeResult> results(count);
    if (count == 0) return results;
    NetEvaluator eval = NetEvaluator::for_game(net, game);
    std::atomic<int> nextIndex{0};
    auto work = [&]() {
        while (true) {
            int i = nextIndex.fetch_add(1);
            if (i >= count) break;
            std::mt19937_64 rng(mix_seed(seed, 0xEBu, mix_seed(epoch, i)));
            results[i] = self_play_episode(game, eval, cfg, rng);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < workers; ++t) threads.emplace_back(work);
        for (auto& t : threads) t.join();
    }
    return results;
}

}  // namespace

void train_loop(const GameConfig& game, Network& net, const TrainConfig& tc,
                const SearchConfig& selfplayCfg, uint64_t seed, const EpochCallback& cb) {
    tc.validate();
    selfplayCfg.validate();
    ReplayBuffer buffer(tc.replayCapacity, tc.replayWarmup);
    SgdOptimizer opt;
    std::mt19937_64 trainRng(mix_seed(seed, 0x7EAu));
    long long stepsDone = 0;

    for (int epoch = 0; epoch < tc.epochs; ++epoch) {
        std::vector<EpisodeResult> episodes = generate_episodes(
            game, net, selfplayCfg, tc.episodesPerEpoch, seed, epoch, tc.workers);
        for (EpisodeResult& ep : episodes)
            for (TrainingExample& ex : ep.examples) buffer.push(std::move(ex));

        EpochStats stats;
        stats.epoch = epoch;
        stats.bufferSize = buffer.size();
        stats.episodesPlayed = tc.episodesPerEpoch;
        if (buffer.ready()) {
            double lossSum = 0.0;
            for (int b = 0; b < tc.batchesPerEpoch; ++b)
                lossSum += training_step(net, opt, tc.optimizer, buffer, tc.batchSize,
                                         trainRng);
            stats.meanLoss = lossSum / tc.batchesPerEpoch;
            stats.trained = true;
            stepsDone += tc.batchesPerEpoch;
        }
        stats.stepsDone = stepsDone;
        if (cb) cb(stats, net);
    }
}

}  // namespace gx
