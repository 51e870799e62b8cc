#pragma once

#include <cstdint>
#include <string>

#include "gx/checkpoint.hpp"
#include "gx/match.hpp"
#include "gx/selfplay.hpp"
#include "gx/serialize.hpp"
#include "gx/transfer.hpp"

namespace gx {

// One experiment per JSON file. Everything is defaulted at desk scale; the
// hyperparameters from large-scale runs (400/800 search iterations, 100k
// replay capacity, 9k warmup) remain reachable through the same fields.
struct ExperimentConfig {
    GameConfig game;
    int hiddenMultiplier = 2;
    int hiddenChannels = 0;  // overrides the multiplier when positive
    int blocks = 2;
    int layersPerBlock = 2;
    int valueChannels = 4;
    SearchConfig selfplay;    // noise on, desk default 100 iterations
    SearchConfig evalSearch;  // noise off, desk default 100 iterations
    TrainConfig training;
    uint64_t seed = 1;
    std::string outDir = "out";
    int workers = 1;
    int evalGames = 100;

    NetworkConfig networkConfig() const;
    static ExperimentConfig defaults();
};

// Strict parsing: unknown keys and wrong types are ConfigErrors naming the
// field; JSON syntax errors carry the line number.
ExperimentConfig experiment_from_json_text(const std::string& text);
ExperimentConfig load_experiment(const std::string& path);
Json experiment_to_json(const ExperimentConfig& cfg);

// train: runs the self-play training loop, writing
// <outDir>/checkpoint_epoch_NNNN.gmrf per epoch, <outDir>/checkpoint_final.gmrf,
// and <outDir>/train_log.jsonl (one JSON record per epoch).
void run_train(const ExperimentConfig& cfg);

struct TransferRun {
    std::string checkpointPath;
    std::string reportPath;
    StateChannelMapping stateMapping;
    ActionChannelMapping actionMapping;
};

// transfer: loads the source checkpoint, matches channels against the target
// game, transplants, and writes <outDir>/transferred.gmrf plus
// <outDir>/mapping_report.txt.
TransferRun run_transfer(const std::string& srcCheckpoint, const ExperimentConfig& target,
                         TransferInit mode);

// finetune: continues training from a checkpoint under the target config,
// optionally reinitializing the final pre-head convolutions first.
void run_finetune(const std::string& checkpoint, const ExperimentConfig& cfg,
                  bool reinitFinalLayers);

// Agent text: "random", "uct", "untrained", or a checkpoint path.
struct EvalRun {
    MatchResult match;
    std::string summaryPath;
    std::string gamesPath;
    std::string csvPath;
};

EvalRun run_eval(const std::string& agentA, const std::string& agentB,
                 const ExperimentConfig& cfg, int nGames, int itersA, int itersB);

// report: scans resultsDir for *.summary.json, cross-checks each against its
// per-game records, and writes win-percentage matrices (rows = sources,
// columns = targets, '-' on the diagonal) to <outDir>/report.md and one CSV
// per family.
void run_report(const std::string& resultsDir, const std::string& outDir);

std::string agent_label(const std::string& agentText);

}  // namespace gx
