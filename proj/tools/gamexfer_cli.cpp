// Experiment driver over the gamexfer C API.
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "gamexfer.h"

namespace {

constexpr size_t kErrCap = 1024;

struct ExperimentHandle {
    gx_experiment* ptr = nullptr;
    ~ExperimentHandle() { gx_experiment_free(ptr); }
};

int fail(gx_status status, const char* err) {
    std::fprintf(stderr, "error: %s\n", err[0] ? err : "unspecified");
    return static_cast<int>(status);
}

// Loads the config and applies the shared flag overrides.
gx_status load_experiment(const std::string& configPath, bool seedSet, uint64_t seed,
                          const std::string& outDir, int workers, ExperimentHandle& exp,
                          char* err) {
    gx_status st = gx_experiment_load(configPath.c_str(), &exp.ptr, err, kErrCap);
    if (st != GX_OK) return st;
    if (seedSet) gx_experiment_set_seed(exp.ptr, seed);
    if (!outDir.empty()) gx_experiment_set_out_dir(exp.ptr, outDir.c_str());
    if (workers > 0) gx_experiment_set_workers(exp.ptr, workers);
    return GX_OK;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Self-play training and cross-game transfer for board-game "
                 "policy-value networks"};
    app.require_subcommand(1);

    std::string configPath, outDir, mode = "zero-shot";
    std::string srcCheckpoint, checkpoint, agentA, agentB, resultsDir;
    uint64_t seed = 0;
    bool seedSet = false;
    int workers = 0, games = 0, iters = 0, itersOpponent = 0;
    bool reinitFinalLayers = false;

    auto addCommon = [&](CLI::App* cmd, bool needConfig) {
        if (needConfig)
            cmd->add_option("--config", configPath, "experiment config file (JSON)")
                ->required();
        cmd->add_option("--seed", seed, "master RNG seed")->each([&](const std::string&) {
            seedSet = true;
        });
        cmd->add_option("--out", outDir, "output directory override");
        cmd->add_option("--workers", workers, "worker threads");
    };

    CLI::App* train = app.add_subcommand("train", "train a network with self-play");
    addCommon(train, true);

    CLI::App* transfer =
        app.add_subcommand("transfer", "transplant a checkpoint onto a target game");
    transfer->add_option("checkpoint", srcCheckpoint, "source checkpoint")->required();
    transfer->add_option("--mode", mode, "zero-shot | finetune")
        ->check(CLI::IsMember({"zero-shot", "finetune"}));
    addCommon(transfer, true);

    CLI::App* finetune =
        app.add_subcommand("finetune", "continue training from a checkpoint");
    finetune->add_option("checkpoint", checkpoint, "starting checkpoint")->required();
    finetune->add_flag("--reinit-final-layers", reinitFinalLayers,
                       "re-randomize the final conv before each head first");
    addCommon(finetune, true);

    CLI::App* evalCmd = app.add_subcommand("eval", "head-to-head match");
    evalCmd->add_option("agentA", agentA, "checkpoint path or random|uct|untrained")
        ->required();
    evalCmd->add_option("agentB", agentB, "checkpoint path or random|uct|untrained")
        ->required();
    evalCmd->add_option("--games", games, "number of games (alternating seats)");
    evalCmd->add_option("--iters", iters, "search iterations for agent A");
    evalCmd->add_option("--iters-opponent", itersOpponent, "search iterations for agent B");
    addCommon(evalCmd, true);

    CLI::App* report = app.add_subcommand("report", "aggregate eval results into matrices");
    report->add_option("results", resultsDir, "directory holding eval outputs")->required();
    report->add_option("--out", outDir, "report output directory");

    CLI11_PARSE(app, argc, argv);

    char err[kErrCap] = {0};

    if (report->parsed()) {
        std::string out = outDir.empty() ? resultsDir : outDir;
        gx_status st = gx_report(resultsDir.c_str(), out.c_str(), err, kErrCap);
        if (st != GX_OK) return fail(st, err);
        std::printf("report written to %s/report.md\n", out.c_str());
        return 0;
    }

    ExperimentHandle exp;
    gx_status st = load_experiment(configPath, seedSet, seed, outDir, workers, exp, err);
    if (st != GX_OK) return fail(st, err);

    if (train->parsed()) {
        st = gx_train(exp.ptr, err, kErrCap);
        if (st != GX_OK) return fail(st, err);
        std::printf("training complete\n");
        return 0;
    }
    if (transfer->parsed()) {
        st = gx_transfer(srcCheckpoint.c_str(), exp.ptr, mode == "zero-shot" ? 1 : 0, err,
                         kErrCap);
        if (st != GX_OK) return fail(st, err);
        std::printf("transfer complete (mode %s)\n", mode.c_str());
        return 0;
    }
    if (finetune->parsed()) {
        st = gx_finetune(checkpoint.c_str(), exp.ptr, reinitFinalLayers ? 1 : 0, err, kErrCap);
        if (st != GX_OK) return fail(st, err);
        std::printf("fine-tuning complete\n");
        return 0;
    }
    if (evalCmd->parsed()) {
        gx_match_result* result = nullptr;
        st = gx_eval(agentA.c_str(), agentB.c_str(), exp.ptr, games, iters,
                     itersOpponent > 0 ? itersOpponent : iters, &result, err, kErrCap);
        if (st != GX_OK) return fail(st, err);
        int n = gx_match_games(result);
        int wa = gx_match_wins_a(result), wb = gx_match_wins_b(result);
        int dr = gx_match_draws(result);
        double pctA = n ? 100.0 * (wa + 0.5 * dr) / n : 0.0;
        std::printf("games=%d winsA=%d winsB=%d draws=%d winPctA=%.2f\n", n, wa, wb, dr,
                    pctA);
        gx_match_result_free(result);
        return 0;
    }
    return 0;
}
