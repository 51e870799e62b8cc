// Exercises the shared-library surface the way an external consumer would:
// only gamexfer.h, opaque handles, and status codes.
#include <cassert>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>

#include "gamexfer.h"

namespace fs = std::filesystem;

static int failures = 0;

#define EXPECT(cond)                                                    \
    do {                                                                \
        if (!(cond)) {                                                  \
            std::fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                 \
        }                                                               \
    } while (0)

static const char* kTinyConfig = R"({
  "game": {"family": "line", "board": "square", "side": 3, "winLen": 3},
  "network": {"hiddenChannels": 4, "blocks": 1, "layersPerBlock": 1, "valueChannels": 2},
  "selfplay": {"iterations": 12, "temperatureMoves": 4},
  "evalSearch": {"iterations": 12},
  "training": {"epochs": 1, "episodesPerEpoch": 4, "batchesPerEpoch": 4,
               "batchSize": 8, "replayCapacity": 512, "replayWarmup": 16},
  "seed": 11
})";

int main() {
    char err[512] = {0};
    fs::path work = fs::temp_directory_path() / "gx_capi_test";
    fs::remove_all(work);
    fs::create_directories(work);

    EXPECT(std::strlen(gx_version()) > 0);

    // config handling
    gx_experiment* exp = nullptr;
    EXPECT(gx_experiment_from_json("{nope", &exp, err, sizeof err) == GX_ERR_CONFIG);
    EXPECT(err[0] != '\0');
    EXPECT(exp == nullptr);
    EXPECT(gx_experiment_from_json(R"({"bogus": 1})", &exp, err, sizeof err) ==
           GX_ERR_CONFIG);
    EXPECT(gx_experiment_load((work / "missing.json").string().c_str(), &exp, err,
                              sizeof err) == GX_ERR_CONFIG);

    EXPECT(gx_experiment_from_json(kTinyConfig, &exp, err, sizeof err) == GX_OK);
    EXPECT(exp != nullptr);
    EXPECT(gx_experiment_set_seed(exp, 11) == GX_OK);
    EXPECT(gx_experiment_set_workers(exp, 2) == GX_OK);
    EXPECT(gx_experiment_set_workers(exp, 0) == GX_ERR_CONFIG);
    std::string trainDir = (work / "train").string();
    EXPECT(gx_experiment_set_out_dir(exp, trainDir.c_str()) == GX_OK);

    // train writes checkpoints
    EXPECT(gx_train(exp, err, sizeof err) == GX_OK);
    std::string finalCkpt = trainDir + "/checkpoint_final.gmrf";
    EXPECT(fs::exists(finalCkpt));

    // checkpoint handles
    gx_network* net = nullptr;
    EXPECT(gx_network_load("/no/such/file.gmrf", &net, err, sizeof err) == GX_ERR_DATA);
    EXPECT(gx_network_load(finalCkpt.c_str(), &net, err, sizeof err) == GX_OK);
    EXPECT(gx_network_param_count(net) > 0);
    std::string copyPath = (work / "copy.gmrf").string();
    EXPECT(gx_network_save(net, copyPath.c_str(), err, sizeof err) == GX_OK);
    gx_network* copy = nullptr;
    EXPECT(gx_network_load(copyPath.c_str(), &copy, err, sizeof err) == GX_OK);
    EXPECT(gx_network_param_count(copy) == gx_network_param_count(net));
    gx_network_free(copy);
    gx_network_free(net);

    // transfer onto a swap-rule variant, then fine-tune from it
    gx_experiment* target = nullptr;
    std::string targetJson = R"({
      "game": {"family": "line", "board": "square", "side": 4, "winLen": 3, "swapRule": true},
      "network": {"hiddenChannels": 4, "blocks": 1, "layersPerBlock": 1, "valueChannels": 2},
      "selfplay": {"iterations": 12, "temperatureMoves": 4},
      "training": {"epochs": 1, "episodesPerEpoch": 2, "batchesPerEpoch": 2,
                   "batchSize": 8, "replayCapacity": 256, "replayWarmup": 8},
      "seed": 12
    })";
    EXPECT(gx_experiment_from_json(targetJson.c_str(), &target, err, sizeof err) == GX_OK);
    std::string transferDir = (work / "transfer").string();
    gx_experiment_set_out_dir(target, transferDir.c_str());
    EXPECT(gx_transfer(finalCkpt.c_str(), target, 1, err, sizeof err) == GX_OK);
    EXPECT(fs::exists(transferDir + "/transferred.gmrf"));
    EXPECT(fs::exists(transferDir + "/mapping_report.txt"));

    std::string ftDir = (work / "ft").string();
    gx_experiment_set_out_dir(target, ftDir.c_str());
    EXPECT(gx_finetune((transferDir + "/transferred.gmrf").c_str(), target, 1, err,
                       sizeof err) == GX_OK);
    EXPECT(fs::exists(ftDir + "/checkpoint_final.gmrf"));

    // corrupt checkpoint: data error
    {
        FILE* f = std::fopen((work / "bad.gmrf").string().c_str(), "wb");
        std::fputs("XXXX", f);
        std::fclose(f);
        gx_network* badNet = nullptr;
        EXPECT(gx_network_load((work / "bad.gmrf").string().c_str(), &badNet, err,
                               sizeof err) == GX_ERR_DATA);
        EXPECT(std::strstr(err, "magic") != nullptr);
    }

    // eval + accessors; 0 games falls back to configured evalGames
    std::string evalDir = (work / "eval").string();
    gx_experiment_set_out_dir(exp, evalDir.c_str());
    gx_match_result* result = nullptr;
    EXPECT(gx_eval("random", "random", exp, 20, 8, 8, &result, err, sizeof err) == GX_OK);
    EXPECT(gx_match_games(result) == 20);
    EXPECT(gx_match_wins_a(result) + gx_match_wins_b(result) + gx_match_draws(result) == 20);
    gx_match_result_free(result);

    // unknown agent text is a data error (not a crash)
    EXPECT(gx_eval("no/such/agent.gmrf", "random", exp, 2, 8, 8, nullptr, err,
                   sizeof err) == GX_ERR_DATA);

    // report over the eval outputs
    EXPECT(gx_report(evalDir.c_str(), (work / "report").string().c_str(), err,
                     sizeof err) == GX_OK);
    EXPECT(fs::exists(work / "report" / "report.md"));
    EXPECT(gx_report((work / "nowhere").string().c_str(), evalDir.c_str(), err,
                     sizeof err) == GX_ERR_DATA);

    gx_experiment_free(target);
    gx_experiment_free(exp);

    if (failures == 0) {
        std::printf("capi_tests: all checks passed\n");
        return 0;
    }
    std::fprintf(stderr, "capi_tests: %d failures\n", failures);
    return 1;
}
