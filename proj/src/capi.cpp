#include "gamexfer.h"

#include <cstring>
#include <new>
#include <string>

#include "gx/errors.hpp"
#include "gx/experiment.hpp"

struct gx_experiment {
    gx::ExperimentConfig cfg;
};

struct gx_network {
    gx::LoadedCheckpoint checkpoint;
};

struct gx_match_result {
    gx::MatchResult result;
};

namespace {

void put_error(char* errbuf, size_t errcap, const std::string& msg) {
    if (!errbuf || errcap == 0) return;
    size_t n = std::min(msg.size(), errcap - 1);
    std::memcpy(errbuf, msg.data(), n);
    errbuf[n] = '\0';
}

// Runs fn, translating exceptions into status codes + error text.
template <typename Fn>
gx_status guarded(char* errbuf, size_t errcap, Fn&& fn) {
    try {
        fn();
        return GX_OK;
    } catch (const gx::ConfigError& e) {
        put_error(errbuf, errcap, e.what());
        return GX_ERR_CONFIG;
    } catch (const gx::DataError& e) {
        put_error(errbuf, errcap, e.what());
        return GX_ERR_DATA;
    } catch (const std::invalid_argument& e) {
        put_error(errbuf, errcap, e.what());
        return GX_ERR_CONFIG;
    } catch (const std::exception& e) {
        put_error(errbuf, errcap, e.what());
        return GX_ERR_RUNTIME;
    } catch (...) {
        put_error(errbuf, errcap, "unknown error");
        return GX_ERR_RUNTIME;
    }
}

}  // namespace

extern "C" {

const char* gx_version(void) { return "gamexfer 1.0.0"; }

gx_status gx_experiment_load(const char* path, gx_experiment** out, char* errbuf,
                             size_t errcap) {
    if (!path || !out) {
        put_error(errbuf, errcap, "null argument");
        return GX_ERR_CONFIG;
    }
    *out = nullptr;
    return guarded(errbuf, errcap, [&] {
        auto* handle = new gx_experiment{gx::load_experiment(path)};
        *out = handle;
    });
}

gx_status gx_experiment_from_json(const char* json_text, gx_experiment** out,
                                  char* errbuf, size_t errcap) {
    if (!json_text || !out) {
        put_error(errbuf, errcap, "null argument");
        return GX_ERR_CONFIG;
    }
    *out = nullptr;
    return guarded(errbuf, errcap, [&] {
        auto* handle = new gx_experiment{gx::experiment_from_json_text(json_text)};
        *out = handle;
    });
}

void gx_experiment_free(gx_experiment* exp) { delete exp; }

gx_status gx_experiment_set_seed(gx_experiment* exp, uint64_t seed) {
    if (!exp) return GX_ERR_CONFIG;
    exp->cfg.seed = seed;
    return GX_OK;
}

gx_status gx_experiment_set_out_dir(gx_experiment* exp, const char* dir) {
    if (!exp || !dir) return GX_ERR_CONFIG;
    exp->cfg.outDir = dir;
    return GX_OK;
}

gx_status gx_experiment_set_workers(gx_experiment* exp, int workers) {
    if (!exp || workers < 1) return GX_ERR_CONFIG;
    exp->cfg.workers = workers;
    return GX_OK;
}

gx_status gx_train(const gx_experiment* exp, char* errbuf, size_t errcap) {
    if (!exp) {
        put_error(errbuf, errcap, "null experiment");
        return GX_ERR_CONFIG;
    }
    return guarded(errbuf, errcap, [&] { gx::run_train(exp->cfg); });
}

gx_status gx_transfer(const char* src_checkpoint, const gx_experiment* target,
                      int zero_shot, char* errbuf, size_t errcap) {
    if (!src_checkpoint || !target) {
        put_error(errbuf, errcap, "null argument");
        return GX_ERR_CONFIG;
    }
    return guarded(errbuf, errcap, [&] {
        gx::run_transfer(src_checkpoint, target->cfg,
                         zero_shot ? gx::TransferInit::zeroShot
                                   : gx::TransferInit::finetuneInit);
    });
}

gx_status gx_finetune(const char* checkpoint, const gx_experiment* exp,
                      int reinit_final_layers, char* errbuf, size_t errcap) {
    if (!checkpoint || !exp) {
        put_error(errbuf, errcap, "null argument");
        return GX_ERR_CONFIG;
    }
    return guarded(errbuf, errcap,
                   [&] { gx::run_finetune(checkpoint, exp->cfg, reinit_final_layers != 0); });
}

gx_status gx_network_load(const char* path, gx_network** out, char* errbuf,
                          size_t errcap) {
    if (!path || !out) {
        put_error(errbuf, errcap, "null argument");
        return GX_ERR_CONFIG;
    }
    *out = nullptr;
    return guarded(errbuf, errcap, [&] {
        auto* handle = new gx_network{gx::load_checkpoint(path)};
        *out = handle;
    });
}

void gx_network_free(gx_network* net) { delete net; }

gx_status gx_network_save(const gx_network* net, const char* path, char* errbuf,
                          size_t errcap) {
    if (!net || !path) {
        put_error(errbuf, errcap, "null argument");
        return GX_ERR_CONFIG;
    }
    return guarded(errbuf, errcap,
                   [&] { gx::save_checkpoint(net->checkpoint.net, net->checkpoint.meta, path); });
}

long long gx_network_param_count(const gx_network* net) {
    return net ? net->checkpoint.net.paramCount() : 0;
}

gx_status gx_eval(const char* agent_a, const char* agent_b, const gx_experiment* exp,
                  int n_games, int iters_a, int iters_b, gx_match_result** out,
                  char* errbuf, size_t errcap) {
    if (!agent_a || !agent_b || !exp) {
        put_error(errbuf, errcap, "null argument");
        return GX_ERR_CONFIG;
    }
    if (out) *out = nullptr;
    return guarded(errbuf, errcap, [&] {
        int games = n_games > 0 ? n_games : exp->cfg.evalGames;
        int ia = iters_a > 0 ? iters_a : exp->cfg.evalSearch.iterations;
        int ib = iters_b > 0 ? iters_b : exp->cfg.evalSearch.iterations;
        gx::EvalRun run = gx::run_eval(agent_a, agent_b, exp->cfg, games, ia, ib);
        if (out) *out = new gx_match_result{std::move(run.match)};
    });
}

int gx_match_games(const gx_match_result* r) { return r ? r->result.gamesPlayed : 0; }
int gx_match_wins_a(const gx_match_result* r) { return r ? r->result.winsA : 0; }
int gx_match_wins_b(const gx_match_result* r) { return r ? r->result.winsB : 0; }
int gx_match_draws(const gx_match_result* r) { return r ? r->result.draws : 0; }
void gx_match_result_free(gx_match_result* r) { delete r; }

gx_status gx_report(const char* results_dir, const char* out_dir, char* errbuf,
                    size_t errcap) {
    if (!results_dir || !out_dir) {
        put_error(errbuf, errcap, "null argument");
        return GX_ERR_CONFIG;
    }
    return guarded(errbuf, errcap, [&] { gx::run_report(results_dir, out_dir); });
}

}  // extern "C"
