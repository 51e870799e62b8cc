/* gamexfer C API: train, transfer, fine-tune, evaluate, and report on
 * board-game policy-value networks through opaque handles.
 *
 * Every function that can fail returns a gx_status and, when an error buffer
 * is supplied, writes a NUL-terminated message into it. Handles returned
 * through out-parameters are owned by the caller and released with the
 * matching _free function. */
#ifndef GAMEXFER_H
#define GAMEXFER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GX_API __declspec(dllexport)
#else
#define GX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gx_status {
    GX_OK = 0,
    GX_ERR_RUNTIME = 1, /* unexpected internal failure */
    GX_ERR_CONFIG = 2,  /* bad configuration or arguments */
    GX_ERR_DATA = 3     /* bad checkpoint / results data */
} gx_status;

typedef struct gx_experiment gx_experiment; /* parsed experiment config */
typedef struct gx_network gx_network;       /* loaded checkpoint */
typedef struct gx_match_result gx_match_result;

GX_API const char* gx_version(void);

/* -- experiment configs ---------------------------------------------- */

GX_API gx_status gx_experiment_load(const char* path, gx_experiment** out,
                                    char* errbuf, size_t errcap);
GX_API gx_status gx_experiment_from_json(const char* json_text, gx_experiment** out,
                                         char* errbuf, size_t errcap);
GX_API void gx_experiment_free(gx_experiment* exp);
GX_API gx_status gx_experiment_set_seed(gx_experiment* exp, uint64_t seed);
GX_API gx_status gx_experiment_set_out_dir(gx_experiment* exp, const char* dir);
GX_API gx_status gx_experiment_set_workers(gx_experiment* exp, int workers);

/* -- training / transfer --------------------------------------------- */

/* Runs the self-play training loop; writes per-epoch checkpoints, a final
 * checkpoint, and a JSONL training log into the experiment's out dir. */
GX_API gx_status gx_train(const gx_experiment* exp, char* errbuf, size_t errcap);

/* Transplants src_checkpoint onto the target experiment's game.
 * zero_shot != 0 zeroes unmatched parameter slices; otherwise they receive a
 * fresh trainable initialization. Writes transferred.gmrf and
 * mapping_report.txt into the target's out dir. */
GX_API gx_status gx_transfer(const char* src_checkpoint, const gx_experiment* target,
                             int zero_shot, char* errbuf, size_t errcap);

/* Continues training from a checkpoint under the given config; optionally
 * reinitializes the final convolution before each head first. */
GX_API gx_status gx_finetune(const char* checkpoint, const gx_experiment* exp,
                             int reinit_final_layers, char* errbuf, size_t errcap);

/* -- checkpoints ------------------------------------------------------ */

GX_API gx_status gx_network_load(const char* path, gx_network** out, char* errbuf,
                                 size_t errcap);
GX_API void gx_network_free(gx_network* net);
GX_API gx_status gx_network_save(const gx_network* net, const char* path, char* errbuf,
                                 size_t errcap);
GX_API long long gx_network_param_count(const gx_network* net);

/* -- evaluation / reporting ------------------------------------------ */

/* agent_a / agent_b: "random", "uct", "untrained", or a checkpoint path.
 * Plays n_games with alternating seats on the experiment's game and writes
 * per-game JSONL records, a JSON summary, and a CSV row into the out dir.
 * Passing 0 for n_games or an iteration count falls back to the experiment's
 * configured evalGames / eval search iterations. */
GX_API gx_status gx_eval(const char* agent_a, const char* agent_b,
                         const gx_experiment* exp, int n_games, int iters_a,
                         int iters_b, gx_match_result** out, char* errbuf,
                         size_t errcap);
GX_API int gx_match_games(const gx_match_result* r);
GX_API int gx_match_wins_a(const gx_match_result* r);
GX_API int gx_match_wins_b(const gx_match_result* r);
GX_API int gx_match_draws(const gx_match_result* r);
GX_API void gx_match_result_free(gx_match_result* r);

/* Builds win-percentage matrices from every *.summary.json under results_dir
 * into <out_dir>/report.md and one CSV per game family. */
GX_API gx_status gx_report(const char* results_dir, const char* out_dir, char* errbuf,
                           size_t errcap);

#ifdef __cplusplus
}
#endif

#endif /* GAMEXFER_H */
