/* Copyright 2026 The divsum Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the divsum diverse-summarization engine.
 *
 * Conventions:
 *  - Every fallible call returns a dvs_status. On failure the message is
 *    available from dvs_last_error() on the same thread until the next call.
 *  - Handles are opaque and owned by the caller; free them with the matching
 *    *_free function. Passing NULL to a *_free function is a no-op.
 *  - Strings returned through char** out-parameters are heap allocated and
 *    must be released with dvs_string_free().
 *  - Query scores are "lower is more relevant", one per dataset row in
 *    dataset order.
 *  - Handles are immutable after creation except sessions, which must not
 *    be used from two threads at once.
 */

#ifndef DIVSUM_DIVSUM_H_
#define DIVSUM_DIVSUM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(DVS_BUILDING_LIBRARY)
#define DVS_API __declspec(dllexport)
#else
#define DVS_API __declspec(dllimport)
#endif
#else
#define DVS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dvs_status {
  DVS_OK = 0,
  DVS_ERR_INVALID = 1,  /* bad argument or violated precondition */
  DVS_ERR_DATA = 2,     /* malformed or inconsistent input data */
  DVS_ERR_IO = 3,       /* file could not be read or written */
  DVS_ERR_INTERNAL = 4
} dvs_status;

typedef struct dvs_dataset dvs_dataset;
typedef struct dvs_control_set dvs_control_set;
typedef struct dvs_summary dvs_summary;
typedef struct dvs_session dvs_session;

typedef struct dvs_params {
  size_t m;              /* summary size */
  double alpha;          /* DS tradeoff, [0, 1] */
  double balanced_alpha; /* MMR-balanced diversity weight */
  double beta;           /* MMR-balanced redundancy weight */
  double mmr_alpha;      /* MMR relevance weight */
  double c;              /* DET oversampling factor, >= 1 */
  double u, l;           /* DDS constants, 0 < l < u <= 2l */
} dvs_params;

DVS_API const char* dvs_version(void);
DVS_API const char* dvs_last_error(void);
DVS_API void dvs_string_free(char* s);
DVS_API void dvs_params_default(dvs_params* params);

/* Datasets. `values` is row-major n x dim. */
DVS_API dvs_status dvs_dataset_load(const char* path, dvs_dataset** out);
DVS_API dvs_status dvs_dataset_create(const char* const* ids,
                                      const double* values, size_t n,
                                      size_t dim, dvs_dataset** out);
DVS_API size_t dvs_dataset_size(const dvs_dataset* dataset);
DVS_API size_t dvs_dataset_dim(const dvs_dataset* dataset);
DVS_API void dvs_dataset_free(dvs_dataset* dataset);

/* Control sets: a copy of `items`, or a file resolved against `pool`. */
DVS_API dvs_status dvs_control_set_create(const dvs_dataset* items,
                                          dvs_control_set** out);
DVS_API dvs_status dvs_control_set_load(const char* path,
                                        const dvs_dataset* pool,
                                        dvs_control_set** out);
DVS_API size_t dvs_control_set_size(const dvs_control_set* control);
DVS_API void dvs_control_set_free(dvs_control_set* control);

/* Query scores into `out` (dvs_dataset_size entries). */
DVS_API dvs_status dvs_query_scores_reference(const dvs_dataset* dataset,
                                              const dvs_dataset* refs,
                                              double* out);
DVS_API dvs_status dvs_query_scores_external(const dvs_dataset* dataset,
                                             const char* const* ids,
                                             const double* probabilities,
                                             size_t count, int normalize,
                                             double* out);

/* Runs one algorithm: qs_balanced, mmr_balanced, dds, qs, ds, mmr, det,
 * autolabel or autolabel_rwd. `control` is required by the control-set
 * algorithms, `partitions` (one label per dataset row) by the autolabel
 * baselines; both may be NULL otherwise. `params` may be NULL for defaults. */
DVS_API dvs_status dvs_select(const char* algorithm,
                              const dvs_dataset* dataset,
                              const double* qscores,
                              const dvs_control_set* control,
                              const char* const* partitions,
                              const dvs_params* params, dvs_summary** out);

/* Full round-robin ranking of every row. */
DVS_API dvs_status dvs_rank(const dvs_dataset* dataset, const double* qscores,
                            const dvs_control_set* control, double alpha,
                            dvs_summary** out);

DVS_API size_t dvs_summary_size(const dvs_summary* summary);
DVS_API const char* dvs_summary_id(const dvs_summary* summary, size_t i);
DVS_API const char* dvs_summary_selected_by(const dvs_summary* summary,
                                            size_t i);
DVS_API double dvs_summary_score(const dvs_summary* summary, size_t i);
DVS_API size_t dvs_summary_round(const dvs_summary* summary, size_t i);
DVS_API size_t dvs_summary_note_count(const dvs_summary* summary);
DVS_API const char* dvs_summary_note(const dvs_summary* summary, size_t i);
DVS_API void dvs_summary_free(dvs_summary* summary);

/* Sessions over a YAML run config. Reports are pretty-printed JSON. */
DVS_API dvs_status dvs_session_open(const char* config_path, dvs_session** out);
DVS_API void dvs_session_free(dvs_session* session);

/* Overrides a selection parameter (m, alpha, balanced_alpha, beta,
 * mmr_alpha, c, u, l) for every later call. `alpha` sets the weight each
 * algorithm calls alpha. */
DVS_API dvs_status dvs_session_set_param(dvs_session* session,
                                         const char* name, double value);

/* `algorithm` NULL runs the first configured algorithm. */
DVS_API dvs_status dvs_session_summarize(dvs_session* session,
                                         const char* algorithm,
                                         char** report_json);
DVS_API dvs_status dvs_session_summary(dvs_session* session,
                                       const char* algorithm,
                                       dvs_summary** out);
/* CSV: rank,id,selected_by,score,round */
DVS_API dvs_status dvs_session_rank(dvs_session* session, char** csv);
DVS_API dvs_status dvs_session_evaluate(dvs_session* session,
                                        const char* summary_path,
                                        char** report_json);
DVS_API dvs_status dvs_session_compare(dvs_session* session,
                                       char** report_json);
/* NULL `parameter` / `values` fall back to the config's sweep block.
 * `values` is "a,b,c" or "start:stop:step". `csv` may be NULL. */
DVS_API dvs_status dvs_session_sweep(dvs_session* session,
                                     const char* parameter,
                                     const char* values, char** report_json,
                                     char** csv);
DVS_API dvs_status dvs_session_describe(dvs_session* session, char** text);

/* Validates one file. kind: config, embeddings, labels, scores,
 * partitions, query. */
DVS_API dvs_status dvs_validate_file(const char* kind, const char* path,
                                     char** text);

/* Synthetic corpora. `groups` is "name:proportion:direction_seed:spread"
 * entries separated by commas; NULL selects the planted two-group
 * instance. */
typedef struct dvs_synth_options {
  size_t n;
  size_t d;
  const char* groups;
  double query_bias;
  uint64_t seed;
  size_t topics;
  double group_weight;
  size_t query_size;
  size_t control_per_group;
  size_t balanced_per_group; /* members per group in control.csv */
  int binary;                /* embeddings in the binary format */
} dvs_synth_options;

DVS_API void dvs_synth_options_default(dvs_synth_options* options);
/* `manifest` receives the written file names, one per line. */
DVS_API dvs_status dvs_synth_write(const dvs_synth_options* options,
                                   const char* out_dir, char** manifest);

/* Replication harness. When the bundle's data is absent `*data_present` is
 * 0, `report_json` is set to NULL and `message` holds acquisition
 * instructions; this is not an error. */
DVS_API dvs_status dvs_replicate(const char* bundle_path, int* data_present,
                                 char** report_json, char** message);

#ifdef __cplusplus
}
#endif

#endif /* DIVSUM_DIVSUM_H_ */
