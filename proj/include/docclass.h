/*
 * Copyright 2026+ The docclass authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C API of the docclass shared library.
 *
 * Every function returns a dc_status; on failure dc_last_error() gives a
 * human-readable message for the calling thread. Handles (dc_model,
 * dc_matrix) are opaque and must be released with their close function.
 * Strings returned through char** out-parameters are owned by the caller
 * and released with dc_string_free().
 */

#ifndef DOCCLASS_H
#define DOCCLASS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DOCCLASS_API __declspec(dllexport)
#else
#define DOCCLASS_API __attribute__((visibility("default")))
#endif

typedef enum dc_status {
    DC_OK = 0,
    DC_USAGE_ERROR = 1, /* bad arguments or out-of-range parameters */
    DC_DATA_ERROR = 2   /* missing/unreadable/malformed data */
} dc_status;

DOCCLASS_API const char* dc_version(void);

/* Message for the most recent failure on this thread; empty on success. */
DOCCLASS_API const char* dc_last_error(void);

DOCCLASS_API void dc_string_free(char* s);

/* ---- preprocessing options ------------------------------------------- */

typedef struct dc_prep_options {
    const char* stopwords_path; /* NULL: built-in Turkish list */
    const char* suffixes_path;  /* NULL: built-in suffix table */
    int stemming;               /* 0 off, 1 light (default 1) */
    int min_token_len;          /* default 2 */
    int max_suffix_strip;       /* default 4 */
} dc_prep_options;

DOCCLASS_API void dc_prep_options_init(dc_prep_options* opts);

/* ---- pipeline stages (file in, file out) ------------------------------ */

/* Directory-per-class tree -> JSONL corpus sorted by key. */
DOCCLASS_API dc_status dc_seqdir(const char* root, const char* corpus_out,
                                 int fail_fast, long long* record_count_out,
                                 long long* skipped_out);

/* Corpus -> dictionary TSV + normalized TF-IDF vectors JSONL. */
DOCCLASS_API dc_status dc_vectorize(const char* corpus_path, const char* vectors_out,
                                    const char* dict_out,
                                    const dc_prep_options* prep, int normalize,
                                    int min_df, int workers);

/* Seeded train/test split; exact_mode picks exactly round(n*pct/100). */
DOCCLASS_API dc_status dc_split(const char* vectors_path, int test_pct,
                                uint64_t seed, int exact_mode,
                                const char* train_out, const char* test_out,
                                long long* train_count_out,
                                long long* test_count_out);

/* Train vectors -> Naive Bayes model JSON (complement != 0 for CNB). */
DOCCLASS_API dc_status dc_trainnb(const char* train_path, int complement,
                                  double alpha, int workers,
                                  const char* model_out);

/* Test vectors + model -> evaluation report and confusion matrix JSON.
 * Either output path may be NULL to skip it. */
DOCCLASS_API dc_status dc_testnb(const char* test_path, const char* model_path,
                                 int workers, const char* report_out,
                                 const char* matrix_out);

/* ---- confusion matrix handle ------------------------------------------ */

typedef struct dc_matrix dc_matrix;

DOCCLASS_API dc_status dc_matrix_open(const char* path, dc_matrix** out);
DOCCLASS_API dc_status dc_matrix_parse(const char* json_text, dc_matrix** out);
DOCCLASS_API void dc_matrix_close(dc_matrix* m);
DOCCLASS_API dc_status dc_matrix_accuracy(const dc_matrix* m, long long* correct,
                                          long long* incorrect, double* fraction);
DOCCLASS_API dc_status dc_matrix_kappa(const dc_matrix* m, double* kappa);
DOCCLASS_API dc_status dc_matrix_weighted(const dc_matrix* m, double* precision,
                                          double* recall, double* f1);
/* The Summary / Confusion Matrix / Statistics report text. */
DOCCLASS_API dc_status dc_matrix_render(const dc_matrix* m, char** text_out);

/* ---- model handle ------------------------------------------------------ */

typedef struct dc_model dc_model;

DOCCLASS_API dc_status dc_model_open(const char* path, dc_model** out);
DOCCLASS_API void dc_model_close(dc_model* m);
DOCCLASS_API dc_status dc_model_num_labels(const dc_model* m, int* out);
/* Pointer stays valid while the model handle is open. */
DOCCLASS_API dc_status dc_model_label(const dc_model* m, int index,
                                      const char** out);
/* Scores a sparse vector (parallel index/weight arrays, indices strictly
 * increasing). best_index receives the winning label position. */
DOCCLASS_API dc_status dc_model_classify(const dc_model* m,
                                         const int64_t* indices,
                                         const double* weights, int n,
                                         int* best_index, double* best_score);

/* ---- one-shot pipeline, sweep, bench, corpus generator ---------------- */

typedef struct dc_pipeline_options {
    const char* corpus_dir;
    const char* work_dir;
    const char* report_out; /* NULL: <work_dir>/report.txt */
    dc_prep_options prep;
    int fail_fast;
    int normalize;  /* default 1 */
    int min_df;     /* default 1 */
    int test_pct;   /* default 40 */
    uint64_t seed;  /* default 0 */
    int exact_split;
    int complement;
    double alpha;   /* default 1.0 */
    int workers;    /* default 1 */
} dc_pipeline_options;

DOCCLASS_API void dc_pipeline_options_init(dc_pipeline_options* opts);

/* Runs seqdir -> vectorize -> split -> trainnb -> testnb with one
 * configuration and writes all artifacts under work_dir. */
DOCCLASS_API dc_status dc_pipeline_run(const dc_pipeline_options* opts,
                                       char** report_text_out);

/* Accuracy per test percentage, as aligned text; CSV also written when
 * csv_out is non-NULL. */
DOCCLASS_API dc_status dc_sweep(const char* corpus_path, const int* pcts,
                                int num_pcts, uint64_t seed, int exact_mode,
                                int complement, double alpha,
                                const dc_prep_options* prep, int workers,
                                const char* csv_out, char** table_text_out);

/* Wall-clock table for one stage ("vectorize", "trainnb" or "testnb")
 * over a list of worker counts. */
DOCCLASS_API dc_status dc_bench(const char* corpus_path, const char* stage,
                                const int* worker_counts, int num_worker_counts,
                                int repetitions, int test_pct, uint64_t seed,
                                int complement, double alpha,
                                const dc_prep_options* prep, const char* csv_out,
                                char** table_text_out);

/* Deterministic synthetic directory-per-class corpus. */
DOCCLASS_API dc_status dc_gen_corpus(const char* out_dir, int num_classes,
                                     int docs_per_class, int vocab_per_class,
                                     double overlap_fraction, uint64_t seed,
                                     int force, long long* files_out);

#ifdef __cplusplus
}
#endif

#endif /* DOCCLASS_H */
