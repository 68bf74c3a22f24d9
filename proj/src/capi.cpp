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

#include "docclass.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <string>
#include <vector>

#include "bayes.hpp"
#include "corpus_store.hpp"
#include "errors.hpp"
#include "evaluator.hpp"
#include "pipeline.hpp"
#include "text_prep.hpp"
#include "vectorizer.hpp"

namespace {

thread_local std::string g_last_error;

dc_status fail(dc_status code, const char* what) {
    g_last_error = what ? what : "unknown error";
    return code;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
dc_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return DC_OK;
    } catch (const docclass::UsageError& e) {
        return fail(DC_USAGE_ERROR, e.what());
    } catch (const docclass::DataError& e) {
        return fail(DC_DATA_ERROR, e.what());
    } catch (const std::exception& e) {
        return fail(DC_DATA_ERROR, e.what());
    } catch (...) {
        return fail(DC_DATA_ERROR, "unknown error");
    }
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

docclass::textprep::PrepConfig make_prep(const dc_prep_options* opts) {
    using namespace docclass::textprep;
    PrepConfig config = prep_config_default();
    if (!opts) return config;
    if (opts->stopwords_path) config.stopwords = load_stopwords_file(opts->stopwords_path);
    if (opts->suffixes_path) config.suffixes = load_suffixes_file(opts->suffixes_path);
    config.stemming = opts->stemming ? Stemming::light : Stemming::off;
    if (opts->min_token_len < 1) throw docclass::UsageError("min_token_len must be >= 1");
    config.min_token_len = opts->min_token_len;
    if (opts->max_suffix_strip < 0) {
        throw docclass::UsageError("max_suffix_strip must be >= 0");
    }
    config.max_suffix_strip = opts->max_suffix_strip;
    return config;
}

void require(bool ok, const char* what) {
    if (!ok) throw docclass::UsageError(what);
}

size_t worker_count(int workers) {
    return workers < 1 ? size_t{1} : static_cast<size_t>(workers);
}

}  // namespace

struct dc_matrix {
    docclass::eval::ConfusionMatrix cm;
};

struct dc_model {
    docclass::bayes::Model model;
};

extern "C" {

const char* dc_version(void) { return "0.1.0"; }

const char* dc_last_error(void) { return g_last_error.c_str(); }

void dc_string_free(char* s) { delete[] s; }

void dc_prep_options_init(dc_prep_options* opts) {
    if (!opts) return;
    opts->stopwords_path = nullptr;
    opts->suffixes_path = nullptr;
    opts->stemming = 1;
    opts->min_token_len = 2;
    opts->max_suffix_strip = 4;
}

dc_status dc_seqdir(const char* root, const char* corpus_out, int fail_fast,
                    long long* record_count_out, long long* skipped_out) {
    return guarded([&] {
        require(root && corpus_out, "dc_seqdir: root and corpus_out are required");
        const auto result =
            docclass::corpus::ingest_directory(root, corpus_out, fail_fast != 0);
        if (record_count_out) *record_count_out = static_cast<long long>(result.record_count);
        if (skipped_out) *skipped_out = static_cast<long long>(result.skipped);
    });
}

dc_status dc_vectorize(const char* corpus_path, const char* vectors_out,
                       const char* dict_out, const dc_prep_options* prep,
                       int normalize, int min_df, int workers) {
    return guarded([&] {
        require(corpus_path && vectors_out && dict_out,
                "dc_vectorize: corpus_path, vectors_out and dict_out are required");
        require(min_df >= 1, "dc_vectorize: min_df must be >= 1");
        docclass::pipeline::stage_vectorize(corpus_path, vectors_out, dict_out,
                                            make_prep(prep), normalize != 0, min_df,
                                            worker_count(workers));
    });
}

dc_status dc_split(const char* vectors_path, int test_pct, uint64_t seed,
                   int exact_mode, const char* train_out, const char* test_out,
                   long long* train_count_out, long long* test_count_out) {
    return guarded([&] {
        require(vectors_path && train_out && test_out,
                "dc_split: vectors_path, train_out and test_out are required");
        docclass::vec::SplitSpec spec;
        spec.test_pct = test_pct;
        spec.seed = seed;
        spec.mode = exact_mode ? docclass::vec::SplitMode::exact
                               : docclass::vec::SplitMode::bernoulli;
        const auto [train_count, test_count] =
            docclass::pipeline::stage_split(vectors_path, spec, train_out, test_out);
        if (train_count_out) *train_count_out = static_cast<long long>(train_count);
        if (test_count_out) *test_count_out = static_cast<long long>(test_count);
    });
}

dc_status dc_trainnb(const char* train_path, int complement, double alpha,
                     int workers, const char* model_out) {
    return guarded([&] {
        require(train_path && model_out,
                "dc_trainnb: train_path and model_out are required");
        docclass::pipeline::stage_trainnb(
            train_path,
            complement ? docclass::bayes::Mode::complement
                       : docclass::bayes::Mode::standard,
            alpha, worker_count(workers), model_out);
    });
}

dc_status dc_testnb(const char* test_path, const char* model_path, int workers,
                    const char* report_out, const char* matrix_out) {
    return guarded([&] {
        require(test_path && model_path,
                "dc_testnb: test_path and model_path are required");
        docclass::pipeline::stage_testnb(test_path, model_path, worker_count(workers),
                                         report_out ? report_out : "",
                                         matrix_out ? matrix_out : "");
    });
}

dc_status dc_matrix_open(const char* path, dc_matrix** out) {
    return guarded([&] {
        require(path && out, "dc_matrix_open: path and out are required");
        auto* m = new dc_matrix{docclass::eval::load_matrix(path)};
        *out = m;
    });
}

dc_status dc_matrix_parse(const char* json_text, dc_matrix** out) {
    return guarded([&] {
        require(json_text && out, "dc_matrix_parse: json_text and out are required");
        auto* m = new dc_matrix{docclass::eval::matrix_from_json_text(json_text)};
        *out = m;
    });
}

void dc_matrix_close(dc_matrix* m) { delete m; }

dc_status dc_matrix_accuracy(const dc_matrix* m, long long* correct,
                             long long* incorrect, double* fraction) {
    return guarded([&] {
        require(m != nullptr, "dc_matrix_accuracy: null matrix");
        const auto a = docclass::eval::accuracy(m->cm);
        if (correct) *correct = a.correct;
        if (incorrect) *incorrect = a.incorrect;
        if (fraction) *fraction = a.fraction;
    });
}

dc_status dc_matrix_kappa(const dc_matrix* m, double* kappa) {
    return guarded([&] {
        require(m != nullptr && kappa != nullptr, "dc_matrix_kappa: null argument");
        *kappa = docclass::eval::kappa(m->cm);
    });
}

dc_status dc_matrix_weighted(const dc_matrix* m, double* precision, double* recall,
                             double* f1) {
    return guarded([&] {
        require(m != nullptr, "dc_matrix_weighted: null matrix");
        const auto wm = docclass::eval::weighted_metrics(m->cm);
        if (precision) *precision = wm.precision;
        if (recall) *recall = wm.recall;
        if (f1) *f1 = wm.f1;
    });
}

dc_status dc_matrix_render(const dc_matrix* m, char** text_out) {
    return guarded([&] {
        require(m != nullptr && text_out != nullptr, "dc_matrix_render: null argument");
        *text_out = copy_string(docclass::eval::render_report(m->cm));
    });
}

dc_status dc_model_open(const char* path, dc_model** out) {
    return guarded([&] {
        require(path && out, "dc_model_open: path and out are required");
        auto* m = new dc_model{docclass::bayes::load_model(path)};
        *out = m;
    });
}

void dc_model_close(dc_model* m) { delete m; }

dc_status dc_model_num_labels(const dc_model* m, int* out) {
    return guarded([&] {
        require(m != nullptr && out != nullptr, "dc_model_num_labels: null argument");
        *out = static_cast<int>(m->model.labels.size());
    });
}

dc_status dc_model_label(const dc_model* m, int index, const char** out) {
    return guarded([&] {
        require(m != nullptr && out != nullptr, "dc_model_label: null argument");
        require(index >= 0 && index < static_cast<int>(m->model.labels.size()),
                "dc_model_label: index out of range");
        *out = m->model.labels[static_cast<size_t>(index)].c_str();
    });
}

dc_status dc_model_classify(const dc_model* m, const int64_t* indices,
                            const double* weights, int n, int* best_index,
                            double* best_score) {
    return guarded([&] {
        require(m != nullptr, "dc_model_classify: null model");
        require(n >= 0, "dc_model_classify: negative length");
        require(n == 0 || (indices && weights),
                "dc_model_classify: null indices/weights");
        docclass::vec::SparseVector v;
        for (int i = 0; i < n; ++i) {
            if (i > 0 && indices[i] <= indices[i - 1]) {
                throw docclass::UsageError(
                    "dc_model_classify: indices must be strictly increasing");
            }
            if (!std::isfinite(weights[i])) {
                throw docclass::UsageError(
                    "dc_model_classify: weights must be finite");
            }
            v.entries.emplace_back(indices[i], weights[i]);
        }
        const auto ranked = docclass::bayes::classify(m->model, v);
        if (best_index) {
            *best_index = m->model.label_of(ranked.front().first);
        }
        if (best_score) *best_score = ranked.front().second;
    });
}

void dc_pipeline_options_init(dc_pipeline_options* opts) {
    if (!opts) return;
    opts->corpus_dir = nullptr;
    opts->work_dir = nullptr;
    opts->report_out = nullptr;
    dc_prep_options_init(&opts->prep);
    opts->fail_fast = 0;
    opts->normalize = 1;
    opts->min_df = 1;
    opts->test_pct = 40;
    opts->seed = 0;
    opts->exact_split = 0;
    opts->complement = 0;
    opts->alpha = 1.0;
    opts->workers = 1;
}

dc_status dc_pipeline_run(const dc_pipeline_options* opts, char** report_text_out) {
    return guarded([&] {
        require(opts != nullptr, "dc_pipeline_run: null options");
        require(opts->corpus_dir && opts->work_dir,
                "dc_pipeline_run: corpus_dir and work_dir are required");
        require(opts->test_pct >= 0 && opts->test_pct <= 100,
                "dc_pipeline_run: test_pct must be in [0, 100]");
        require(opts->min_df >= 1, "dc_pipeline_run: min_df must be >= 1");
        docclass::pipeline::Options po;
        po.corpus_dir = opts->corpus_dir;
        po.work_dir = opts->work_dir;
        if (opts->report_out) po.report_out = opts->report_out;
        po.prep = make_prep(&opts->prep);
        po.stopwords_source =
            opts->prep.stopwords_path ? opts->prep.stopwords_path : "builtin";
        po.fail_fast = opts->fail_fast != 0;
        po.normalize = opts->normalize != 0;
        po.min_df = opts->min_df;
        po.test_pct = opts->test_pct;
        po.seed = opts->seed;
        po.split_mode = opts->exact_split ? docclass::vec::SplitMode::exact
                                          : docclass::vec::SplitMode::bernoulli;
        po.mode = opts->complement ? docclass::bayes::Mode::complement
                                   : docclass::bayes::Mode::standard;
        po.alpha = opts->alpha;
        po.workers = worker_count(opts->workers);
        const auto outcome = docclass::pipeline::run_pipeline(po);
        if (report_text_out) {
            *report_text_out = copy_string(docclass::pipeline::config_header(po) +
                                           docclass::eval::render_report(outcome.matrix));
        }
    });
}

dc_status dc_sweep(const char* corpus_path, const int* pcts, int num_pcts,
                   uint64_t seed, int exact_mode, int complement, double alpha,
                   const dc_prep_options* prep, int workers, const char* csv_out,
                   char** table_text_out) {
    return guarded([&] {
        require(corpus_path != nullptr, "dc_sweep: corpus_path is required");
        require(pcts != nullptr && num_pcts > 0, "dc_sweep: need at least one pct");
        const std::vector<int> pct_list(pcts, pcts + num_pcts);
        const auto rows = docclass::pipeline::sweep_test_pct(
            corpus_path, pct_list, seed,
            exact_mode ? docclass::vec::SplitMode::exact
                       : docclass::vec::SplitMode::bernoulli,
            complement ? docclass::bayes::Mode::complement
                       : docclass::bayes::Mode::standard,
            alpha, make_prep(prep), worker_count(workers));
        if (csv_out) {
            std::ofstream out(csv_out, std::ios::binary | std::ios::trunc);
            if (!out) throw docclass::DataError(std::string("cannot write ") + csv_out);
            out << docclass::pipeline::sweep_csv(rows);
        }
        if (table_text_out) {
            *table_text_out = copy_string(docclass::pipeline::render_sweep_table(rows));
        }
    });
}

dc_status dc_bench(const char* corpus_path, const char* stage,
                   const int* worker_counts, int num_worker_counts, int repetitions,
                   int test_pct, uint64_t seed, int complement, double alpha,
                   const dc_prep_options* prep, const char* csv_out,
                   char** table_text_out) {
    return guarded([&] {
        require(corpus_path != nullptr, "dc_bench: corpus_path is required");
        require(worker_counts != nullptr && num_worker_counts > 0,
                "dc_bench: need at least one worker count");
        require(repetitions >= 1, "dc_bench: repetitions must be >= 1");
        require(test_pct > 0 && test_pct < 100,
                "dc_bench: test_pct must be in (0, 100)");
        std::vector<size_t> counts;
        for (int i = 0; i < num_worker_counts; ++i) {
            require(worker_counts[i] >= 1, "dc_bench: worker counts must be >= 1");
            counts.push_back(static_cast<size_t>(worker_counts[i]));
        }
        const auto result = docclass::pipeline::bench_stage(
            corpus_path, stage ? stage : "testnb", counts,
            static_cast<size_t>(repetitions), make_prep(prep), test_pct, seed,
            complement ? docclass::bayes::Mode::complement
                       : docclass::bayes::Mode::standard,
            alpha);
        if (csv_out) {
            std::ofstream out(csv_out, std::ios::binary | std::ios::trunc);
            if (!out) throw docclass::DataError(std::string("cannot write ") + csv_out);
            out << docclass::pipeline::bench_csv(result);
        }
        if (table_text_out) {
            *table_text_out = copy_string(docclass::pipeline::render_bench_table(result));
        }
    });
}

dc_status dc_gen_corpus(const char* out_dir, int num_classes, int docs_per_class,
                        int vocab_per_class, double overlap_fraction, uint64_t seed,
                        int force, long long* files_out) {
    return guarded([&] {
        require(out_dir != nullptr, "dc_gen_corpus: out_dir is required");
        const auto result = docclass::pipeline::gen_corpus(
            out_dir, num_classes, docs_per_class, vocab_per_class, overlap_fraction,
            seed, force != 0);
        if (files_out) *files_out = static_cast<long long>(result.files);
    });
}

}  // extern "C"
