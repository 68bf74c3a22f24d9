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

#ifndef DOCCLASS_PIPELINE_HPP
#define DOCCLASS_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bayes.hpp"
#include "corpus_store.hpp"
#include "engine.hpp"
#include "evaluator.hpp"
#include "text_prep.hpp"
#include "vectorizer.hpp"

namespace docclass::pipeline {

// Fully resolved run configuration for the five-stage pipeline. The
// logical fields (everything that shapes the output bytes) are echoed
// into the report header; workers is execution-only and is not.
struct Options {
    std::string corpus_dir;   // directory-per-class input tree
    std::string work_dir;     // artifacts land here
    std::string report_out;   // defaults to <work_dir>/report.txt
    textprep::PrepConfig prep;
    std::string stopwords_source = "builtin";  // echoed in the header
    bool fail_fast = false;
    bool normalize = true;
    int min_df = 1;
    int test_pct = 40;
    uint64_t seed = 0;
    vec::SplitMode split_mode = vec::SplitMode::bernoulli;
    bayes::Mode mode = bayes::Mode::standard;
    double alpha = 1.0;
    size_t workers = 1;
};

struct StageTimings {
    double seqdir_ms = 0.0;
    double vectorize_ms = 0.0;
    double split_ms = 0.0;
    double train_ms = 0.0;
    double test_ms = 0.0;
    double total_ms = 0.0;
};

struct Artifacts {
    std::string corpus;
    std::string dictionary;
    std::string vectors;
    std::string train;
    std::string test;
    std::string model;
    std::string matrix;
    std::string report;
};

struct Outcome {
    Artifacts artifacts;
    eval::ConfusionMatrix matrix;
    StageTimings timings;
    size_t train_count = 0;
    size_t test_count = 0;
};

// Stage wrappers: file in, file out. Each one mirrors a CLI subcommand.
corpus::IngestResult stage_seqdir(const std::string& root, const std::string& corpus_out,
                                  bool fail_fast);
void stage_vectorize(const std::string& corpus_path, const std::string& vectors_out,
                     const std::string& dict_out, const textprep::PrepConfig& prep,
                     bool normalize, int min_df, size_t workers);
std::pair<size_t, size_t> stage_split(const std::string& vectors_path,
                                      const vec::SplitSpec& spec,
                                      const std::string& train_out,
                                      const std::string& test_out);
void stage_trainnb(const std::string& train_path, bayes::Mode mode, double alpha,
                   size_t workers, const std::string& model_out);
eval::ConfusionMatrix stage_testnb(const std::string& test_path,
                                   const std::string& model_path, size_t workers,
                                   const std::string& report_out,
                                   const std::string& matrix_out);

// Chains all five stages with one configuration. The report written to
// options.report_out carries the resolved-config header.
Outcome run_pipeline(const Options& options);

// The config header prepended to pipeline reports.
std::string config_header(const Options& options);

struct SweepRow {
    int pct = 0;
    double accuracy = 0.0;  // fraction in [0,1]
    std::string error;      // non-empty when this row failed
};

// Splits/trains/tests the same vector set at each percentage. A failing
// percentage marks its row and the sweep continues.
std::vector<SweepRow> sweep_test_pct(const std::string& corpus_path,
                                     const std::vector<int>& pcts, uint64_t seed,
                                     vec::SplitMode split_mode, bayes::Mode mode,
                                     double alpha, const textprep::PrepConfig& prep,
                                     size_t workers);
std::string render_sweep_table(const std::vector<SweepRow>& rows);
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Benchmark of one pipeline stage over a list of worker counts. The
// timed stage excludes file I/O: inputs are prepared once, then each
// (workers, repetition) cell times the in-memory computation.
struct BenchResult {
    std::string stage;
    std::vector<engine::BenchRow> rows;
};
BenchResult bench_stage(const std::string& corpus_path, const std::string& stage,
                        const std::vector<size_t>& worker_counts, size_t repetitions,
                        const textprep::PrepConfig& prep, int test_pct, uint64_t seed,
                        bayes::Mode mode, double alpha);
std::string render_bench_table(const BenchResult& result);
std::string bench_csv(const BenchResult& result);

struct GenCorpusResult {
    std::string dir;
    size_t files = 0;
    size_t classes = 0;
};

// Synthetic directory-per-class corpus with per-class vocabularies that
// share overlap_fraction of their terms. Deterministic for a seed.
GenCorpusResult gen_corpus(const std::string& out_dir, int num_classes,
                           int docs_per_class, int vocab_per_class,
                           double overlap_fraction, uint64_t seed, bool force);

}  // namespace docclass::pipeline

#endif
