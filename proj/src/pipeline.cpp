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

#include "pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "hashing.hpp"

namespace fs = std::filesystem;

namespace docclass::pipeline {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Preprocesses every document and vectorizes against a freshly built
// dictionary. Both passes run on the engine; per-document results are
// concatenated in shard order, which is input order.
struct VectorizedCorpus {
    vec::Dictionary dict;
    std::vector<vec::SparseVector> vectors;
};

VectorizedCorpus vectorize_corpus(const std::vector<corpus::DocumentRecord>& records,
                                  const textprep::PrepConfig& prep, bool normalize,
                                  int min_df, size_t workers) {
    const engine::ShardPlan plan = engine::ShardPlan::make(workers);
    auto key_of = [](const corpus::DocumentRecord& r) { return r.key; };

    using TermsList = std::vector<std::vector<std::string>>;
    TermsList terms = engine::map_combine(
        std::span<const corpus::DocumentRecord>(records), TermsList{},
        [&](const corpus::DocumentRecord& rec, TermsList& out) {
            out.push_back(textprep::preprocess(rec.text, prep));
        },
        [](TermsList& into, TermsList&& from) {
            std::move(from.begin(), from.end(), std::back_inserter(into));
        },
        plan, key_of);

    VectorizedCorpus out;
    out.dict = vec::build_dictionary(terms, min_df, plan);

    std::vector<size_t> positions(records.size());
    for (size_t i = 0; i < records.size(); ++i) positions[i] = i;
    out.vectors = engine::map_combine(
        std::span<const size_t>(positions), std::vector<vec::SparseVector>{},
        [&](size_t i, std::vector<vec::SparseVector>& acc) {
            acc.push_back(vec::vectorize(records[i].key, records[i].label, terms[i],
                                         out.dict, normalize));
        },
        [](std::vector<vec::SparseVector>& into, std::vector<vec::SparseVector>&& from) {
            std::move(from.begin(), from.end(), std::back_inserter(into));
        },
        plan, [&](size_t i) { return records[i].key; });
    return out;
}

}  // namespace

corpus::IngestResult stage_seqdir(const std::string& root, const std::string& corpus_out,
                                  bool fail_fast) {
    return corpus::ingest_directory(root, corpus_out, fail_fast);
}

void stage_vectorize(const std::string& corpus_path, const std::string& vectors_out,
                     const std::string& dict_out, const textprep::PrepConfig& prep,
                     bool normalize, int min_df, size_t workers) {
    const auto records = corpus::read_corpus(corpus_path);
    if (records.empty()) throw DataError("corpus is empty: " + corpus_path);
    VectorizedCorpus vc = vectorize_corpus(records, prep, normalize, min_df, workers);
    vec::save_dictionary(vc.dict, dict_out);
    vec::save_vectors(vc.vectors, vectors_out);
}

std::pair<size_t, size_t> stage_split(const std::string& vectors_path,
                                      const vec::SplitSpec& spec,
                                      const std::string& train_out,
                                      const std::string& test_out) {
    const auto vectors = vec::load_vectors(vectors_path);
    auto [train, test] = vec::split_vectors(vectors, spec);
    vec::save_vectors(train, train_out);
    vec::save_vectors(test, test_out);
    return {train.size(), test.size()};
}

void stage_trainnb(const std::string& train_path, bayes::Mode mode, double alpha,
                   size_t workers, const std::string& model_out) {
    const auto train = vec::load_vectors(train_path);
    if (train.empty()) throw DataError("training set is empty: " + train_path);
    bayes::Model model =
        bayes::train_nb(train, mode, alpha, engine::ShardPlan::make(workers));
    bayes::save_model(model, model_out);
}

eval::ConfusionMatrix stage_testnb(const std::string& test_path,
                                   const std::string& model_path, size_t workers,
                                   const std::string& report_out,
                                   const std::string& matrix_out) {
    const auto test = vec::load_vectors(test_path);
    if (test.empty()) throw DataError("test set is empty: " + test_path);
    const bayes::Model model = bayes::load_model(model_path);
    eval::ConfusionMatrix cm =
        bayes::test_nb(model, test, engine::ShardPlan::make(workers));
    if (!matrix_out.empty()) eval::save_matrix(cm, matrix_out);
    if (!report_out.empty()) {
        std::ofstream out(report_out, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open report file for writing: " + report_out);
        out << eval::render_report(cm);
        out.flush();
        if (!out) throw DataError("write failed: " + report_out);
    }
    return cm;
}

std::string config_header(const Options& options) {
    std::ostringstream out;
    out << "=====\nRun configuration\n-----\n";
    out << "corpus = " << options.corpus_dir << '\n';
    out << "test_pct = " << options.test_pct << '\n';
    out << "seed = " << options.seed << '\n';
    out << "split = "
        << (options.split_mode == vec::SplitMode::exact ? "exact" : "bernoulli") << '\n';
    out << "mode = "
        << (options.mode == bayes::Mode::complement ? "complement" : "standard") << '\n';
    out << "alpha = " << options.alpha << '\n';
    out << "min_df = " << options.min_df << '\n';
    out << "normalize = " << (options.normalize ? "true" : "false") << '\n';
    out << "stemming = "
        << (options.prep.stemming == textprep::Stemming::light ? "light" : "off") << '\n';
    out << "min_token_len = " << options.prep.min_token_len << '\n';
    out << "max_suffix_strip = " << options.prep.max_suffix_strip << '\n';
    out << "stopwords = " << options.stopwords_source << '\n';
    out << '\n';
    return out.str();
}

Outcome run_pipeline(const Options& options) {
    if (options.corpus_dir.empty()) throw UsageError("pipeline needs a corpus directory");
    if (options.work_dir.empty()) throw UsageError("pipeline needs a work directory");
    fs::create_directories(options.work_dir);

    Outcome outcome;
    auto& a = outcome.artifacts;
    const fs::path work(options.work_dir);
    a.corpus = (work / "corpus.jsonl").string();
    a.dictionary = (work / "dictionary.tsv").string();
    a.vectors = (work / "vectors.jsonl").string();
    a.train = (work / "train.jsonl").string();
    a.test = (work / "test.jsonl").string();
    a.model = (work / "model.json").string();
    a.matrix = (work / "matrix.json").string();
    a.report = options.report_out.empty() ? (work / "report.txt").string()
                                          : options.report_out;

    const auto t0 = Clock::now();
    auto start = t0;
    stage_seqdir(options.corpus_dir, a.corpus, options.fail_fast);
    outcome.timings.seqdir_ms = ms_since(start);

    start = Clock::now();
    stage_vectorize(a.corpus, a.vectors, a.dictionary, options.prep, options.normalize,
                    options.min_df, options.workers);
    outcome.timings.vectorize_ms = ms_since(start);

    start = Clock::now();
    vec::SplitSpec spec;
    spec.test_pct = options.test_pct;
    spec.seed = options.seed;
    spec.mode = options.split_mode;
    auto [train_count, test_count] = stage_split(a.vectors, spec, a.train, a.test);
    outcome.train_count = train_count;
    outcome.test_count = test_count;
    outcome.timings.split_ms = ms_since(start);

    start = Clock::now();
    stage_trainnb(a.train, options.mode, options.alpha, options.workers, a.model);
    outcome.timings.train_ms = ms_since(start);

    start = Clock::now();
    outcome.matrix = stage_testnb(a.test, a.model, options.workers, "", a.matrix);
    outcome.timings.test_ms = ms_since(start);
    outcome.timings.total_ms = ms_since(t0);

    std::ofstream report(a.report, std::ios::binary | std::ios::trunc);
    if (!report) throw DataError("cannot open report file for writing: " + a.report);
    report << config_header(options) << eval::render_report(outcome.matrix);
    report.flush();
    if (!report) throw DataError("write failed: " + a.report);
    return outcome;
}

std::vector<SweepRow> sweep_test_pct(const std::string& corpus_path,
                                     const std::vector<int>& pcts, uint64_t seed,
                                     vec::SplitMode split_mode, bayes::Mode mode,
                                     double alpha, const textprep::PrepConfig& prep,
                                     size_t workers) {
    const auto records = corpus::read_corpus(corpus_path);
    if (records.empty()) throw DataError("corpus is empty: " + corpus_path);
    const VectorizedCorpus vc = vectorize_corpus(records, prep, true, 1, workers);
    const engine::ShardPlan plan = engine::ShardPlan::make(workers);

    std::vector<SweepRow> rows;
    for (int pct : pcts) {
        SweepRow row;
        row.pct = pct;
        try {
            if (pct <= 0 || pct >= 100) {
                throw UsageError("sweep percentage must be in (0, 100)");
            }
            vec::SplitSpec spec;
            spec.test_pct = pct;
            spec.seed = seed;
            spec.mode = split_mode;
            auto [train, test] = vec::split_vectors(vc.vectors, spec);
            if (train.empty()) throw DataError("empty training set at this percentage");
            if (test.empty()) throw DataError("empty test set at this percentage");
            const bayes::Model model = bayes::train_nb(train, mode, alpha, plan);
            const eval::ConfusionMatrix cm = bayes::test_nb(model, test, plan);
            row.accuracy = eval::accuracy(cm).fraction;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_sweep_table(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "Test set (%)  Accuracy (%)\n";
    char buf[96];
    for (const auto& row : rows) {
        if (row.error.empty()) {
            std::snprintf(buf, sizeof(buf), "%-12d  %.4f\n", row.pct,
                          row.accuracy * 100.0);
            out << buf;
        } else {
            std::snprintf(buf, sizeof(buf), "%-12d  error: %s\n", row.pct,
                          row.error.c_str());
            out << buf;
        }
    }
    return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "test_pct,accuracy_pct,error\n";
    char buf[64];
    for (const auto& row : rows) {
        if (row.error.empty()) {
            std::snprintf(buf, sizeof(buf), "%d,%.6f,\n", row.pct, row.accuracy * 100.0);
            out << buf;
        } else {
            std::string escaped = row.error;
            std::replace(escaped.begin(), escaped.end(), ',', ';');
            out << row.pct << ",," << escaped << '\n';
        }
    }
    return out.str();
}

BenchResult bench_stage(const std::string& corpus_path, const std::string& stage,
                        const std::vector<size_t>& worker_counts, size_t repetitions,
                        const textprep::PrepConfig& prep, int test_pct, uint64_t seed,
                        bayes::Mode mode, double alpha) {
    const auto records = corpus::read_corpus(corpus_path);
    if (records.empty()) throw DataError("corpus is empty: " + corpus_path);

    BenchResult result;
    result.stage = stage;

    if (stage == "vectorize") {
        result.rows = engine::benchmark(worker_counts, repetitions, [&](size_t w) {
            vectorize_corpus(records, prep, true, 1, w);
        });
        return result;
    }

    // The remaining stages need vectors; prepare them once, outside the
    // timed region.
    const VectorizedCorpus vc = vectorize_corpus(records, prep, true, 1,
                                                 worker_counts.empty()
                                                     ? size_t{1}
                                                     : worker_counts.back());
    vec::SplitSpec spec;
    spec.test_pct = test_pct;
    spec.seed = seed;
    auto split_result = vec::split_vectors(vc.vectors, spec);
    const std::vector<vec::SparseVector>& train = split_result.first;
    const std::vector<vec::SparseVector>& test = split_result.second;
    if (train.empty() || test.empty()) {
        throw DataError("benchmark split produced an empty train or test set");
    }

    if (stage == "trainnb") {
        result.rows = engine::benchmark(worker_counts, repetitions, [&](size_t w) {
            bayes::train_nb(train, mode, alpha, engine::ShardPlan::make(w));
        });
    } else if (stage == "testnb") {
        const bayes::Model model = bayes::train_nb(train, mode, alpha);
        result.rows = engine::benchmark(worker_counts, repetitions, [&](size_t w) {
            bayes::test_nb(model, test, engine::ShardPlan::make(w));
        });
    } else {
        throw UsageError("unknown benchmark stage: " + stage +
                         " (expected vectorize, trainnb or testnb)");
    }
    return result;
}

std::string render_bench_table(const BenchResult& result) {
    std::ostringstream out;
    out << "Stage: " << result.stage << "\n";
    out << "Workers  Median (ms)  Runs (ms)\n";
    char buf[64];
    for (const auto& row : result.rows) {
        std::snprintf(buf, sizeof(buf), "%-7zu  %-11.1f  ", row.workers, row.median_ms);
        out << buf;
        for (size_t i = 0; i < row.times_ms.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%s%.1f", i ? " " : "", row.times_ms[i]);
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

std::string bench_csv(const BenchResult& result) {
    std::ostringstream out;
    out << "stage,workers,repetition,time_ms,median_ms\n";
    char buf[96];
    for (const auto& row : result.rows) {
        for (size_t i = 0; i < row.times_ms.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%s,%zu,%zu,%.3f,%.3f\n",
                          result.stage.c_str(), row.workers, i + 1, row.times_ms[i],
                          row.median_ms);
            out << buf;
        }
    }
    return out.str();
}

GenCorpusResult gen_corpus(const std::string& out_dir, int num_classes,
                           int docs_per_class, int vocab_per_class,
                           double overlap_fraction, uint64_t seed, bool force) {
    if (num_classes < 1 || docs_per_class < 1 || vocab_per_class < 1) {
        throw UsageError("gen-corpus counts must all be >= 1");
    }
    if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) {
        throw UsageError("overlap fraction must be in [0, 1)");
    }
    const fs::path dir(out_dir);
    std::error_code ec;
    if (fs::exists(dir, ec) && !fs::is_empty(dir, ec) && !force) {
        throw DataError("output directory exists and is not empty: " + out_dir +
                        " (use --force to overwrite)");
    }
    fs::create_directories(dir);

    // Vowel-free alphabet keeps synthetic terms inert under stemming and
    // disjoint from the stop-word list.
    static const char kLetters[] = "bcdfghjkmpqrstvz";
    const uint64_t base = sizeof(kLetters) - 1;
    auto term_name = [&](char prefix, uint64_t id) {
        std::string t(7, 'b');
        t[0] = prefix;
        for (size_t pos = 6; pos >= 1; --pos) {
            t[pos] = kLetters[id % base];
            id /= base;
        }
        return t;
    };

    const int shared_count =
        static_cast<int>(std::llround(overlap_fraction * vocab_per_class));
    std::vector<std::string> shared;
    shared.reserve(shared_count);
    for (int s = 0; s < shared_count; ++s) shared.push_back(term_name('z', s));

    GenCorpusResult result;
    result.dir = out_dir;
    result.classes = static_cast<size_t>(num_classes);
    for (int c = 0; c < num_classes; ++c) {
        std::string label = "class";
        label += static_cast<char>('a' + c % 26);
        if (c >= 26) label += std::to_string(c / 26);
        const fs::path class_dir = dir / label;
        fs::create_directories(class_dir);

        std::vector<std::string> vocab = shared;
        for (int t = shared_count; t < vocab_per_class; ++t) {
            // id is globally unique across classes, so vocabularies with
            // overlap 0 are pairwise disjoint.
            const uint64_t id = static_cast<uint64_t>(c) * vocab_per_class + t;
            vocab.push_back(term_name(kLetters[c % base], id));
        }

        for (int d = 0; d < docs_per_class; ++d) {
            SplitMix64 rng(seed ^ (static_cast<uint64_t>(c) << 32) ^
                           static_cast<uint64_t>(d));
            const size_t doc_len = 40 + rng.next_below(41);
            std::string text;
            for (size_t i = 0; i < doc_len; ++i) {
                text += vocab[rng.next_below(vocab.size())];
                text += (i + 1) % 10 == 0 ? '\n' : ' ';
            }
            char name[32];
            std::snprintf(name, sizeof(name), "doc%05d.txt", d);
            std::ofstream out(class_dir / name, std::ios::binary | std::ios::trunc);
            if (!out) throw DataError("cannot write " + (class_dir / name).string());
            out << text << '\n';
            ++result.files;
        }
    }
    return result;
}

}  // namespace docclass::pipeline
