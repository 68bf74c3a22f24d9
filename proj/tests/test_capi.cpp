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

// End-to-end coverage of the shared library's C surface.

#include <doctest.h>

#include <cstring>
#include <string>

#include "docclass.h"
#include "support/temp_dir.hpp"

using testsupport::TempDir;
using testsupport::read_file;
using testsupport::write_file;

namespace {

// A tiny two-class tree with heavily disjoint vocabulary.
void write_fixture_corpus(const TempDir& tmp) {
    write_file(tmp.path() / "corpus/spor/a.txt", "futbol maç gol futbol saha");
    write_file(tmp.path() / "corpus/spor/b.txt", "gol saha futbol takım");
    write_file(tmp.path() / "corpus/spor/c.txt", "maç takım saha gol");
    write_file(tmp.path() / "corpus/tarih/a.txt", "savaş tarih imparator belge");
    write_file(tmp.path() / "corpus/tarih/b.txt", "belge arşiv tarih savaş");
    write_file(tmp.path() / "corpus/tarih/c.txt", "imparator arşiv belge tarih");
}

}  // namespace

TEST_CASE("version and prep option defaults") {
    CHECK(std::string(dc_version()) == "0.1.0");
    dc_prep_options prep;
    dc_prep_options_init(&prep);
    CHECK(prep.stopwords_path == nullptr);
    CHECK(prep.stemming == 1);
    CHECK(prep.min_token_len == 2);
    CHECK(prep.max_suffix_strip == 4);
}

TEST_CASE("stage functions chain through the C API") {
    TempDir tmp;
    write_fixture_corpus(tmp);

    long long records = 0, skipped = 0;
    REQUIRE(dc_seqdir(tmp.str("corpus").c_str(), tmp.str("c.jsonl").c_str(), 1,
                      &records, &skipped) == DC_OK);
    CHECK(records == 6);
    CHECK(skipped == 0);

    dc_prep_options prep;
    dc_prep_options_init(&prep);
    REQUIRE(dc_vectorize(tmp.str("c.jsonl").c_str(), tmp.str("v.jsonl").c_str(),
                         tmp.str("d.tsv").c_str(), &prep, 1, 1, 2) == DC_OK);
    CHECK(read_file(tmp.str("d.tsv")).rfind("#num_docs=6\n", 0) == 0);

    long long train_count = 0, test_count = 0;
    REQUIRE(dc_split(tmp.str("v.jsonl").c_str(), 34, 9, 1,
                     tmp.str("train.jsonl").c_str(), tmp.str("test.jsonl").c_str(),
                     &train_count, &test_count) == DC_OK);
    CHECK(train_count == 4);
    CHECK(test_count == 2);  // exact mode: round(6*34/100) = 2

    REQUIRE(dc_trainnb(tmp.str("train.jsonl").c_str(), 1, 1.0, 2,
                       tmp.str("m.json").c_str()) == DC_OK);
    REQUIRE(dc_testnb(tmp.str("test.jsonl").c_str(), tmp.str("m.json").c_str(), 2,
                      tmp.str("r.txt").c_str(), tmp.str("cm.json").c_str()) == DC_OK);
    const std::string report = read_file(tmp.str("r.txt"));
    CHECK(report.find("Summary") != std::string::npos);
    CHECK(report.find("Confusion Matrix") != std::string::npos);
}

TEST_CASE("matrix handle exposes the metric set") {
    TempDir tmp;
    const char* matrix_json =
        "{\"labels\":[\"a\",\"b\"],\"counts\":[[8,2],[1,9]]}";
    dc_matrix* m = nullptr;
    REQUIRE(dc_matrix_parse(matrix_json, &m) == DC_OK);
    REQUIRE(m != nullptr);

    long long correct = 0, incorrect = 0;
    double fraction = 0.0;
    CHECK(dc_matrix_accuracy(m, &correct, &incorrect, &fraction) == DC_OK);
    CHECK(correct == 17);
    CHECK(incorrect == 3);
    CHECK(fraction == doctest::Approx(0.85));

    double kappa = 0.0;
    CHECK(dc_matrix_kappa(m, &kappa) == DC_OK);
    CHECK(kappa == doctest::Approx(0.7).epsilon(1e-9));

    double precision = 0.0, recall = 0.0, f1 = 0.0;
    CHECK(dc_matrix_weighted(m, &precision, &recall, &f1) == DC_OK);
    CHECK(recall == doctest::Approx(fraction).epsilon(1e-12));

    char* text = nullptr;
    CHECK(dc_matrix_render(m, &text) == DC_OK);
    REQUIRE(text != nullptr);
    CHECK(std::string(text).find("Statistics") != std::string::npos);
    dc_string_free(text);
    dc_matrix_close(m);

    write_file(tmp.path() / "cm.json", matrix_json);
    dc_matrix* from_file = nullptr;
    REQUIRE(dc_matrix_open(tmp.str("cm.json").c_str(), &from_file) == DC_OK);
    dc_matrix_close(from_file);
}

TEST_CASE("model handle classifies in-memory vectors") {
    TempDir tmp;
    write_fixture_corpus(tmp);
    dc_seqdir(tmp.str("corpus").c_str(), tmp.str("c.jsonl").c_str(), 1, nullptr,
              nullptr);
    dc_prep_options prep;
    dc_prep_options_init(&prep);
    dc_vectorize(tmp.str("c.jsonl").c_str(), tmp.str("v.jsonl").c_str(),
                 tmp.str("d.tsv").c_str(), &prep, 1, 1, 1);
    REQUIRE(dc_trainnb(tmp.str("v.jsonl").c_str(), 0, 1.0, 1,
                       tmp.str("m.json").c_str()) == DC_OK);

    dc_model* model = nullptr;
    REQUIRE(dc_model_open(tmp.str("m.json").c_str(), &model) == DC_OK);
    int num_labels = 0;
    CHECK(dc_model_num_labels(model, &num_labels) == DC_OK);
    CHECK(num_labels == 2);
    const char* first = nullptr;
    CHECK(dc_model_label(model, 0, &first) == DC_OK);
    CHECK(std::string(first) == "spor");
    CHECK(dc_model_label(model, 99, &first) == DC_USAGE_ERROR);

    const int64_t indices[] = {0, 1};
    const double weights[] = {1.0, 0.5};
    int best = -1;
    double score = 0.0;
    CHECK(dc_model_classify(model, indices, weights, 2, &best, &score) == DC_OK);
    CHECK((best == 0 || best == 1));
    CHECK(score < 0.0);  // standard-mode log score

    const int64_t bad_order[] = {3, 1};
    CHECK(dc_model_classify(model, bad_order, weights, 2, &best, &score) ==
          DC_USAGE_ERROR);
    dc_model_close(model);
}

TEST_CASE("pipeline, sweep, bench and gen-corpus through the C API") {
    TempDir tmp;
    long long files = 0;
    REQUIRE(dc_gen_corpus(tmp.str("synth").c_str(), 3, 20, 40, 0.1, 1, 0, &files) ==
            DC_OK);
    CHECK(files == 60);
    // refuses to clobber without force
    CHECK(dc_gen_corpus(tmp.str("synth").c_str(), 3, 20, 40, 0.1, 1, 0, &files) ==
          DC_DATA_ERROR);
    CHECK(std::string(dc_last_error()).find("force") != std::string::npos);

    dc_pipeline_options opts;
    dc_pipeline_options_init(&opts);
    const std::string corpus_dir = tmp.str("synth");
    const std::string work_dir = tmp.str("work");
    opts.corpus_dir = corpus_dir.c_str();
    opts.work_dir = work_dir.c_str();
    opts.test_pct = 30;
    opts.seed = 4;
    opts.complement = 1;
    opts.workers = 2;
    char* report = nullptr;
    REQUIRE(dc_pipeline_run(&opts, &report) == DC_OK);
    REQUIRE(report != nullptr);
    CHECK(std::string(report).find("Run configuration") != std::string::npos);
    CHECK(std::string(report) == read_file(work_dir + "/report.txt"));
    dc_string_free(report);

    const int pcts[] = {20, 40};
    char* sweep_table = nullptr;
    REQUIRE(dc_sweep((work_dir + "/corpus.jsonl").c_str(), pcts, 2, 1, 0, 0, 1.0,
                     nullptr, 2, tmp.str("sweep.csv").c_str(),
                     &sweep_table) == DC_OK);
    CHECK(std::string(sweep_table).find("Accuracy") != std::string::npos);
    dc_string_free(sweep_table);
    CHECK(read_file(tmp.str("sweep.csv")).rfind("test_pct,", 0) == 0);

    const int workers[] = {1, 2};
    char* bench_table = nullptr;
    REQUIRE(dc_bench((work_dir + "/corpus.jsonl").c_str(), "testnb", workers, 2, 2,
                     40, 1, 0, 1.0, nullptr, nullptr, &bench_table) == DC_OK);
    CHECK(std::string(bench_table).find("Workers") != std::string::npos);
    dc_string_free(bench_table);
}

TEST_CASE("failures set the status code and the error message") {
    TempDir tmp;
    long long n = 0;
    CHECK(dc_seqdir(tmp.str("missing").c_str(), tmp.str("c.jsonl").c_str(), 1, &n,
                    nullptr) == DC_DATA_ERROR);
    CHECK(std::strlen(dc_last_error()) > 0);

    CHECK(dc_seqdir(nullptr, nullptr, 0, nullptr, nullptr) == DC_USAGE_ERROR);

    // out-of-range split percentage is a usage error
    write_file(tmp.path() / "v.jsonl",
               "{\"name\":\"/a/1\",\"label\":\"a\",\"entries\":[[0,1.0]]}\n");
    CHECK(dc_split(tmp.str("v.jsonl").c_str(), 140, 0, 0,
                   tmp.str("t.jsonl").c_str(), tmp.str("e.jsonl").c_str(), nullptr,
                   nullptr) == DC_USAGE_ERROR);

    CHECK(dc_trainnb(tmp.str("missing.jsonl").c_str(), 0, 1.0, 1,
                     tmp.str("m.json").c_str()) == DC_DATA_ERROR);

    dc_matrix* m = nullptr;
    CHECK(dc_matrix_parse("garbage", &m) == DC_DATA_ERROR);
    CHECK(dc_matrix_open(tmp.str("missing.json").c_str(), &m) == DC_DATA_ERROR);
}
