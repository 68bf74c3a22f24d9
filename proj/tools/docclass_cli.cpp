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

// Subcommand front-end over the docclass C API. Mirrors the classic
// toolchain verbs: seqdir, vectorize, split, trainnb, testnb, report,
// plus pipeline, sweep, bench and gen-corpus.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>

#include "docclass.h"

namespace {

struct PrepFlags {
    std::string stopwords;
    std::string suffixes;
    bool no_stem = false;
    int min_token_len = 2;
    int max_suffix_strip = 4;

    dc_prep_options to_options() const {
        dc_prep_options opts;
        dc_prep_options_init(&opts);
        if (!stopwords.empty()) opts.stopwords_path = stopwords.c_str();
        if (!suffixes.empty()) opts.suffixes_path = suffixes.c_str();
        opts.stemming = no_stem ? 0 : 1;
        opts.min_token_len = min_token_len;
        opts.max_suffix_strip = max_suffix_strip;
        return opts;
    }
};

void add_prep_flags(CLI::App* cmd, PrepFlags& flags) {
    cmd->add_option("--stopwords", flags.stopwords,
                    "Stop-word file, one lowercase term per line (default: built-in "
                    "Turkish list)");
    cmd->add_option("--suffixes", flags.suffixes,
                    "Suffix table file, one suffix per line (default: built-in)");
    cmd->add_flag("--no-stem", flags.no_stem, "Disable light stemming");
    cmd->add_option("--min-token-len", flags.min_token_len, "Minimum token length")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-suffix-strip", flags.max_suffix_strip,
                    "Maximum suffixes stripped per token")
        ->check(CLI::NonNegativeNumber);
}

// Library failures already carry the usage/data distinction in the
// status code.
int report_failure(dc_status status) {
    std::cerr << "error: " << dc_last_error() << "\n";
    return status == DC_USAGE_ERROR ? 1 : 2;
}

// Flat key=value config file for the pipeline subcommand. Keys match the
// long flag names; values from the command line win.
class FlatConfig {
public:
    // Returns false (with a message on stderr) on unreadable files or
    // malformed lines.
    bool load(const std::string& path) {
        std::ifstream in(path);
        if (!in) {
            std::cerr << "error: cannot open config file: " << path << "\n";
            return false;
        }
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            const auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                std::cerr << "error: config line " << line_no << " is not key=value\n";
                return false;
            }
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t");
                const auto e = s.find_last_not_of(" \t");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            values_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
        return true;
    }

    template <class T>
    bool apply(const CLI::App* cmd, const std::string& key, T& target) {
        const auto it = values_.find(key);
        if (it == values_.end()) return true;
        consumed_.insert(key);
        if (cmd->count("--" + key) > 0) return true;  // flag overrides
        std::istringstream in(it->second);
        if constexpr (std::is_same_v<T, bool>) {
            std::string v = it->second;
            for (auto& ch : v) ch = static_cast<char>(std::tolower(ch));
            if (v == "true" || v == "1" || v == "yes" || v == "on") {
                target = true;
            } else if (v == "false" || v == "0" || v == "no" || v == "off") {
                target = false;
            } else {
                std::cerr << "error: config key '" << key << "' is not a boolean\n";
                return false;
            }
        } else if constexpr (std::is_same_v<T, std::string>) {
            target = it->second;
        } else {
            if (!(in >> target) || !in.eof()) {
                std::cerr << "error: config key '" << key << "' has a bad value\n";
                return false;
            }
        }
        return true;
    }

    bool all_consumed() const {
        bool ok = true;
        for (const auto& [key, value] : values_) {
            if (!consumed_.count(key)) {
                std::cerr << "error: unknown config key '" << key << "'\n";
                ok = false;
            }
        }
        return ok;
    }

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> consumed_;
};

int write_text_output(const std::string& path, const char* text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return 2;
    }
    out << text;
    return out ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"docclass - data-parallel document classification pipeline"};
    app.set_version_flag("--version", dc_version());
    app.require_subcommand(1);
    app.fallthrough();

    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    app.add_option("--workers", workers, "Worker threads for parallel stages")
        ->check(CLI::PositiveNumber);

    // seqdir
    auto* seqdir = app.add_subcommand(
        "seqdir", "Ingest a directory-per-class tree into a JSONL corpus");
    std::string seqdir_in, seqdir_out;
    bool fail_fast = false;
    seqdir->add_option("-i,--input", seqdir_in, "Corpus root directory")->required();
    seqdir->add_option("-o,--output", seqdir_out, "Corpus JSONL output path")->required();
    seqdir->add_flag("--fail-fast", fail_fast,
                     "Abort on the first unreadable or invalid-UTF-8 file");

    // vectorize
    auto* vectorize = app.add_subcommand(
        "vectorize", "Build the dictionary and TF-IDF vectors from a corpus");
    std::string vec_in, vec_out, vec_dict;
    bool no_norm = false;
    int min_df = 1;
    PrepFlags vec_prep;
    vectorize->add_option("-i,--input", vec_in, "Corpus JSONL")->required();
    vectorize->add_option("-o,--output", vec_out, "Vector JSONL output path")->required();
    vectorize->add_option("--dict", vec_dict, "Dictionary TSV output path")->required();
    vectorize->add_flag("--no-norm", no_norm, "Skip L2 normalization");
    vectorize->add_option("--min-df", min_df, "Minimum document frequency")
        ->check(CLI::PositiveNumber);
    add_prep_flags(vectorize, vec_prep);

    // split
    auto* split = app.add_subcommand("split", "Split vectors into train and test sets");
    std::string split_in, train_out, test_out;
    int split_pct = 40;
    uint64_t split_seed = 0;
    bool split_exact = false;
    split->add_option("-i,--input", split_in, "Vector JSONL")->required();
    split->add_option("--random-selection-pct", split_pct,
                      "Percentage of vectors sent to the test set")
        ->check(CLI::Range(0, 100));
    split->add_option("--seed", split_seed, "Split seed");
    split->add_flag("--exact", split_exact,
                    "Pick exactly round(n*pct/100) vectors instead of Bernoulli draws");
    split->add_option("--train-out", train_out, "Training vectors output")->required();
    split->add_option("--test-out", test_out, "Test vectors output")->required();

    // trainnb
    auto* trainnb = app.add_subcommand("trainnb", "Train a Naive Bayes model");
    std::string train_in, model_out;
    bool train_complement = false;
    double alpha = 1.0;
    trainnb->add_option("-i,--input", train_in, "Training vectors JSONL")->required();
    trainnb->add_option("-o,--output", model_out, "Model JSON output path")->required();
    trainnb->add_flag("-c,--complement", train_complement,
                      "Complement Naive Bayes mode");
    trainnb->add_option("--alpha", alpha, "Smoothing pseudo-count")
        ->check(CLI::PositiveNumber);

    // testnb
    auto* testnb = app.add_subcommand("testnb", "Score a test set against a model");
    std::string testnb_in, testnb_model, testnb_report, testnb_matrix;
    testnb->add_option("-i,--input", testnb_in, "Test vectors JSONL")->required();
    testnb->add_option("-m,--model", testnb_model, "Model JSON")->required();
    testnb->add_option("-o,--output", testnb_report,
                       "Report output path (default: stdout)");
    testnb->add_option("--matrix-out", testnb_matrix, "Confusion matrix JSON output");

    // report
    auto* report = app.add_subcommand(
        "report", "Render the evaluation report from a confusion matrix");
    std::string report_matrix, report_out;
    report->add_option("-m,--matrix", report_matrix, "Confusion matrix JSON")->required();
    report->add_option("-o,--output", report_out, "Report output path (default: stdout)");

    // pipeline
    auto* pipeline = app.add_subcommand(
        "pipeline", "Run seqdir, vectorize, split, trainnb and testnb in one shot");
    std::string pipe_in, pipe_workdir = "docclass-work", pipe_report;
    int pipe_pct = 40;
    uint64_t pipe_seed = 0;
    bool pipe_exact = false, pipe_complement = false, pipe_fail_fast = false,
         pipe_no_norm = false;
    double pipe_alpha = 1.0;
    int pipe_min_df = 1;
    std::string pipe_config;
    PrepFlags pipe_prep;
    pipeline->add_option("--config", pipe_config,
                         "Flat key=value config file; flags override its values");
    pipeline->add_option("-i,--input", pipe_in, "Corpus root directory")->required();
    pipeline->add_option("--workdir", pipe_workdir, "Directory for pipeline artifacts");
    pipeline->add_option("-o,--report", pipe_report,
                         "Report path (default: <workdir>/report.txt)");
    pipeline->add_option("--test-pct", pipe_pct, "Test set percentage")
        ->check(CLI::Range(0, 100));
    pipeline->add_option("--seed", pipe_seed, "Split seed");
    pipeline->add_flag("--exact", pipe_exact, "Exact split mode");
    pipeline->add_flag("-c,--complement", pipe_complement, "Complement Naive Bayes");
    pipeline->add_option("--alpha", pipe_alpha, "Smoothing pseudo-count")
        ->check(CLI::PositiveNumber);
    pipeline->add_option("--min-df", pipe_min_df, "Minimum document frequency")
        ->check(CLI::PositiveNumber);
    pipeline->add_flag("--no-norm", pipe_no_norm, "Skip L2 normalization");
    pipeline->add_flag("--fail-fast", pipe_fail_fast, "Abort ingestion on bad files");
    add_prep_flags(pipeline, pipe_prep);

    // sweep
    auto* sweep = app.add_subcommand(
        "sweep", "Accuracy for a list of test-set percentages");
    std::string sweep_in, sweep_csv;
    std::vector<int> sweep_pcts = {10, 20, 30, 40};
    uint64_t sweep_seed = 0;
    bool sweep_exact = false, sweep_complement = false;
    double sweep_alpha = 1.0;
    PrepFlags sweep_prep;
    sweep->add_option("-i,--input", sweep_in, "Corpus JSONL")->required();
    sweep->add_option("--pcts", sweep_pcts, "Comma-separated test percentages")
        ->delimiter(',');
    sweep->add_option("--seed", sweep_seed, "Split seed");
    sweep->add_flag("--exact", sweep_exact, "Exact split mode");
    sweep->add_flag("-c,--complement", sweep_complement, "Complement Naive Bayes");
    sweep->add_option("--alpha", sweep_alpha, "Smoothing pseudo-count")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--csv", sweep_csv, "Also write the table as CSV");
    add_prep_flags(sweep, sweep_prep);

    // bench
    auto* bench = app.add_subcommand(
        "bench", "Wall-clock scaling of one stage over worker counts");
    std::string bench_in, bench_stage = "testnb", bench_csv;
    std::vector<int> bench_workers = {1, 2, 4, 8};
    int bench_reps = 3, bench_pct = 40;
    uint64_t bench_seed = 0;
    bool bench_complement = false;
    double bench_alpha = 1.0;
    PrepFlags bench_prep;
    bench->add_option("-i,--input", bench_in, "Corpus JSONL")->required();
    bench->add_option("--stage", bench_stage, "Stage: vectorize, trainnb or testnb");
    bench->add_option("--workers", bench_workers, "Comma-separated worker counts")
        ->delimiter(',');
    bench->add_option("--reps", bench_reps, "Repetitions per worker count")
        ->check(CLI::PositiveNumber);
    bench->add_option("--test-pct", bench_pct, "Split percentage for the bench")
        ->check(CLI::Range(1, 99));
    bench->add_option("--seed", bench_seed, "Split seed");
    bench->add_flag("-c,--complement", bench_complement, "Complement Naive Bayes");
    bench->add_option("--alpha", bench_alpha, "Smoothing pseudo-count")
        ->check(CLI::PositiveNumber);
    bench->add_option("--csv", bench_csv, "Also write the table as CSV");
    add_prep_flags(bench, bench_prep);

    // gen-corpus
    auto* gen = app.add_subcommand(
        "gen-corpus", "Generate a synthetic directory-per-class corpus");
    std::string gen_out;
    int gen_classes = 5, gen_docs = 100, gen_vocab = 50;
    double gen_overlap = 0.1;
    uint64_t gen_seed = 1;
    bool gen_force = false;
    gen->add_option("-o,--output", gen_out, "Output directory")->required();
    gen->add_option("--classes", gen_classes, "Number of classes")
        ->check(CLI::PositiveNumber);
    gen->add_option("--docs", gen_docs, "Documents per class")
        ->check(CLI::PositiveNumber);
    gen->add_option("--vocab", gen_vocab, "Vocabulary size per class")
        ->check(CLI::PositiveNumber);
    gen->add_option("--overlap", gen_overlap,
                    "Fraction of each class vocabulary shared across classes")
        ->check(CLI::Range(0.0, 0.999));
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_flag("--force", gen_force, "Overwrite a non-empty output directory");

    for (auto* sub : app.get_subcommands({})) {
        sub->set_version_flag("--version", dc_version());
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 1;
    }

    if (seqdir->parsed()) {
        long long records = 0, skipped = 0;
        const dc_status s = dc_seqdir(seqdir_in.c_str(), seqdir_out.c_str(),
                                      fail_fast ? 1 : 0, &records, &skipped);
        if (s != DC_OK) return report_failure(s);
        std::cerr << "ingested " << records << " record(s)";
        if (skipped > 0) std::cerr << ", skipped " << skipped;
        std::cerr << " -> " << seqdir_out << "\n";
        return 0;
    }

    if (vectorize->parsed()) {
        const dc_prep_options prep = vec_prep.to_options();
        const dc_status s = dc_vectorize(vec_in.c_str(), vec_out.c_str(),
                                         vec_dict.c_str(), &prep, no_norm ? 0 : 1,
                                         min_df, workers);
        if (s != DC_OK) return report_failure(s);
        std::cerr << "wrote " << vec_out << " and " << vec_dict << "\n";
        return 0;
    }

    if (split->parsed()) {
        long long train_count = 0, test_count = 0;
        const dc_status s =
            dc_split(split_in.c_str(), split_pct, split_seed, split_exact ? 1 : 0,
                     train_out.c_str(), test_out.c_str(), &train_count, &test_count);
        if (s != DC_OK) return report_failure(s);
        std::cerr << "train " << train_count << ", test " << test_count << "\n";
        return 0;
    }

    if (trainnb->parsed()) {
        const dc_status s = dc_trainnb(train_in.c_str(), train_complement ? 1 : 0,
                                       alpha, workers, model_out.c_str());
        if (s != DC_OK) return report_failure(s);
        std::cerr << "wrote " << model_out << "\n";
        return 0;
    }

    if (testnb->parsed()) {
        const char* matrix = testnb_matrix.empty() ? nullptr : testnb_matrix.c_str();
        if (!testnb_report.empty() && testnb_report != "-") {
            const dc_status s = dc_testnb(testnb_in.c_str(), testnb_model.c_str(),
                                          workers, testnb_report.c_str(), matrix);
            if (s != DC_OK) return report_failure(s);
            std::cerr << "wrote " << testnb_report << "\n";
            return 0;
        }
        // Report to stdout: run testnb for the matrix, then render it.
        std::string tmp_matrix = testnb_matrix;
        if (tmp_matrix.empty()) tmp_matrix = testnb_in + ".matrix.json";
        dc_status s = dc_testnb(testnb_in.c_str(), testnb_model.c_str(), workers,
                                nullptr, tmp_matrix.c_str());
        if (s != DC_OK) return report_failure(s);
        dc_matrix* m = nullptr;
        s = dc_matrix_open(tmp_matrix.c_str(), &m);
        if (s != DC_OK) return report_failure(s);
        char* text = nullptr;
        s = dc_matrix_render(m, &text);
        dc_matrix_close(m);
        if (s != DC_OK) return report_failure(s);
        std::cout << text;
        dc_string_free(text);
        if (testnb_matrix.empty()) std::remove(tmp_matrix.c_str());
        return 0;
    }

    if (report->parsed()) {
        dc_matrix* m = nullptr;
        dc_status s = dc_matrix_open(report_matrix.c_str(), &m);
        if (s != DC_OK) return report_failure(s);
        char* text = nullptr;
        s = dc_matrix_render(m, &text);
        dc_matrix_close(m);
        if (s != DC_OK) return report_failure(s);
        const int rc = write_text_output(report_out, text);
        dc_string_free(text);
        return rc;
    }

    if (pipeline->parsed()) {
        if (!pipe_config.empty()) {
            FlatConfig config;
            bool ok = config.load(pipe_config);
            ok = ok && config.apply(pipeline, "input", pipe_in);
            ok = ok && config.apply(pipeline, "workdir", pipe_workdir);
            ok = ok && config.apply(pipeline, "report", pipe_report);
            ok = ok && config.apply(pipeline, "test-pct", pipe_pct);
            ok = ok && config.apply(pipeline, "seed", pipe_seed);
            ok = ok && config.apply(pipeline, "exact", pipe_exact);
            ok = ok && config.apply(pipeline, "complement", pipe_complement);
            ok = ok && config.apply(pipeline, "alpha", pipe_alpha);
            ok = ok && config.apply(pipeline, "min-df", pipe_min_df);
            ok = ok && config.apply(pipeline, "no-norm", pipe_no_norm);
            ok = ok && config.apply(pipeline, "fail-fast", pipe_fail_fast);
            ok = ok && config.apply(pipeline, "stopwords", pipe_prep.stopwords);
            ok = ok && config.apply(pipeline, "suffixes", pipe_prep.suffixes);
            ok = ok && config.apply(pipeline, "no-stem", pipe_prep.no_stem);
            ok = ok && config.apply(pipeline, "min-token-len", pipe_prep.min_token_len);
            ok = ok && config.apply(pipeline, "max-suffix-strip",
                                    pipe_prep.max_suffix_strip);
            ok = ok && config.apply(&app, "workers", workers);
            ok = ok && config.all_consumed();
            if (!ok) return 1;
        }
        dc_pipeline_options opts;
        dc_pipeline_options_init(&opts);
        opts.corpus_dir = pipe_in.c_str();
        opts.work_dir = pipe_workdir.c_str();
        if (!pipe_report.empty()) opts.report_out = pipe_report.c_str();
        opts.prep = pipe_prep.to_options();
        opts.fail_fast = pipe_fail_fast ? 1 : 0;
        opts.normalize = pipe_no_norm ? 0 : 1;
        opts.min_df = pipe_min_df;
        opts.test_pct = pipe_pct;
        opts.seed = pipe_seed;
        opts.exact_split = pipe_exact ? 1 : 0;
        opts.complement = pipe_complement ? 1 : 0;
        opts.alpha = pipe_alpha;
        opts.workers = workers;
        char* text = nullptr;
        const dc_status s = dc_pipeline_run(&opts, &text);
        if (s != DC_OK) return report_failure(s);
        std::cout << text;
        dc_string_free(text);
        return 0;
    }

    if (sweep->parsed()) {
        const dc_prep_options prep = sweep_prep.to_options();
        char* text = nullptr;
        const dc_status s =
            dc_sweep(sweep_in.c_str(), sweep_pcts.data(),
                     static_cast<int>(sweep_pcts.size()), sweep_seed,
                     sweep_exact ? 1 : 0, sweep_complement ? 1 : 0, sweep_alpha, &prep,
                     workers, sweep_csv.empty() ? nullptr : sweep_csv.c_str(), &text);
        if (s != DC_OK) return report_failure(s);
        std::cout << text;
        dc_string_free(text);
        return 0;
    }

    if (bench->parsed()) {
        const dc_prep_options prep = bench_prep.to_options();
        char* text = nullptr;
        const dc_status s = dc_bench(
            bench_in.c_str(), bench_stage.c_str(), bench_workers.data(),
            static_cast<int>(bench_workers.size()), bench_reps, bench_pct, bench_seed,
            bench_complement ? 1 : 0, bench_alpha, &prep,
            bench_csv.empty() ? nullptr : bench_csv.c_str(), &text);
        if (s != DC_OK) return report_failure(s);
        std::cout << text;
        dc_string_free(text);
        return 0;
    }

    if (gen->parsed()) {
        long long files = 0;
        const dc_status s =
            dc_gen_corpus(gen_out.c_str(), gen_classes, gen_docs, gen_vocab,
                          gen_overlap, gen_seed, gen_force ? 1 : 0, &files);
        if (s != DC_OK) return report_failure(s);
        std::cerr << "wrote " << files << " file(s) under " << gen_out << "\n";
        return 0;
    }

    std::cerr << "error: no subcommand\n";
    return 1;
}
