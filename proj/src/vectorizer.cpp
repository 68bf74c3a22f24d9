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

#include "vectorizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"
#include "hashing.hpp"

using nlohmann::json;

namespace docclass::vec {

Dictionary build_dictionary(std::span<const std::vector<std::string>> docs,
                            int min_df, const engine::ShardPlan& plan) {
    if (docs.empty()) throw DataError("cannot build a dictionary from zero documents");

    struct Partial {
        std::map<std::string, int64_t> df;
        int64_t num_docs = 0;
    };
    auto count_doc = [](const std::vector<std::string>& terms, Partial& p) {
        ++p.num_docs;
        // df counts documents: each distinct term once per document.
        std::vector<std::string_view> seen(terms.begin(), terms.end());
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        for (auto t : seen) {
            auto [it, inserted] = p.df.try_emplace(std::string(t), 1);
            if (!inserted) ++it->second;
        }
    };
    auto merge = [](Partial& into, Partial&& from) {
        into.num_docs += from.num_docs;
        for (auto& [term, count] : from.df) {
            auto [it, inserted] = into.df.try_emplace(term, count);
            if (!inserted) it->second += count;
        }
    };
    Partial merged = engine::map_combine(
        docs, Partial{}, count_doc, merge, plan,
        [](const std::vector<std::string>&) { return std::string("<doc>"); });

    Dictionary dict;
    dict.num_docs = merged.num_docs;
    for (auto& [term, count] : merged.df) {
        if (count >= min_df) {
            dict.index.emplace(term, static_cast<int64_t>(dict.terms.size()));
            dict.terms.push_back(term);
            dict.df.push_back(count);
        }
    }
    return dict;
}

double tfidf_weight(int64_t raw_count, int64_t df, int64_t num_docs) {
    return std::sqrt(static_cast<double>(raw_count)) *
           (std::log(static_cast<double>(num_docs) / static_cast<double>(df + 1)) + 1.0);
}

SparseVector vectorize(const std::string& name, const std::string& label,
                       std::span<const std::string> terms, const Dictionary& dict,
                       bool normalize) {
    std::map<int64_t, int64_t> counts;
    for (const auto& term : terms) {
        const int64_t idx = dict.lookup(term);
        if (idx >= 0) ++counts[idx];
    }

    SparseVector v;
    v.name = name;
    v.label = label;
    v.entries.reserve(counts.size());
    for (const auto& [idx, f] : counts) {
        const double w = tfidf_weight(f, dict.df[static_cast<size_t>(idx)], dict.num_docs);
        if (w > 0.0 && std::isfinite(w)) v.entries.emplace_back(idx, w);
    }

    if (normalize && !v.entries.empty()) {
        double sum_sq = 0.0;
        for (const auto& [idx, w] : v.entries) sum_sq += w * w;
        const double norm = std::sqrt(sum_sq);
        for (auto& [idx, w] : v.entries) w /= norm;
    }
    return v;
}

bool bernoulli_test_member(const std::string& name, uint64_t seed, int test_pct) {
    uint64_t state = fnv1a64(name) ^ seed;
    const uint64_t u = splitmix64_next(state);
    const double x = static_cast<double>(u >> 11) * 0x1.0p-53;
    return x < static_cast<double>(test_pct) / 100.0;
}

std::pair<std::vector<SparseVector>, std::vector<SparseVector>> split_vectors(
    std::span<const SparseVector> vectors, const SplitSpec& spec) {
    if (spec.test_pct < 0 || spec.test_pct > 100) {
        throw UsageError("test percentage must be in [0, 100], got " +
                         std::to_string(spec.test_pct));
    }
    if (vectors.empty()) throw DataError("cannot split an empty vector set");

    std::vector<bool> in_test(vectors.size(), false);
    if (spec.mode == SplitMode::bernoulli) {
        for (size_t i = 0; i < vectors.size(); ++i) {
            in_test[i] = bernoulli_test_member(vectors[i].name, spec.seed, spec.test_pct);
        }
    } else {
        const size_t n = vectors.size();
        const size_t k = static_cast<size_t>(
            (n * static_cast<uint64_t>(spec.test_pct) + 50) / 100);
        // Shuffle name-sorted positions so membership does not depend on
        // input order.
        std::vector<size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return vectors[a].name < vectors[b].name;
        });
        SplitMix64 rng(spec.seed);
        for (size_t i = n - 1; i > 0; --i) {
            const size_t j = static_cast<size_t>(rng.next_below(i + 1));
            std::swap(order[i], order[j]);
        }
        for (size_t i = 0; i < k && i < n; ++i) in_test[order[i]] = true;
    }

    std::pair<std::vector<SparseVector>, std::vector<SparseVector>> out;
    for (size_t i = 0; i < vectors.size(); ++i) {
        (in_test[i] ? out.second : out.first).push_back(vectors[i]);
    }
    return out;
}

void save_dictionary(const Dictionary& dict, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open dictionary file for writing: " + path);
    out << "#num_docs=" << dict.num_docs << '\n';
    for (size_t i = 0; i < dict.terms.size(); ++i) {
        out << dict.terms[i] << '\t' << i << '\t' << dict.df[i] << '\n';
    }
    out.flush();
    if (!out) throw DataError("write failed: " + path);
}

Dictionary load_dictionary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dictionary file: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("#num_docs=", 0) != 0) {
        throw DataError("dictionary file missing #num_docs header: " + path);
    }
    Dictionary dict;
    try {
        dict.num_docs = std::stoll(line.substr(10));
    } catch (const std::exception&) {
        throw DataError("bad #num_docs header in " + path);
    }
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string term, idx_s, df_s;
        if (!std::getline(row, term, '\t') || !std::getline(row, idx_s, '\t') ||
            !std::getline(row, df_s)) {
            throw DataError("malformed dictionary line " + std::to_string(line_no) +
                            " in " + path);
        }
        int64_t idx, df;
        try {
            idx = std::stoll(idx_s);
            df = std::stoll(df_s);
        } catch (const std::exception&) {
            throw DataError("malformed dictionary line " + std::to_string(line_no) +
                            " in " + path);
        }
        if (idx != static_cast<int64_t>(dict.terms.size()) || df < 1 ||
            df > dict.num_docs) {
            throw DataError("inconsistent dictionary entry at line " +
                            std::to_string(line_no) + " in " + path);
        }
        dict.index.emplace(term, idx);
        dict.terms.push_back(std::move(term));
        dict.df.push_back(df);
    }
    return dict;
}

std::string vector_to_json(const SparseVector& v) {
    std::string out = "{\"name\":";
    out += json(v.name).dump();
    out += ",\"label\":";
    out += json(v.label).dump();
    out += ",\"entries\":[";
    char buf[64];
    for (size_t i = 0; i < v.entries.size(); ++i) {
        if (i) out += ',';
        std::snprintf(buf, sizeof(buf), "[%lld,%.17g]",
                      static_cast<long long>(v.entries[i].first), v.entries[i].second);
        out += buf;
    }
    out += "]}";
    return out;
}

void save_vectors(std::span<const SparseVector> vectors, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open vector file for writing: " + path);
    for (const auto& v : vectors) out << vector_to_json(v) << '\n';
    out.flush();
    if (!out) throw DataError("write failed: " + path);
}

std::vector<SparseVector> load_vectors(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open vector file: " + path);
    std::vector<SparseVector> vectors;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const size_t record_no = vectors.size() + 1;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object() || !obj.contains("name") ||
            !obj.contains("label") || !obj.contains("entries") ||
            !obj["entries"].is_array()) {
            throw DataError("malformed vector record " + std::to_string(record_no) +
                            " in " + path);
        }
        SparseVector v;
        v.name = obj["name"].get<std::string>();
        v.label = obj["label"].get<std::string>();
        int64_t prev_idx = -1;
        for (const auto& e : obj["entries"]) {
            if (!e.is_array() || e.size() != 2) {
                throw DataError("malformed vector entry in record " +
                                std::to_string(record_no) + " in " + path);
            }
            const int64_t idx = e[0].get<int64_t>();
            const double w = e[1].get<double>();
            if (idx <= prev_idx || !std::isfinite(w)) {
                throw DataError("invalid vector entry in record " +
                                std::to_string(record_no) + " in " + path);
            }
            prev_idx = idx;
            v.entries.emplace_back(idx, w);
        }
        vectors.push_back(std::move(v));
    }
    return vectors;
}

}  // namespace docclass::vec
