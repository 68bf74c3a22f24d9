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

#include "bayes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

using nlohmann::json;

namespace docclass::bayes {

int Model::label_of(const std::string& label) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) return -1;
    return static_cast<int>(it - labels.begin());
}

double Model::weight(size_t label_idx, int64_t term) const {
    const auto& entries = w[label_idx];
    auto it = std::lower_bound(
        entries.begin(), entries.end(), term,
        [](const std::pair<int64_t, double>& e, int64_t t) { return e.first < t; });
    return (it != entries.end() && it->first == term) ? it->second : 0.0;
}

void Model::finalize() {
    w_t.clear();
    w_total = 0.0;
    total_docs = 0;
    // Label-order folds keep the derived sums byte-reproducible.
    for (size_t c = 0; c < labels.size(); ++c) {
        for (const auto& [term, weight] : w[c]) {
            w_t[term] += weight;
        }
        w_total += w_c[c];
        total_docs += doc_counts[c];
    }
}

Model train_nb(std::span<const vec::SparseVector> train, Mode mode, double alpha,
               const engine::ShardPlan& plan) {
    if (train.empty()) throw DataError("cannot train on an empty vector set");
    if (!(alpha > 0.0)) throw UsageError("alpha must be positive");

    struct Partial {
        // label -> (term -> summed weight); ordered maps so shard merges
        // fold in a fixed order.
        std::map<std::string, std::map<int64_t, double>> sums;
        std::map<std::string, int64_t> doc_counts;
        int64_t max_index = -1;
    };
    auto accumulate = [](const vec::SparseVector& v, Partial& p) {
        if (v.label.empty()) throw DataError("training vector without a label");
        auto& sums = p.sums[v.label];
        for (const auto& [idx, weight] : v.entries) {
            if (weight < 0.0 || !std::isfinite(weight)) {
                throw DataError("negative or non-finite weight in training vector");
            }
            sums[idx] += weight;
            p.max_index = std::max(p.max_index, idx);
        }
        ++p.doc_counts[v.label];
    };
    auto merge = [](Partial& into, Partial&& from) {
        for (auto& [label, sums] : from.sums) {
            auto& dst = into.sums[label];
            for (auto& [idx, weight] : sums) dst[idx] += weight;
        }
        for (auto& [label, count] : from.doc_counts) into.doc_counts[label] += count;
        into.max_index = std::max(into.max_index, from.max_index);
    };
    Partial merged =
        engine::map_combine(train, Partial{}, accumulate, merge, plan,
                            [](const vec::SparseVector& v) { return v.name; });

    if (merged.doc_counts.size() < 2) {
        throw DataError("training set must contain at least 2 distinct labels");
    }

    Model model;
    model.alpha = alpha;
    model.mode = mode;
    model.vocab_size = merged.max_index + 1;
    for (auto& [label, sums] : merged.doc_counts) model.labels.push_back(label);
    for (const auto& label : model.labels) {
        auto& sums = merged.sums[label];
        std::vector<std::pair<int64_t, double>> entries(sums.begin(), sums.end());
        double total = 0.0;
        for (const auto& [idx, weight] : entries) total += weight;
        model.w.push_back(std::move(entries));
        model.w_c.push_back(total);
        model.doc_counts.push_back(merged.doc_counts[label]);
    }
    model.finalize();
    return model;
}

std::vector<std::pair<std::string, double>> classify(const Model& model,
                                                     const vec::SparseVector& v) {
    const size_t num_labels = model.labels.size();
    std::vector<double> scores(num_labels, 0.0);
    const double alpha = model.alpha;
    const double vocab = static_cast<double>(model.vocab_size);

    if (model.mode == Mode::standard) {
        for (size_t c = 0; c < num_labels; ++c) {
            double score = std::log(static_cast<double>(model.doc_counts[c]) /
                                    static_cast<double>(model.total_docs));
            const double log_denom = std::log(model.w_c[c] + alpha * vocab);
            for (const auto& [term, f] : v.entries) {
                score += f * (std::log(model.weight(c, term) + alpha) - log_denom);
            }
            scores[c] = score;
        }
    } else {
        for (size_t c = 0; c < num_labels; ++c) {
            double score = 0.0;
            const double log_denom =
                std::log((model.w_total - model.w_c[c]) + alpha * vocab);
            for (const auto& [term, f] : v.entries) {
                auto it = model.w_t.find(term);
                const double term_total = it == model.w_t.end() ? 0.0 : it->second;
                score -= f * (std::log(term_total - model.weight(c, term) + alpha) -
                              log_denom);
            }
            scores[c] = score;
        }
    }

    std::vector<std::pair<std::string, double>> ranked;
    ranked.reserve(num_labels);
    std::vector<size_t> order(num_labels);
    for (size_t i = 0; i < num_labels; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return scores[a] > scores[b];  // stable: ties keep label order
    });
    for (size_t i : order) ranked.emplace_back(model.labels[i], scores[i]);
    return ranked;
}

std::string predict(const Model& model, const vec::SparseVector& v) {
    return classify(model, v).front().first;
}

eval::ConfusionMatrix test_nb(const Model& model,
                              std::span<const vec::SparseVector> test,
                              const engine::ShardPlan& plan) {
    using Counts = std::map<std::pair<std::string, std::string>, int64_t>;
    auto score_one = [&](const vec::SparseVector& v, Counts& counts) {
        ++counts[{v.label, predict(model, v)}];
    };
    auto merge = [](Counts& into, Counts&& from) {
        for (auto& [key, count] : from) into[key] += count;
    };
    Counts counts =
        engine::map_combine(test, Counts{}, score_one, merge, plan,
                            [](const vec::SparseVector& v) { return v.name; });

    eval::ConfusionMatrix cm;
    cm.labels = model.labels;
    std::set<std::string> extra;
    for (const auto& [key, count] : counts) {
        if (model.label_of(key.first) < 0) extra.insert(key.first);
    }
    cm.labels.insert(cm.labels.end(), extra.begin(), extra.end());
    cm.counts.assign(cm.labels.size(), std::vector<int64_t>(cm.labels.size(), 0));
    auto index_of = [&](const std::string& l) {
        return static_cast<size_t>(
            std::find(cm.labels.begin(), cm.labels.end(), l) - cm.labels.begin());
    };
    for (const auto& [key, count] : counts) {
        cm.counts[index_of(key.first)][index_of(key.second)] += count;
    }
    return cm;
}

void save_model(const Model& model, const std::string& path) {
    json obj;
    obj["labels"] = model.labels;
    obj["alpha"] = model.alpha;
    obj["mode"] = model.mode == Mode::complement ? "complement" : "standard";
    obj["vocab_size"] = model.vocab_size;
    obj["doc_counts"] = model.doc_counts;
    obj["w_c"] = model.w_c;
    json w = json::array();
    for (const auto& entries : model.w) {
        json label_entries = json::array();
        for (const auto& [idx, weight] : entries) {
            label_entries.push_back(json::array({idx, weight}));
        }
        w.push_back(std::move(label_entries));
    }
    obj["w"] = std::move(w);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open model file for writing: " + path);
    out << obj.dump() << '\n';
    out.flush();
    if (!out) throw DataError("write failed: " + path);
}

Model load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    json obj = json::parse(buf.str(), nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
        throw DataError("malformed model file: " + path);
    }
    Model model;
    try {
        model.labels = obj.at("labels").get<std::vector<std::string>>();
        model.alpha = obj.at("alpha").get<double>();
        const auto mode = obj.at("mode").get<std::string>();
        if (mode != "standard" && mode != "complement") {
            throw DataError("unknown model mode: " + mode);
        }
        model.mode = mode == "complement" ? Mode::complement : Mode::standard;
        model.vocab_size = obj.at("vocab_size").get<int64_t>();
        model.doc_counts = obj.at("doc_counts").get<std::vector<int64_t>>();
        model.w_c = obj.at("w_c").get<std::vector<double>>();
        for (const auto& label_entries : obj.at("w")) {
            std::vector<std::pair<int64_t, double>> entries;
            for (const auto& e : label_entries) {
                entries.emplace_back(e.at(0).get<int64_t>(), e.at(1).get<double>());
            }
            model.w.push_back(std::move(entries));
        }
    } catch (const json::exception& e) {
        throw DataError("malformed model file " + path + ": " + e.what());
    }
    if (model.w.size() != model.labels.size() || model.w_c.size() != model.labels.size() ||
        model.doc_counts.size() != model.labels.size() || model.labels.size() < 2 ||
        !std::is_sorted(model.labels.begin(), model.labels.end())) {
        throw DataError("inconsistent model file: " + path);
    }
    for (size_t c = 0; c < model.labels.size(); ++c) {
        double total = 0.0;
        int64_t prev = -1;
        for (const auto& [idx, weight] : model.w[c]) {
            if (idx <= prev || weight < 0.0 || !std::isfinite(weight)) {
                throw DataError("invalid term weights in model file: " + path);
            }
            prev = idx;
            total += weight;
        }
        const double scale = std::max(1.0, std::fabs(model.w_c[c]));
        if (std::fabs(total - model.w_c[c]) > 1e-6 * scale) {
            throw DataError("per-label totals disagree with term sums in model file: " +
                            path);
        }
    }
    model.finalize();
    return model;
}

}  // namespace docclass::bayes
