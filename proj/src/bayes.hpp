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

#ifndef DOCCLASS_BAYES_HPP
#define DOCCLASS_BAYES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "engine.hpp"
#include "evaluator.hpp"
#include "vectorizer.hpp"

namespace docclass::bayes {

enum class Mode { standard, complement };

// Multinomial Naive Bayes model: per-label summed term weights and the
// totals the scoring rules need. Labels are kept in lexicographic order.
struct Model {
    std::vector<std::string> labels;
    // w[c]: (term index, summed weight), sorted by index.
    std::vector<std::vector<std::pair<int64_t, double>>> w;
    std::vector<double> w_c;          // per-label total weight
    std::vector<int64_t> doc_counts;  // per-label training document count
    int64_t vocab_size = 0;
    double alpha = 1.0;
    Mode mode = Mode::standard;

    // Derived on build/load.
    std::unordered_map<int64_t, double> w_t;  // per-term total over all labels
    double w_total = 0.0;
    int64_t total_docs = 0;

    int label_of(const std::string& label) const;
    double weight(size_t label_idx, int64_t term) const;
    void finalize();  // recomputes the derived fields
};

// Aggregates per-label term-weight sums. Deterministic and independent
// of input order and worker count. Requires >= 2 distinct labels and
// non-negative weights.
Model train_nb(std::span<const vec::SparseVector> train, Mode mode, double alpha = 1.0,
               const engine::ShardPlan& plan = engine::ShardPlan{});

// Scores every model label, sorted by score descending with ties broken
// by label order. standard: log prior + sum f_t * log((w_ct+a)/(w_c+a|V|));
// complement: -sum f_t * log((w_t-w_ct+a)/((w_total-w_c)+a|V|)), no prior.
std::vector<std::pair<std::string, double>> classify(const Model& model,
                                                     const vec::SparseVector& v);

// Argmax of classify (first entry of the ranked list).
std::string predict(const Model& model, const vec::SparseVector& v);

// Classifies every test vector into a confusion matrix over
// model.labels plus any unseen test labels (appended, sorted).
eval::ConfusionMatrix test_nb(const Model& model,
                              std::span<const vec::SparseVector> test,
                              const engine::ShardPlan& plan = engine::ShardPlan{});

// Model file: single JSON object, full precision.
void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace docclass::bayes

#endif
