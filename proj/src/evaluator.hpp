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

#ifndef DOCCLASS_EVALUATOR_HPP
#define DOCCLASS_EVALUATOR_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace docclass::eval {

// L x L counts; rows are true labels, columns predicted labels.
struct ConfusionMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<int64_t>> counts;

    int64_t total() const;
    int64_t trace() const;
    std::vector<int64_t> row_sums() const;
    std::vector<int64_t> col_sums() const;
    void add(const std::string& true_label, const std::string& predicted);
};

struct Accuracy {
    int64_t correct = 0;
    int64_t incorrect = 0;
    double fraction = 0.0;
};

struct ClassStats {
    std::string label;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    int64_t support = 0;
};

struct WeightedMetrics {
    std::vector<ClassStats> per_class;
    double precision = 0.0;
    double recall = 0.0;  // equals accuracy (support-weighted recall identity)
    double f1 = 0.0;
};

// correct = trace, fraction = trace/total. Errors when total is zero.
Accuracy accuracy(const ConfusionMatrix& cm);

// Cohen's kappa (Po - Pe) / (1 - Pe); 0 when Pe = 1.
double kappa(const ConfusionMatrix& cm);

// Per-class precision/recall/F1 with zero-denominator convention 0, and
// their support-weighted averages.
WeightedMetrics weighted_metrics(const ConfusionMatrix& cm);

// Summary / Confusion Matrix / Statistics sections. Deterministic byte
// output for a given matrix.
std::string render_report(const ConfusionMatrix& cm);

// Matrix file: JSON {"labels":[...],"counts":[[...]]}.
void save_matrix(const ConfusionMatrix& cm, const std::string& path);
ConfusionMatrix load_matrix(const std::string& path);
ConfusionMatrix matrix_from_json_text(const std::string& text);

}  // namespace docclass::eval

#endif
