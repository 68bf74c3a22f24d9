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

#include "evaluator.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

using nlohmann::json;

namespace docclass::eval {

namespace {

void check_shape(const ConfusionMatrix& cm) {
    if (cm.labels.empty() || cm.counts.size() != cm.labels.size()) {
        throw DataError("confusion matrix labels/counts size mismatch");
    }
    for (const auto& row : cm.counts) {
        if (row.size() != cm.labels.size()) {
            throw DataError("confusion matrix is not square");
        }
        for (int64_t c : row) {
            if (c < 0) throw DataError("confusion matrix has a negative count");
        }
    }
}

// Column letters as in the printed matrix legend: a..z, then aa, ab, ...
std::string column_letter(size_t i) {
    std::string s;
    ++i;
    while (i > 0) {
        --i;
        s.insert(s.begin(), static_cast<char>('a' + i % 26));
        i /= 26;
    }
    return s;
}

std::string pct4(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f%%", fraction * 100.0);
    return buf;
}

std::string fixed4(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

}  // namespace

int64_t ConfusionMatrix::total() const {
    int64_t t = 0;
    for (const auto& row : counts)
        for (int64_t c : row) t += c;
    return t;
}

int64_t ConfusionMatrix::trace() const {
    int64_t t = 0;
    for (size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
    return t;
}

std::vector<int64_t> ConfusionMatrix::row_sums() const {
    std::vector<int64_t> sums(counts.size(), 0);
    for (size_t i = 0; i < counts.size(); ++i)
        for (int64_t c : counts[i]) sums[i] += c;
    return sums;
}

std::vector<int64_t> ConfusionMatrix::col_sums() const {
    std::vector<int64_t> sums(counts.size(), 0);
    for (const auto& row : counts)
        for (size_t j = 0; j < row.size(); ++j) sums[j] += row[j];
    return sums;
}

void ConfusionMatrix::add(const std::string& true_label, const std::string& predicted) {
    auto index_of = [&](const std::string& l) -> size_t {
        auto it = std::find(labels.begin(), labels.end(), l);
        if (it != labels.end()) return static_cast<size_t>(it - labels.begin());
        labels.push_back(l);
        for (auto& row : counts) row.push_back(0);
        counts.emplace_back(labels.size(), 0);
        return labels.size() - 1;
    };
    const size_t i = index_of(true_label);
    const size_t j = index_of(predicted);
    ++counts[i][j];
}

Accuracy accuracy(const ConfusionMatrix& cm) {
    check_shape(cm);
    const int64_t total = cm.total();
    if (total == 0) throw DataError("confusion matrix is empty (total = 0)");
    Accuracy a;
    a.correct = cm.trace();
    a.incorrect = total - a.correct;
    a.fraction = static_cast<double>(a.correct) / static_cast<double>(total);
    return a;
}

double kappa(const ConfusionMatrix& cm) {
    check_shape(cm);
    const int64_t total = cm.total();
    if (total == 0) throw DataError("confusion matrix is empty (total = 0)");
    const auto rows = cm.row_sums();
    const auto cols = cm.col_sums();
    const double po = static_cast<double>(cm.trace()) / static_cast<double>(total);
    double expected = 0.0;
    for (size_t i = 0; i < rows.size(); ++i) {
        expected += static_cast<double>(rows[i]) * static_cast<double>(cols[i]);
    }
    const double pe = expected / (static_cast<double>(total) * static_cast<double>(total));
    if (pe == 1.0) return 0.0;
    return (po - pe) / (1.0 - pe);
}

WeightedMetrics weighted_metrics(const ConfusionMatrix& cm) {
    check_shape(cm);
    const int64_t total = cm.total();
    if (total == 0) throw DataError("confusion matrix is empty (total = 0)");
    const auto rows = cm.row_sums();
    const auto cols = cm.col_sums();

    WeightedMetrics m;
    for (size_t i = 0; i < cm.labels.size(); ++i) {
        ClassStats s;
        s.label = cm.labels[i];
        s.support = rows[i];
        const double diag = static_cast<double>(cm.counts[i][i]);
        s.precision = cols[i] > 0 ? diag / static_cast<double>(cols[i]) : 0.0;
        s.recall = rows[i] > 0 ? diag / static_cast<double>(rows[i]) : 0.0;
        s.f1 = (s.precision + s.recall) > 0.0
                   ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
                   : 0.0;
        const double weight = static_cast<double>(rows[i]) / static_cast<double>(total);
        m.precision += weight * s.precision;
        m.recall += weight * s.recall;
        m.f1 += weight * s.f1;
        m.per_class.push_back(std::move(s));
    }
    return m;
}

std::string render_report(const ConfusionMatrix& cm) {
    const Accuracy acc = accuracy(cm);
    const double k = kappa(cm);
    const WeightedMetrics wm = weighted_metrics(cm);
    const auto rows = cm.row_sums();
    const int64_t total = cm.total();

    std::ostringstream out;
    auto stat_line = [&](const std::string& name, const std::string& value) {
        out << name << std::string(name.size() < 37 ? 37 - name.size() : 1, ' ')
            << value << '\n';
    };

    out << "=====\nSummary\n-----\n";
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-36s:%9lld   %s\n",
                  "Correctly Classified Instances",
                  static_cast<long long>(acc.correct), pct4(acc.fraction).c_str());
    out << buf;
    std::snprintf(buf, sizeof(buf), "%-36s:%9lld   %s\n",
                  "Incorrectly Classified Instances",
                  static_cast<long long>(acc.incorrect),
                  pct4(1.0 - acc.fraction).c_str());
    out << buf;
    std::snprintf(buf, sizeof(buf), "%-36s:%9lld\n", "Total Classified Instances",
                  static_cast<long long>(total));
    out << buf;

    out << "\n=====\nConfusion Matrix\n-----\n";
    const size_t n = cm.labels.size();
    std::vector<size_t> widths(n, 0);
    for (size_t j = 0; j < n; ++j) {
        widths[j] = column_letter(j).size();
        for (size_t i = 0; i < n; ++i) {
            widths[j] = std::max(widths[j], std::to_string(cm.counts[i][j]).size());
        }
    }
    size_t total_width = 1;
    for (int64_t r : rows) total_width = std::max(total_width, std::to_string(r).size());
    for (size_t j = 0; j < n; ++j) {
        const std::string letter = column_letter(j);
        out << letter << std::string(widths[j] - letter.size() + 2, ' ');
    }
    out << "<--Classified as\n";
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            const std::string cell = std::to_string(cm.counts[i][j]);
            out << cell << std::string(widths[j] - cell.size() + 2, ' ');
        }
        const std::string row_total = std::to_string(rows[i]);
        out << "|  " << std::string(total_width - row_total.size(), ' ') << row_total
            << "  " << column_letter(i) << " = " << cm.labels[i] << '\n';
    }

    out << "\n=====\nStatistics\n-----\n";
    stat_line("Kappa", fixed4(k));
    stat_line("Accuracy", pct4(acc.fraction));
    stat_line("Weighted precision", fixed4(wm.precision));
    stat_line("Weighted recall", fixed4(wm.recall));
    stat_line("Weighted F1 score", fixed4(wm.f1));
    return out.str();
}

void save_matrix(const ConfusionMatrix& cm, const std::string& path) {
    check_shape(cm);
    json obj;
    obj["labels"] = cm.labels;
    obj["counts"] = cm.counts;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open matrix file for writing: " + path);
    out << obj.dump(2) << '\n';
    out.flush();
    if (!out) throw DataError("write failed: " + path);
}

ConfusionMatrix matrix_from_json_text(const std::string& text) {
    json obj = json::parse(text, nullptr, false);
    if (obj.is_discarded() || !obj.is_object() || !obj.contains("labels") ||
        !obj.contains("counts")) {
        throw DataError("malformed confusion matrix JSON");
    }
    ConfusionMatrix cm;
    try {
        cm.labels = obj["labels"].get<std::vector<std::string>>();
        cm.counts = obj["counts"].get<std::vector<std::vector<int64_t>>>();
    } catch (const json::exception&) {
        throw DataError("malformed confusion matrix JSON");
    }
    check_shape(cm);
    return cm;
}

ConfusionMatrix load_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open matrix file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return matrix_from_json_text(buf.str());
}

}  // namespace docclass::eval
