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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "errors.hpp"
#include "evaluator.hpp"
#include "hashing.hpp"
#include "support/published_matrices.hpp"
#include "support/temp_dir.hpp"

using namespace docclass;
using testsupport::TempDir;

namespace {

eval::ConfusionMatrix random_matrix(SplitMix64& rng) {
    const size_t n = 2 + rng.next_below(5);
    eval::ConfusionMatrix cm;
    for (size_t i = 0; i < n; ++i) cm.labels.push_back("l" + std::to_string(i));
    cm.counts.assign(n, std::vector<int64_t>(n, 0));
    for (auto& row : cm.counts)
        for (auto& cell : row) cell = static_cast<int64_t>(rng.next_below(40));
    // guarantee a non-zero total
    cm.counts[0][0] += 1;
    return cm;
}

eval::ConfusionMatrix permuted(const eval::ConfusionMatrix& cm,
                               const std::vector<size_t>& perm) {
    eval::ConfusionMatrix out;
    const size_t n = cm.labels.size();
    out.labels.resize(n);
    out.counts.assign(n, std::vector<int64_t>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        out.labels[i] = cm.labels[perm[i]];
        for (size_t j = 0; j < n; ++j) out.counts[i][j] = cm.counts[perm[i]][perm[j]];
    }
    return out;
}

}  // namespace

TEST_CASE("accuracy on the first published matrix") {
    const auto cm = fixtures::matrix_run1();
    const auto a = eval::accuracy(cm);
    CHECK(a.correct == 17116);
    CHECK(a.correct + a.incorrect == 19066);
    CHECK(a.fraction * 100.0 == doctest::Approx(89.7724).epsilon(1e-6));
}

TEST_CASE("accuracy on the second published matrix") {
    const auto cm = fixtures::matrix_run2();
    const auto a = eval::accuracy(cm);
    CHECK(a.correct == 17445);
    CHECK(a.correct + a.incorrect == 19069);
    CHECK(a.fraction * 100.0 == doctest::Approx(91.4836).epsilon(1e-6));
}

TEST_CASE("accuracy is total on degenerate matrices") {
    eval::ConfusionMatrix diag;
    diag.labels = {"a", "b", "c"};
    diag.counts = {{5, 0, 0}, {0, 5, 0}, {0, 0, 5}};
    CHECK(eval::accuracy(diag).fraction == doctest::Approx(1.0));

    eval::ConfusionMatrix zero;
    zero.labels = {"a"};
    zero.counts = {{0}};
    CHECK_THROWS_AS(eval::accuracy(zero), DataError);
    CHECK_THROWS_AS(eval::kappa(zero), DataError);
    CHECK_THROWS_AS(eval::weighted_metrics(zero), DataError);
}

TEST_CASE("kappa matches the hand-computed value for matrix 1") {
    // independent hand computation from the printed marginals gives
    // 0.862532175177; the original report shows 0.8611 (variant unknown)
    CHECK(eval::kappa(fixtures::matrix_run1()) ==
          doctest::Approx(0.862532175177).epsilon(1e-9));
}

TEST_CASE("kappa conventions") {
    eval::ConfusionMatrix perm;
    perm.labels = {"a", "b", "c"};
    perm.counts = {{7, 0, 0}, {0, 3, 0}, {0, 0, 9}};
    CHECK(eval::kappa(perm) == doctest::Approx(1.0));

    eval::ConfusionMatrix chance;
    chance.labels = {"a", "b"};
    chance.counts = {{25, 25}, {25, 25}};
    CHECK(eval::kappa(chance) == doctest::Approx(0.0));

    // single-label matrix: Pe = 1 convention
    eval::ConfusionMatrix one;
    one.labels = {"a"};
    one.counts = {{3}};
    CHECK(eval::kappa(one) == 0.0);
}

TEST_CASE("weighted metrics match the first published statistics block") {
    const auto wm = eval::weighted_metrics(fixtures::matrix_run1());
    CHECK(wm.precision == doctest::Approx(0.9222).epsilon(0.0005));
    CHECK(wm.recall == doctest::Approx(0.8977).epsilon(0.0005));
    CHECK(wm.f1 == doctest::Approx(0.9064).epsilon(0.0005));
    // the near-zero "law" row exercises the ordinary formulas
    const auto& law = wm.per_class[1];
    CHECK(law.label == "law");
    CHECK(law.support == 41);
    CHECK(law.recall == doctest::Approx(1.0 / 41.0).epsilon(1e-12));
}

TEST_CASE("weighted metrics match the second published statistics block") {
    const auto wm = eval::weighted_metrics(fixtures::matrix_run2());
    CHECK(wm.precision == doctest::Approx(0.9218).epsilon(0.0005));
    CHECK(wm.recall == doctest::Approx(0.9148).epsilon(0.0005));
    CHECK(wm.f1 == doctest::Approx(0.9166).epsilon(0.0005));
}

TEST_CASE("diagonal matrix scores 1.0 everywhere") {
    eval::ConfusionMatrix diag;
    diag.labels = {"x", "y"};
    diag.counts = {{4, 0}, {0, 6}};
    const auto wm = eval::weighted_metrics(diag);
    CHECK(wm.precision == doctest::Approx(1.0));
    CHECK(wm.recall == doctest::Approx(1.0));
    CHECK(wm.f1 == doctest::Approx(1.0));
    for (const auto& s : wm.per_class) {
        CHECK(s.precision == doctest::Approx(1.0));
        CHECK(s.f1 == doctest::Approx(1.0));
    }
}

TEST_CASE("zero-denominator conventions yield zero stats") {
    eval::ConfusionMatrix cm;
    cm.labels = {"a", "b"};
    // nothing is ever predicted as b, and no true b exists
    cm.counts = {{5, 0}, {0, 0}};
    const auto wm = eval::weighted_metrics(cm);
    CHECK(wm.per_class[1].precision == 0.0);
    CHECK(wm.per_class[1].recall == 0.0);
    CHECK(wm.per_class[1].f1 == 0.0);
}

TEST_CASE("weighted recall equals accuracy on random matrices") {
    SplitMix64 rng(42);
    for (int round = 0; round < 100; ++round) {
        const auto cm = random_matrix(rng);
        const double acc = eval::accuracy(cm).fraction;
        const double wrec = eval::weighted_metrics(cm).recall;
        CHECK(std::fabs(acc - wrec) <= 1e-12);
    }
}

TEST_CASE("kappa reaches 1 exactly when the off-diagonal is empty") {
    SplitMix64 rng(77);
    for (int round = 0; round < 100; ++round) {
        auto cm = random_matrix(rng);
        const double k = eval::kappa(cm);
        CHECK(k <= 1.0 + 1e-12);
        int64_t off_diag = 0;
        for (size_t i = 0; i < cm.counts.size(); ++i)
            for (size_t j = 0; j < cm.counts.size(); ++j)
                if (i != j) off_diag += cm.counts[i][j];
        if (off_diag > 0) CHECK(k < 1.0);

        // zero the off-diagonal: perfect agreement (unless Pe = 1)
        for (size_t i = 0; i < cm.counts.size(); ++i)
            for (size_t j = 0; j < cm.counts.size(); ++j)
                if (i != j) cm.counts[i][j] = 0;
        cm.counts[1][1] += 1;  // keep at least two non-empty classes
        const double kd = eval::kappa(cm);
        CHECK(kd == doctest::Approx(1.0));
    }
}

TEST_CASE("metrics are invariant under label permutation and scaling") {
    SplitMix64 rng(4242);
    for (int round = 0; round < 100; ++round) {
        const auto cm = random_matrix(rng);
        const size_t n = cm.labels.size();
        std::vector<size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (size_t i = n - 1; i > 0; --i) {
            std::swap(perm[i], perm[rng.next_below(i + 1)]);
        }
        const auto cm_perm = permuted(cm, perm);
        CHECK(eval::accuracy(cm_perm).fraction ==
              doctest::Approx(eval::accuracy(cm).fraction).epsilon(1e-12));
        CHECK(eval::kappa(cm_perm) == doctest::Approx(eval::kappa(cm)).epsilon(1e-12));
        const auto wm = eval::weighted_metrics(cm);
        const auto wm_perm = eval::weighted_metrics(cm_perm);
        CHECK(wm_perm.precision == doctest::Approx(wm.precision).epsilon(1e-12));
        CHECK(wm_perm.recall == doctest::Approx(wm.recall).epsilon(1e-12));
        CHECK(wm_perm.f1 == doctest::Approx(wm.f1).epsilon(1e-12));

        auto scaled = cm;
        const int64_t k = 1 + static_cast<int64_t>(rng.next_below(9));
        for (auto& row : scaled.counts)
            for (auto& cell : row) cell *= k;
        CHECK(eval::accuracy(scaled).fraction ==
              doctest::Approx(eval::accuracy(cm).fraction).epsilon(1e-12));
        CHECK(eval::kappa(scaled) == doctest::Approx(eval::kappa(cm)).epsilon(1e-12));
        const auto wm_scaled = eval::weighted_metrics(scaled);
        CHECK(wm_scaled.precision == doctest::Approx(wm.precision).epsilon(1e-12));
        CHECK(wm_scaled.f1 == doctest::Approx(wm.f1).epsilon(1e-12));
    }
}

TEST_CASE("report carries the Summary, matrix and Statistics sections") {
    const std::string report = eval::render_report(fixtures::matrix_run1());
    CHECK(report.find("Summary") != std::string::npos);
    CHECK(report.find("Confusion Matrix") != std::string::npos);
    CHECK(report.find("Statistics") != std::string::npos);
    CHECK(report.find("17116") != std::string::npos);
    CHECK(report.find("89.7724%") != std::string::npos);
    CHECK(report.find("<--Classified as") != std::string::npos);
    CHECK(report.find("a = engineering") != std::string::npos);
    CHECK(report.find("e = social") != std::string::npos);
    CHECK(report.find("0.9222") != std::string::npos);  // weighted precision
    CHECK(report.find("0.9064") != std::string::npos);  // weighted F1
    // the toolchain's unexplained reliability lines are not reproduced
    CHECK(report.find("Reliability") == std::string::npos);
    // deterministic bytes
    CHECK(report == eval::render_report(fixtures::matrix_run1()));
}

TEST_CASE("report of a 1x1 matrix uses the degenerate conventions") {
    eval::ConfusionMatrix one;
    one.labels = {"only"};
    one.counts = {{3}};
    const std::string report = eval::render_report(one);
    CHECK(report.find("100.0000%") != std::string::npos);
    CHECK(report.find("Kappa") != std::string::npos);
    CHECK(report.find("0.0000") != std::string::npos);
}

TEST_CASE("report of an all-zero matrix propagates the accuracy error") {
    eval::ConfusionMatrix zero;
    zero.labels = {"a", "b"};
    zero.counts = {{0, 0}, {0, 0}};
    CHECK_THROWS_AS(eval::render_report(zero), DataError);
}

TEST_CASE("matrix JSON roundtrip") {
    TempDir tmp;
    const auto cm = fixtures::matrix_run1();
    eval::save_matrix(cm, tmp.str("cm.json"));
    const auto loaded = eval::load_matrix(tmp.str("cm.json"));
    CHECK(loaded.labels == cm.labels);
    CHECK(loaded.counts == cm.counts);
    CHECK_THROWS_AS(eval::load_matrix(tmp.str("missing.json")), DataError);
    CHECK_THROWS_AS(eval::matrix_from_json_text("{\"labels\":[\"a\"]}"), DataError);
    CHECK_THROWS_AS(eval::matrix_from_json_text("not json"), DataError);
    // ragged counts
    CHECK_THROWS_AS(
        eval::matrix_from_json_text("{\"labels\":[\"a\",\"b\"],\"counts\":[[1],[2,3]]}"),
        DataError);
}

TEST_CASE("confusion accumulation by addition") {
    eval::ConfusionMatrix cm;
    cm.labels = {"a", "b"};
    cm.counts = {{0, 0}, {0, 0}};
    cm.add("a", "a");
    cm.add("a", "b");
    cm.add("b", "b");
    cm.add("c", "a");  // unseen true label extends the matrix
    CHECK(cm.labels.size() == 3);
    CHECK(cm.counts[0][0] == 1);
    CHECK(cm.counts[0][1] == 1);
    CHECK(cm.counts[2][0] == 1);
    CHECK(cm.total() == 4);
}
