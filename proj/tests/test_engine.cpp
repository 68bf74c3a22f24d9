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

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "engine.hpp"

using namespace docclass;

namespace {

struct Rec {
    std::string key;
    int value = 0;
};

}  // namespace

TEST_CASE("map_combine equals the sequential fold for every worker count") {
    std::vector<int> records(100);
    std::iota(records.begin(), records.end(), 1);
    for (size_t w : {1, 2, 4, 8}) {
        const long long sum = engine::map_combine(
            std::span<const int>(records), 0LL,
            [](int x, long long& acc) { acc += x; },
            [](long long& into, long long&& from) { into += from; },
            engine::ShardPlan::make(w), [](int x) { return std::to_string(x); });
        CHECK(sum == 5050);
    }
}

TEST_CASE("df counting with two workers equals one worker") {
    // three-document corpus, df computed by hand:
    // d1 {a b}, d2 {b}, d3 {a c} -> df a:2 b:2 c:1
    const std::vector<std::vector<std::string>> docs = {
        {"a", "b", "a"}, {"b"}, {"a", "c"}};
    using Df = std::map<std::string, int>;
    auto count = [](const std::vector<std::string>& terms, Df& df) {
        std::vector<std::string> uniq = terms;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (const auto& t : uniq) ++df[t];
    };
    auto merge = [](Df& into, Df&& from) {
        for (auto& [k, v] : from) into[k] += v;
    };
    auto key = [](const std::vector<std::string>&) { return "doc"; };

    const Df base = engine::map_combine(
        std::span<const std::vector<std::string>>(docs), Df{}, count, merge,
        engine::ShardPlan::make(1), key);
    const Df par = engine::map_combine(
        std::span<const std::vector<std::string>>(docs), Df{}, count, merge,
        engine::ShardPlan::make(2), key);
    CHECK(base == par);
    CHECK(base == Df{{"a", 2}, {"b", 2}, {"c", 1}});
}

TEST_CASE("order-preserving concatenation for any sharding") {
    std::vector<int> records(1000);
    std::iota(records.begin(), records.end(), 0);
    for (size_t shards : {1, 7, 32, 1000}) {
        for (size_t w : {1, 3, 8}) {
            const auto out = engine::map_combine(
                std::span<const int>(records), std::vector<int>{},
                [](int x, std::vector<int>& acc) { acc.push_back(x * 2); },
                [](std::vector<int>& into, std::vector<int>&& from) {
                    into.insert(into.end(), from.begin(), from.end());
                },
                engine::ShardPlan::make(w, shards),
                [](int x) { return std::to_string(x); });
            REQUIRE(out.size() == records.size());
            for (size_t i = 0; i < out.size(); ++i) CHECK(out[i] == 2 * (int)i);
        }
    }
}

TEST_CASE("map errors abort the job and carry shard id and record key") {
    const std::vector<Rec> records = {
        {"/eng/a", 1}, {"/law/x", 2}, {"/law/y", 3}, {"/med/z", 4}};
    auto boom = [](const Rec& r, int& acc) {
        if (r.key == "/law/x") throw std::runtime_error("boom");
        acc += r.value;
    };
    auto merge = [](int& into, int&& from) { into += from; };
    auto key = [](const Rec& r) { return r.key; };
    bool caught = false;
    try {
        engine::map_combine(std::span<const Rec>(records), 0, boom, merge,
                            engine::ShardPlan::make(2, 4), key);
    } catch (const engine::JobError& e) {
        caught = true;
        CHECK(e.record_key() == "/law/x");
        CHECK(std::string(e.what()).find("/law/x") != std::string::npos);
        CHECK(std::string(e.what()).find("boom") != std::string::npos);
    }
    CHECK(caught);
}

TEST_CASE("empty input produces the init value") {
    const std::vector<int> none;
    const int out = engine::map_combine(
        std::span<const int>(none), 41, [](int, int&) {},
        [](int& into, int&& from) { into += from - 41; }, engine::ShardPlan::make(4),
        [](int) { return ""; });
    CHECK(out == 41);
}

TEST_CASE("benchmark produces one row per worker count with medians") {
    const std::vector<size_t> counts = {1, 2};
    const auto rows = engine::benchmark(counts, 3, [](size_t) {
        long long x = 0;
        for (int i = 0; i < 100000; ++i) x += i;
        if (x == 42) std::abort();  // keep the loop observable
    });
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(row.times_ms.size() == 3);
        CHECK(row.median_ms > 0.0);
        std::vector<double> sorted = row.times_ms;
        std::sort(sorted.begin(), sorted.end());
        CHECK(row.median_ms == doctest::Approx(sorted[1]));
    }
    const auto single = engine::benchmark(std::vector<size_t>{1}, 1, [](size_t) {});
    CHECK(single.size() == 1);
}

TEST_CASE("median_of handles even and odd counts") {
    CHECK(engine::median_of({3.0, 1.0, 2.0}) == doctest::Approx(2.0));
    CHECK(engine::median_of({4.0, 1.0, 2.0, 3.0}) == doctest::Approx(2.5));
    CHECK(engine::median_of({}) == 0.0);
}
