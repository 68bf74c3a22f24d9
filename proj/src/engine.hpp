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

#ifndef DOCCLASS_ENGINE_HPP
#define DOCCLASS_ENGINE_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"

namespace docclass::engine {

// Shard count is fixed independently of the worker count: partial
// results are folded in shard order, so the floating-point merge order
// (and therefore every output byte) is identical for any number of
// workers.
inline constexpr size_t kDefaultShards = 32;

struct ShardPlan {
    size_t num_shards = kDefaultShards;
    size_t workers = 1;

    static ShardPlan make(size_t workers, size_t num_shards = kDefaultShards) {
        ShardPlan plan;
        plan.workers = std::max<size_t>(1, workers);
        plan.num_shards = std::max<size_t>(1, num_shards);
        return plan;
    }
};

// Map failure, annotated with where it happened.
class JobError : public DataError {
public:
    JobError(size_t shard, std::string record_key, const std::string& what)
        : DataError("shard " + std::to_string(shard) + ", record " + record_key +
                    ": " + what),
          shard_(shard),
          record_key_(std::move(record_key)) {}

    size_t shard() const { return shard_; }
    const std::string& record_key() const { return record_key_; }

private:
    size_t shard_;
    std::string record_key_;
};

// Runs map_fn over contiguous shards of records on plan.workers threads
// and folds the per-shard partials in shard order. combine_fn must be
// associative; the result then equals the sequential left-fold of the
// input for every worker count. key_of(record) labels error reports.
template <class Rec, class Partial, class MapFn, class CombineFn, class KeyFn>
Partial map_combine(std::span<const Rec> records, Partial init, MapFn map_fn,
                    CombineFn combine_fn, const ShardPlan& plan, KeyFn key_of) {
    const size_t n = records.size();
    const size_t num_shards = std::max<size_t>(1, plan.num_shards);
    const size_t workers = std::min(std::max<size_t>(1, plan.workers), num_shards);

    std::vector<std::optional<Partial>> partials(num_shards);
    struct Failure {
        size_t shard;
        std::string key;
        std::string what;
    };
    std::vector<std::optional<Failure>> failures(num_shards);
    std::atomic<bool> aborted{false};

    auto shard_begin = [&](size_t s) { return s * n / num_shards; };

    auto run_shard = [&](size_t s) {
        Partial local = init;
        const size_t begin = shard_begin(s);
        const size_t end = shard_begin(s + 1);
        for (size_t i = begin; i < end; ++i) {
            if (aborted.load(std::memory_order_relaxed)) return;
            try {
                map_fn(records[i], local);
            } catch (const std::exception& e) {
                failures[s] = Failure{s, std::string(key_of(records[i])), e.what()};
                aborted.store(true, std::memory_order_relaxed);
                return;
            }
        }
        partials[s] = std::move(local);
    };

    if (workers <= 1) {
        for (size_t s = 0; s < num_shards && !aborted; ++s) run_shard(s);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const size_t s = next.fetch_add(1);
                    if (s >= num_shards) return;
                    run_shard(s);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    for (const auto& failure : failures) {
        if (failure) throw JobError(failure->shard, failure->key, failure->what);
    }
    Partial result = std::move(init);
    for (auto& partial : partials) {
        if (partial) combine_fn(result, std::move(*partial));
    }
    return result;
}

struct BenchRow {
    size_t workers = 1;
    std::vector<double> times_ms;  // one entry per repetition
    double median_ms = 0.0;
};

inline double median_of(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const size_t mid = xs.size() / 2;
    return xs.size() % 2 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

// Times stage(workers) for each worker count, repetitions times each.
inline std::vector<BenchRow> benchmark(std::span<const size_t> worker_counts,
                                       size_t repetitions,
                                       const std::function<void(size_t)>& stage) {
    std::vector<BenchRow> rows;
    for (size_t w : worker_counts) {
        BenchRow row;
        row.workers = w;
        for (size_t rep = 0; rep < std::max<size_t>(1, repetitions); ++rep) {
            const auto start = std::chrono::steady_clock::now();
            stage(w);
            const auto stop = std::chrono::steady_clock::now();
            row.times_ms.push_back(
                std::chrono::duration<double, std::milli>(stop - start).count());
        }
        row.median_ms = median_of(row.times_ms);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace docclass::engine

#endif
