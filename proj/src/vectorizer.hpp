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

#ifndef DOCCLASS_VECTORIZER_HPP
#define DOCCLASS_VECTORIZER_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "engine.hpp"

namespace docclass::vec {

// Term table over a corpus: lexicographically ordered terms, per-term
// document frequencies, and the number of documents N (empty documents
// count toward N).
struct Dictionary {
    std::vector<std::string> terms;
    std::vector<int64_t> df;  // parallel to terms
    std::unordered_map<std::string, int64_t> index;
    int64_t num_docs = 0;

    int64_t lookup(const std::string& term) const {
        auto it = index.find(term);
        return it == index.end() ? -1 : it->second;
    }
};

// Named, labeled sparse vector with strictly increasing indices and no
// zero entries.
struct SparseVector {
    std::string name;
    std::string label;
    std::vector<std::pair<int64_t, double>> entries;
};

enum class SplitMode { bernoulli, exact };

struct SplitSpec {
    int test_pct = 40;  // [0, 100]
    uint64_t seed = 0;
    SplitMode mode = SplitMode::bernoulli;
};

// Builds the dictionary from per-document term lists. df counts
// documents, not occurrences; terms below min_df are pruned. Build is a
// parallel map with an associative merge, so the result is independent
// of worker count and input order.
Dictionary build_dictionary(std::span<const std::vector<std::string>> docs,
                            int min_df = 1,
                            const engine::ShardPlan& plan = engine::ShardPlan{});

// weight(t) = sqrt(f) * (ln(N / (df+1)) + 1) for each in-dictionary term
// with raw count f; non-positive weights are dropped; out-of-dictionary
// terms are skipped. With normalize the vector is scaled to unit L2 norm.
SparseVector vectorize(const std::string& name, const std::string& label,
                       std::span<const std::string> terms, const Dictionary& dict,
                       bool normalize = true);

// The raw term weight before clamping; exposed for tests.
double tfidf_weight(int64_t raw_count, int64_t df, int64_t num_docs);

// Bernoulli mode sends each vector to test with probability
// test_pct/100, decided by one SplitMix64 output seeded with
// fnv1a64(name) XOR seed, so membership depends only on the name. Exact
// mode sends exactly round(n*test_pct/100) vectors, chosen by a seeded
// shuffle of the name-sorted input.
std::pair<std::vector<SparseVector>, std::vector<SparseVector>> split_vectors(
    std::span<const SparseVector> vectors, const SplitSpec& spec);

// True when the name falls in the test partition (bernoulli rule).
bool bernoulli_test_member(const std::string& name, uint64_t seed, int test_pct);

// Dictionary file: "#num_docs=<N>" header then "term<TAB>index<TAB>df".
void save_dictionary(const Dictionary& dict, const std::string& path);
Dictionary load_dictionary(const std::string& path);

// Vector file: JSONL {"name","label","entries":[[index,weight],...]},
// weights printed at 17 significant digits.
void save_vectors(std::span<const SparseVector> vectors, const std::string& path);
std::vector<SparseVector> load_vectors(const std::string& path);
std::string vector_to_json(const SparseVector& v);

}  // namespace docclass::vec

#endif
