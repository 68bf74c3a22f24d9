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

#ifndef DOCCLASS_CORPUS_STORE_HPP
#define DOCCLASS_CORPUS_STORE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace docclass::corpus {

// One labeled document. key is "/<label>/<relative-path>"; text is the
// UTF-8 body with any leading BOM already stripped.
struct DocumentRecord {
    std::string key;
    std::string label;
    std::string text;
};

struct IngestResult {
    std::string path;
    size_t record_count = 0;
    size_t skipped = 0;  // unreadable or invalid-UTF-8 files (fail_fast off)
};

// Walks a directory-per-class tree and writes one JSONL record per
// readable file, sorted by key. Each immediate subdirectory of root is a
// class; nested directories below that are flattened into the key.
IngestResult ingest_directory(const std::string& root, const std::string& out_path,
                              bool fail_fast);

// Loads a corpus file written by ingest_directory/write_corpus. A
// malformed line raises DataError naming the 1-based record number.
std::vector<DocumentRecord> read_corpus(const std::string& path);

// Serializes records as JSONL. Records must already be sorted by key
// with no duplicates.
void write_corpus(const std::string& path, std::span<const DocumentRecord> records);

std::string record_to_json(const DocumentRecord& rec);

// Distinct labels, sorted lexicographically. Errors on an empty corpus.
std::vector<std::string> label_index(std::span<const DocumentRecord> records);

}  // namespace docclass::corpus

#endif
