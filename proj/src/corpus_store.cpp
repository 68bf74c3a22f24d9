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

#include "corpus_store.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"
#include "text_prep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace docclass::corpus {

namespace {

std::string read_file_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw DataError("read failed: " + p.string());
    return buf.str();
}

void strip_bom(std::string& text) {
    if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
        static_cast<unsigned char>(text[1]) == 0xBB &&
        static_cast<unsigned char>(text[2]) == 0xBF) {
        text.erase(0, 3);
    }
}

}  // namespace

std::string record_to_json(const DocumentRecord& rec) {
    // nlohmann orders object keys alphabetically: key, label, text.
    return json{{"key", rec.key}, {"label", rec.label}, {"text", rec.text}}.dump();
}

IngestResult ingest_directory(const std::string& root, const std::string& out_path,
                              bool fail_fast) {
    const fs::path root_path(root);
    std::error_code ec;
    if (!fs::is_directory(root_path, ec)) {
        throw DataError("corpus root is not a directory: " + root);
    }

    std::vector<fs::path> class_dirs;
    for (const auto& entry : fs::directory_iterator(root_path)) {
        if (entry.is_directory()) class_dirs.push_back(entry.path());
    }
    if (class_dirs.empty()) {
        throw DataError("no class directories under corpus root: " + root);
    }
    std::sort(class_dirs.begin(), class_dirs.end());

    std::vector<DocumentRecord> records;
    size_t skipped = 0;
    for (const auto& class_dir : class_dirs) {
        const std::string label = class_dir.filename().string();
        std::vector<fs::path> files;
        for (const auto& entry : fs::recursive_directory_iterator(class_dir)) {
            if (entry.is_regular_file()) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            std::string text;
            try {
                text = read_file_bytes(file);
            } catch (const DataError& e) {
                if (fail_fast) throw;
                std::cerr << "warning: skipping " << file.string() << ": " << e.what()
                          << "\n";
                ++skipped;
                continue;
            }
            strip_bom(text);
            if (!textprep::valid_utf8(text)) {
                if (fail_fast) throw DataError("invalid UTF-8: " + file.string());
                std::cerr << "warning: skipping " << file.string()
                          << ": invalid UTF-8\n";
                ++skipped;
                continue;
            }
            DocumentRecord rec;
            rec.key = "/" + label + "/" +
                      file.lexically_relative(class_dir).generic_string();
            rec.label = label;
            rec.text = std::move(text);
            records.push_back(std::move(rec));
        }
    }

    std::sort(records.begin(), records.end(),
              [](const DocumentRecord& a, const DocumentRecord& b) { return a.key < b.key; });
    for (size_t i = 1; i < records.size(); ++i) {
        if (records[i].key == records[i - 1].key) {
            throw DataError("duplicate document key: " + records[i].key);
        }
    }

    write_corpus(out_path, records);
    if (skipped > 0) {
        std::cerr << "warning: " << skipped << " file(s) skipped during ingestion\n";
    }
    return IngestResult{out_path, records.size(), skipped};
}

void write_corpus(const std::string& path, std::span<const DocumentRecord> records) {
    for (size_t i = 1; i < records.size(); ++i) {
        if (records[i].key <= records[i - 1].key) {
            throw DataError("corpus records not in strictly ascending key order");
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open corpus file for writing: " + path);
    for (const auto& rec : records) {
        out << record_to_json(rec) << '\n';
    }
    out.flush();
    if (!out) throw DataError("write failed: " + path);
}

std::vector<DocumentRecord> read_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open corpus file: " + path);
    std::vector<DocumentRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const size_t record_no = records.size() + 1;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object() || !obj.contains("key") ||
            !obj.contains("label") || !obj.contains("text") ||
            !obj["key"].is_string() || !obj["label"].is_string() ||
            !obj["text"].is_string()) {
            throw DataError("malformed corpus record " + std::to_string(record_no) +
                            " in " + path);
        }
        DocumentRecord rec;
        rec.key = obj["key"].get<std::string>();
        rec.label = obj["label"].get<std::string>();
        rec.text = obj["text"].get<std::string>();
        if (!records.empty() && rec.key <= records.back().key) {
            throw DataError("corpus record " + std::to_string(record_no) +
                            " out of order in " + path);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<std::string> label_index(std::span<const DocumentRecord> records) {
    if (records.empty()) throw DataError("label index of an empty corpus");
    std::vector<std::string> labels;
    for (const auto& rec : records) labels.push_back(rec.label);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

}  // namespace docclass::corpus
