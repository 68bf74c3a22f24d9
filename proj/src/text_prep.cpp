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

#include "text_prep.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace docclass::textprep {

namespace detail {
const char* embedded_stopwords_text();  // generated from data/stopwords_tr.txt
const char* embedded_suffixes_text();   // generated from data/suffixes_tr.txt
}  // namespace detail

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point starting at s[i]; advances i past it. Returns
// kInvalid (and advances by one byte) on malformed input.
char32_t decode_utf8(std::string_view s, size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    auto cont = [&](size_t k) {
        return i + k < s.size() &&
               (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    auto bits = [&](size_t k) {
        return static_cast<char32_t>(static_cast<unsigned char>(s[i + k]) & 0x3F);
    };
    if ((b0 & 0xE0) == 0xC0) {
        if (!cont(1)) { ++i; return kInvalid; }
        char32_t c = ((b0 & 0x1Fu) << 6) | bits(1);
        i += 2;
        return c < 0x80 ? kInvalid : c;
    }
    if ((b0 & 0xF0) == 0xE0) {
        if (!cont(1) || !cont(2)) { ++i; return kInvalid; }
        char32_t c = ((b0 & 0x0Fu) << 12) | (bits(1) << 6) | bits(2);
        i += 3;
        if (c < 0x800 || (c >= 0xD800 && c <= 0xDFFF)) return kInvalid;
        return c;
    }
    if ((b0 & 0xF8) == 0xF0) {
        if (!cont(1) || !cont(2) || !cont(3)) { ++i; return kInvalid; }
        char32_t c = ((b0 & 0x07u) << 18) | (bits(1) << 12) | (bits(2) << 6) | bits(3);
        i += 4;
        return (c < 0x10000 || c > 0x10FFFF) ? kInvalid : c;
    }
    ++i;
    return kInvalid;
}

void encode_utf8(char32_t c, std::string& out) {
    if (c < 0x80) {
        out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (c >> 6)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (c >> 12)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (c >> 18)));
        out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
}

// Letter ranges for the scripts this pipeline realistically sees
// (Latin incl. Turkish, Greek, Cyrillic, Hebrew, Arabic). Anything else
// is treated as a separator.
bool is_letter(char32_t c) {
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')) return true;
    if (c < 0x80) return false;
    if (c >= 0x00C0 && c <= 0x00FF) return c != 0x00D7 && c != 0x00F7;
    if (c >= 0x0100 && c <= 0x024F) return true;   // Latin Extended-A/B
    if (c >= 0x0386 && c <= 0x03FF) return c != 0x0387;
    if (c >= 0x0400 && c <= 0x04FF) return true;   // Cyrillic
    if (c >= 0x05D0 && c <= 0x05EA) return true;   // Hebrew
    if (c >= 0x0621 && c <= 0x064A) return true;   // Arabic
    if (c >= 0x1E00 && c <= 0x1EFF) return true;   // Latin Extended Additional
    return false;
}

bool is_apostrophe(char32_t c) { return c == 0x27 || c == 0x2019; }

}  // namespace

char32_t to_lower_tr(char32_t c) {
    if (c >= 'A' && c <= 'Z') return c == 'I' ? 0x0131 : c + 0x20;  // I -> dotless i
    if (c == 0x0130) return 'i';                                    // dotted capital I
    if (c >= 0x00C0 && c <= 0x00DE && c != 0x00D7) return c + 0x20;
    if (c == 0x0178) return 0x00FF;
    if (c >= 0x0100 && c <= 0x0137) return (c % 2 == 0) ? c + 1 : c;
    if (c >= 0x0139 && c <= 0x0148) return (c % 2 == 1) ? c + 1 : c;
    if (c >= 0x014A && c <= 0x0177) return (c % 2 == 0) ? c + 1 : c;
    if (c >= 0x0179 && c <= 0x017E) return (c % 2 == 1) ? c + 1 : c;
    if (c >= 0x0391 && c <= 0x03A9 && c != 0x03A2) return c + 0x20;
    if (c >= 0x0410 && c <= 0x042F) return c + 0x20;
    if (c >= 0x0400 && c <= 0x040F) return c + 0x50;
    return c;
}

size_t codepoint_count(std::string_view s) {
    size_t n = 0;
    for (size_t i = 0; i < s.size();) {
        decode_utf8(s, i);
        ++n;
    }
    return n;
}

bool valid_utf8(std::string_view s) {
    for (size_t i = 0; i < s.size();) {
        if (decode_utf8(s, i) == kInvalid) return false;
    }
    return true;
}

std::vector<std::string> tokenize(std::string_view text, int min_token_len) {
    std::vector<std::string> tokens;
    std::string current;
    size_t current_len = 0;  // code points in current
    bool skipping = false;   // inside the discarded part after an apostrophe

    auto flush = [&] {
        if (current_len >= static_cast<size_t>(min_token_len)) tokens.push_back(current);
        current.clear();
        current_len = 0;
    };

    for (size_t i = 0; i < text.size();) {
        const char32_t c = decode_utf8(text, i);
        if (c != kInvalid && is_letter(c)) {
            if (skipping) continue;
            encode_utf8(to_lower_tr(c), current);
            ++current_len;
        } else if (c != kInvalid && is_apostrophe(c)) {
            if (!current.empty()) {
                flush();
                skipping = true;  // drop the suffix part of the token
            }
        } else {
            skipping = false;
            flush();
        }
    }
    flush();
    return tokens;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const PrepConfig& config) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (!config.stopwords.count(t)) out.push_back(t);
    }
    return out;
}

std::string stem_light(const std::string& token, const PrepConfig& config) {
    std::string stem = token;
    size_t stem_len = codepoint_count(stem);
    for (int strips = 0; strips < config.max_suffix_strip; ++strips) {
        bool stripped = false;
        for (const auto& suffix : config.suffixes) {
            const size_t suffix_len = codepoint_count(suffix);
            if (suffix_len >= stem_len || stem.size() <= suffix.size()) continue;
            const size_t remaining = stem_len - suffix_len;
            const size_t floor = suffix_len == 1 ? 6 : 3;
            if (remaining < floor) continue;
            if (stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
            stem.resize(stem.size() - suffix.size());
            stem_len = remaining;
            stripped = true;
            break;
        }
        if (!stripped) break;
    }
    return stem;
}

std::vector<std::string> preprocess(std::string_view text, const PrepConfig& config) {
    std::vector<std::string> terms =
        remove_stopwords(tokenize(text, config.min_token_len), config);
    if (config.stemming == Stemming::light) {
        for (auto& term : terms) {
            std::string stem = stem_light(term, config);
            if (stem != term && !config.stopwords.count(stem)) term = std::move(stem);
        }
    }
    return terms;
}

std::unordered_set<std::string> parse_stopwords(std::string_view text) {
    std::unordered_set<std::string> words;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) words.insert(line);
    }
    return words;
}

std::vector<std::string> parse_suffixes(std::string_view text) {
    std::vector<std::string> suffixes;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) suffixes.push_back(line);
    }
    std::stable_sort(suffixes.begin(), suffixes.end(),
                     [](const std::string& a, const std::string& b) {
                         return codepoint_count(a) > codepoint_count(b);
                     });
    return suffixes;
}

std::unordered_set<std::string> load_stopwords_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open stop-word file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_stopwords(buf.str());
}

std::vector<std::string> load_suffixes_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open suffix file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_suffixes(buf.str());
}

PrepConfig prep_config_default() {
    PrepConfig config;
    config.stopwords = parse_stopwords(detail::embedded_stopwords_text());
    config.suffixes = parse_suffixes(detail::embedded_suffixes_text());
    return config;
}

}  // namespace docclass::textprep
