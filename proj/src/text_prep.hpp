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

#ifndef DOCCLASS_TEXT_PREP_HPP
#define DOCCLASS_TEXT_PREP_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace docclass::textprep {

enum class Stemming { off, light };

// Everything the preprocessing stages need. All fields have usable
// defaults; prep_config_default() also fills in the shipped Turkish
// stop-word list and suffix table.
struct PrepConfig {
    std::unordered_set<std::string> stopwords;
    std::vector<std::string> suffixes;  // sorted by code-point length, longest first
    int min_token_len = 2;
    Stemming stemming = Stemming::light;
    int max_suffix_strip = 4;
};

// Config with the embedded Turkish stop-word list and suffix table.
PrepConfig prep_config_default();

// One lowercase term per line. Blank lines ignored.
std::unordered_set<std::string> load_stopwords_file(const std::string& path);

// One suffix per line; re-sorted by code-point length descending on load.
std::vector<std::string> load_suffixes_file(const std::string& path);

std::unordered_set<std::string> parse_stopwords(std::string_view text);
std::vector<std::string> parse_suffixes(std::string_view text);

// Turkish-aware case folding for a single code point ('I' -> U+0131,
// U+0130 -> 'i'; Latin, Greek and Cyrillic otherwise).
char32_t to_lower_tr(char32_t c);

// Code points per UTF-8 string (assumes valid input).
size_t codepoint_count(std::string_view s);

// True when the whole byte range is well-formed UTF-8 (rejects overlong
// encodings, surrogates and values beyond U+10FFFF).
bool valid_utf8(std::string_view s);

// Splits on anything that is not a letter and not an apostrophe,
// lowercases with Turkish case mapping, drops tokens shorter than
// min_token_len. An apostrophe ends the token and everything up to the
// next non-letter is discarded.
std::vector<std::string> tokenize(std::string_view text, int min_token_len = 2);

// Order-preserving exact-match filter. Tokens must already be lowercase.
std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const PrepConfig& config);

// Light rule-table stemmer. Repeatedly removes the longest matching
// suffix, at most max_suffix_strip times. A strip must leave at least
// three code points, and at least six when the suffix is a single
// letter (keeps short roots like "veri" intact). The loop stops at a
// fixed point, so stemming is idempotent.
std::string stem_light(const std::string& token, const PrepConfig& config);

// tokenize -> remove_stopwords -> stem_light. A stem that lands in the
// stop-word list reverts to its unstemmed token so no output term is
// ever a stop word.
std::vector<std::string> preprocess(std::string_view text, const PrepConfig& config);

}  // namespace docclass::textprep

#endif
