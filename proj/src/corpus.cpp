// Copyright 2026 The Moralscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "moralscope/corpus.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <set>
#include <string_view>
#include <unordered_map>

#include "moralscope/errors.hpp"

namespace moralscope {
namespace {

bool contains_url(std::string_view token) {
  std::string lower(token);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  });
  return lower.find("http://") != std::string::npos ||
         lower.find("https://") != std::string::npos ||
         lower.find("www.") != std::string::npos;
}

// Splits on Unicode whitespace. Invalid UTF-8 bytes are kept in the token and
// later discarded as non-letters.
std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> out;
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  int32_t start = -1;
  while (i < length) {
    const int32_t at = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    const bool space = c >= 0 && u_isUWhiteSpace(c);
    if (space) {
      if (start >= 0) out.push_back(text.substr(start, at - start));
      start = -1;
    } else if (start < 0) {
      start = at;
    }
  }
  if (start >= 0) out.push_back(text.substr(start));
  return out;
}

void emit(std::string& piece, std::size_t& length, const CleaningConfig& config,
          std::vector<std::string>& tokens) {
  if (length >= config.min_token_len && !config.stopwords.contains(piece) &&
      !config.query_words.contains(piece)) {
    tokens.push_back(piece);
  }
  piece.clear();
  length = 0;
}

// Keeps letters (lowercased if requested), drops '#', and treats every other
// code point as a token boundary.
void split_letters(std::string_view raw, const CleaningConfig& config,
                   std::vector<std::string>& tokens) {
  const auto* s = reinterpret_cast<const uint8_t*>(raw.data());
  const auto length = static_cast<int32_t>(raw.size());
  std::string piece;
  std::size_t piece_len = 0;
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c == '#') continue;
    if (c >= 0 && u_isalpha(c)) {
      if (config.lowercase) c = u_tolower(c);
      char buffer[U8_MAX_LENGTH];
      int32_t n = 0;
      U8_APPEND_UNSAFE(buffer, n, c);
      piece.append(buffer, static_cast<std::size_t>(n));
      ++piece_len;
    } else if (!piece.empty()) {
      emit(piece, piece_len, config, tokens);
    }
  }
  if (!piece.empty()) emit(piece, piece_len, config, tokens);
}

std::optional<std::string> json_id(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return value.dump();
  return std::nullopt;
}

}  // namespace

CleaningConfig CleaningConfig::english(
    std::unordered_set<std::string> query_words) {
  CleaningConfig config;
  const auto& words = default_stopwords();
  config.stopwords.insert(words.begin(), words.end());
  config.query_words = std::move(query_words);
  return config;
}

void CleaningConfig::validate() const {
  if (min_token_len < 1) throw ConfigError("min_token_len must be >= 1");
}

std::unordered_set<std::string> load_stopwords(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stopword file " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (line.empty() || line.front() == '#') continue;
    words.insert(line);
  }
  return words;
}

LoadResult parse_records(std::istream& in,
                         const std::optional<std::string>& lang_filter) {
  LoadResult result;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  auto reject = [&](const std::string& why) {
    ++result.malformed;
    result.warnings.push_back("line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto json = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (json.is_discarded() || !json.is_object()) {
      reject("not a JSON object");
      continue;
    }
    TweetRecord record;
    auto id = json.contains("id") ? json_id(json["id"]) : std::nullopt;
    if (!id || id->empty()) {
      reject("missing or empty id");
      continue;
    }
    if (!json.contains("text") || !json["text"].is_string()) {
      reject("missing text");
      continue;
    }
    record.id = std::move(*id);
    record.text = json["text"].get<std::string>();
    if (auto rt = json.find("retweeted_status");
        rt != json.end() && rt->is_object()) {
      if (auto t = rt->find("text"); t != rt->end() && t->is_string()) {
        record.retweet_text = t->get<std::string>();
      }
    }
    if (auto lang = json.find("lang"); lang != json.end() && lang->is_string()) {
      record.lang = lang->get<std::string>();
    }
    if (!seen.insert(record.id).second) {
      reject("duplicate id '" + record.id + "'");
      continue;
    }
    if (lang_filter && record.lang != lang_filter) {
      ++result.filtered;
      continue;
    }
    result.records.push_back(std::move(record));
  }
  return result;
}

LoadResult load_records(const std::filesystem::path& path,
                        const std::optional<std::string>& lang_filter) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file " + path.string());
  return parse_records(in, lang_filter);
}

TokenizedTweet clean_and_tokenize(const TweetRecord& record,
                                  const CleaningConfig& config) {
  TokenizedTweet out;
  out.id = record.id;
  for (std::string_view raw : split_whitespace(record.effective_text())) {
    if (contains_url(raw) || raw.front() == '@') continue;
    split_letters(raw, config, out.tokens);
  }
  return out;
}

DedupResult deduplicate(Corpus corpus) {
  DedupResult result;
  std::set<std::vector<std::string>> seen;
  for (auto& tweet : corpus) {
    if (seen.insert(tweet.tokens).second) {
      result.tweets.push_back(std::move(tweet));
    } else {
      ++result.removed;
    }
  }
  return result;
}

DedupResult tokenize_corpus(const std::vector<TweetRecord>& records,
                            const CleaningConfig& config) {
  config.validate();
  Corpus cleaned;
  cleaned.reserve(records.size());
  for (const auto& record : records) {
    cleaned.push_back(clean_and_tokenize(record, config));
  }
  return deduplicate(std::move(cleaned));
}

}  // namespace moralscope
