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

#ifndef MORALSCOPE_CORPUS_HPP_
#define MORALSCOPE_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace moralscope {

// One ingested tweet. When the record is a retweet the original text is kept
// in retweet_text and takes precedence over text.
struct TweetRecord {
  std::string id;
  std::string text;
  std::optional<std::string> retweet_text;
  std::optional<std::string> lang;

  const std::string& effective_text() const {
    return retweet_text ? *retweet_text : text;
  }
};

// A cleaned tweet: lowercase tokens, each at least min_token_len code points,
// free of stopwords, query words, digits, punctuation and URLs.
struct TokenizedTweet {
  std::string id;
  std::vector<std::string> tokens;

  bool operator==(const TokenizedTweet&) const = default;
};

using Corpus = std::vector<TokenizedTweet>;

struct CleaningConfig {
  std::unordered_set<std::string> stopwords;
  std::unordered_set<std::string> query_words;
  std::size_t min_token_len = 3;
  bool lowercase = true;

  // English stopwords plus the given corpus-specific query words.
  static CleaningConfig english(std::unordered_set<std::string> query_words);

  // Throws ConfigError when min_token_len is 0.
  void validate() const;
};

// The embedded NLTK English stopword list.
const std::vector<std::string>& default_stopwords();

// Reads one stopword per line; blank lines and lines starting with '#' are
// ignored.
std::unordered_set<std::string> load_stopwords(
    const std::filesystem::path& path);

struct LoadResult {
  std::vector<TweetRecord> records;
  std::size_t malformed = 0;
  std::size_t filtered = 0;
  std::vector<std::string> warnings;
};

// Parses line-delimited JSON records ({"id", "text", optional
// "retweeted_status": {"text"}, optional "lang"}). Malformed lines and
// duplicate ids are skipped with a warning naming the line number. When
// lang_filter is set, records whose lang differs (or is absent) are dropped.
LoadResult parse_records(std::istream& in,
                         const std::optional<std::string>& lang_filter = {});

// Throws DataError when the file cannot be opened.
LoadResult load_records(const std::filesystem::path& path,
                        const std::optional<std::string>& lang_filter = {});

// Cleaning steps, in order: pick the effective text, drop URL tokens, drop
// @mentions, strip '#', replace every non-letter code point with a space,
// lowercase, split on whitespace, drop stopwords, query words and short
// tokens.
TokenizedTweet clean_and_tokenize(const TweetRecord& record,
                                  const CleaningConfig& config);

struct DedupResult {
  Corpus tweets;
  std::size_t removed = 0;
};

// Keeps the first tweet for each distinct token sequence.
DedupResult deduplicate(Corpus corpus);

// Cleans every record and deduplicates the result.
DedupResult tokenize_corpus(const std::vector<TweetRecord>& records,
                            const CleaningConfig& config);

}  // namespace moralscope

#endif  // MORALSCOPE_CORPUS_HPP_
