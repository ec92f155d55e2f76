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

#include "moralscope/vectorizer.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "moralscope/errors.hpp"

namespace moralscope {
namespace {

template <typename T>
void sort_entries(std::vector<MatrixEntry<T>>& entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
}

std::unordered_map<std::string, std::uint32_t> index_of(
    const std::vector<std::string>& words) {
  std::unordered_map<std::string, std::uint32_t> index;
  index.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    index.emplace(words[i], static_cast<std::uint32_t>(i));
  }
  return index;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> words)
    : words_(std::move(words)) {
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], i).second) {
      throw DataError("duplicate vocabulary word '" + words_[i] + "'");
    }
  }
}

std::optional<std::size_t> Vocabulary::find(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseCountMatrix build_word_tweet_matrix(const Corpus& corpus) {
  if (corpus.empty()) throw DataError("cannot build a word-tweet matrix from an empty corpus");

  std::map<std::string, std::uint32_t> sorted;
  for (const auto& tweet : corpus) {
    for (const auto& token : tweet.tokens) sorted.emplace(token, 0);
  }
  std::vector<std::string> words;
  words.reserve(sorted.size());
  for (auto& [word, index] : sorted) {
    index = static_cast<std::uint32_t>(words.size());
    words.push_back(word);
  }

  SparseCountMatrix x;
  x.cols.reserve(corpus.size());
  std::unordered_map<std::uint32_t, std::uint64_t> counts;
  for (std::size_t j = 0; j < corpus.size(); ++j) {
    x.cols.push_back(corpus[j].id);
    counts.clear();
    for (const auto& token : corpus[j].tokens) ++counts[sorted.at(token)];
    for (auto [row, count] : counts) {
      x.entries.push_back({row, static_cast<std::uint32_t>(j), count});
    }
  }
  sort_entries(x.entries);
  if (words.empty()) spdlog::warn("word-tweet matrix has no rows: every tweet is empty");
  x.rows = Vocabulary(std::move(words));
  return x;
}

WeightedMatrix tfidf(const SparseCountMatrix& counts) {
  const double m = static_cast<double>(counts.n_cols());
  std::vector<std::uint64_t> df(counts.n_rows(), 0);
  for (const auto& e : counts.entries) ++df[e.row];

  WeightedMatrix y;
  y.rows = counts.rows;
  y.cols = counts.cols;
  y.entries.reserve(counts.entries.size());
  const double log_m1 = std::log(m + 1.0);
  for (const auto& e : counts.entries) {
    const double idf = log_m1 - std::log(static_cast<double>(df[e.row]));
    y.entries.push_back({e.row, e.col, static_cast<double>(e.value) * idf});
  }
  return y;
}

std::vector<WordScore> overlap_scores(const WeightedMatrix& weights) {
  std::vector<WordScore> scores(weights.n_rows());
  for (std::size_t i = 0; i < scores.size(); ++i) scores[i].word = weights.rows[i];
  for (const auto& e : weights.entries) scores[e.row].score += e.value;
  return scores;
}

SelectionResult select_terms(std::span<const WordScore> scores, std::size_t n1,
                             std::size_t n2) {
  if (n1 > n2) {
    throw ConfigError("N1 (" + std::to_string(n1) + ") must not exceed N2 (" +
                      std::to_string(n2) + ")");
  }
  SelectionResult out;
  out.ranking.assign(scores.begin(), scores.end());
  std::sort(out.ranking.begin(), out.ranking.end(),
            [](const WordScore& a, const WordScore& b) {
              return a.score != b.score ? a.score > b.score : a.word < b.word;
            });
  if (n2 > out.ranking.size()) {
    spdlog::warn("requested {} context words but only {} words are scored; truncating",
                 n2, out.ranking.size());
    out.truncated = true;
    n2 = out.ranking.size();
    n1 = std::min(n1, n2);
  }
  out.context_words.reserve(n2);
  for (std::size_t i = 0; i < n2; ++i) out.context_words.push_back(out.ranking[i].word);
  out.keywords.assign(out.context_words.begin(), out.context_words.begin() + n1);
  return out;
}

SelectionResult rank_corpus(const Corpus& corpus, std::size_t n1,
                            std::size_t n2) {
  auto scores = overlap_scores(tfidf(build_word_tweet_matrix(corpus)));
  return select_terms(scores, n1, n2);
}

SparseCountMatrix build_cooccurrence(const Corpus& corpus,
                                     const SelectionResult& selection) {
  if (selection.keywords.empty() || selection.context_words.empty()) {
    throw DataError("co-occurrence needs at least one keyword and context word");
  }
  const auto keyword_index = index_of(selection.keywords);
  const auto context_index = index_of(selection.context_words);
  const std::uint64_t n_cols = selection.context_words.size();

  // Packed (row, col) keys; sorting then run-length counting keeps the
  // result independent of tweet order.
  std::vector<std::uint64_t> keys;
  struct Present {
    std::int64_t row;
    std::int64_t col;
    std::uint64_t count;
  };
  std::unordered_map<std::string_view, std::uint64_t> tweet_counts;
  std::vector<Present> present;
  for (const auto& tweet : corpus) {
    tweet_counts.clear();
    for (const auto& token : tweet.tokens) ++tweet_counts[token];
    present.clear();
    for (const auto& [word, count] : tweet_counts) {
      const std::string key(word);
      auto row = keyword_index.find(key);
      auto col = context_index.find(key);
      present.push_back(
          {row == keyword_index.end() ? -1 : static_cast<std::int64_t>(row->second),
           col == context_index.end() ? -1 : static_cast<std::int64_t>(col->second), count});
    }
    for (std::size_t a = 0; a < present.size(); ++a) {
      if (present[a].row < 0) continue;
      for (std::size_t b = 0; b < present.size(); ++b) {
        if (present[b].col < 0) continue;
        if (a == b && present[a].count < 2) continue;
        keys.push_back(static_cast<std::uint64_t>(present[a].row) * n_cols +
                       static_cast<std::uint64_t>(present[b].col));
      }
    }
  }
  std::sort(keys.begin(), keys.end());

  SparseCountMatrix c;
  c.rows = Vocabulary(selection.keywords);
  c.cols = selection.context_words;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    c.entries.push_back({static_cast<std::uint32_t>(keys[i] / n_cols),
                         static_cast<std::uint32_t>(keys[i] % n_cols),
                         static_cast<std::uint64_t>(j - i)});
    i = j;
  }
  if (auto empty = empty_rows(c); !empty.empty()) {
    spdlog::warn("{} keyword(s) have no co-occurrences, e.g. '{}'", empty.size(),
                 empty.front());
  }
  return c;
}

std::vector<std::string> empty_rows(const SparseCountMatrix& counts) {
  std::vector<bool> seen(counts.n_rows(), false);
  for (const auto& e : counts.entries) seen[e.row] = true;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) out.push_back(counts.rows[i]);
  }
  return out;
}

WeightedMatrix ppmi(const SparseCountMatrix& counts) {
  std::vector<double> row_sum(counts.n_rows(), 0.0);
  std::vector<double> col_sum(counts.n_cols(), 0.0);
  double total = 0.0;
  for (const auto& e : counts.entries) {
    const auto v = static_cast<double>(e.value);
    row_sum[e.row] += v;
    col_sum[e.col] += v;
    total += v;
  }
  if (total <= 0.0) throw DataError("PPMI of an all-zero count matrix is undefined");

  WeightedMatrix out;
  out.rows = counts.rows;
  out.cols = counts.cols;
  for (const auto& e : counts.entries) {
    const double joint = static_cast<double>(e.value) / total;
    const double p_row = row_sum[e.row] / total;
    const double p_col = col_sum[e.col] / total;
    const double pmi = std::log2(joint / (p_row * p_col));
    if (pmi > 0.0) out.entries.push_back({e.row, e.col, pmi});
  }
  return out;
}

}  // namespace moralscope
