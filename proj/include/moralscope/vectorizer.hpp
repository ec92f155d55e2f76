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

#ifndef MORALSCOPE_VECTORIZER_HPP_
#define MORALSCOPE_VECTORIZER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "moralscope/corpus.hpp"

namespace moralscope {

// Ordered list of unique words with a reverse index.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Throws DataError on duplicate words.
  explicit Vocabulary(std::vector<std::string> words);

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::string& operator[](std::size_t i) const { return words_[i]; }
  const std::vector<std::string>& words() const { return words_; }
  std::optional<std::size_t> find(const std::string& word) const;
  bool contains(const std::string& word) const { return index_.contains(word); }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
};

template <typename T>
struct MatrixEntry {
  std::uint32_t row;
  std::uint32_t col;
  T value;

  bool operator==(const MatrixEntry&) const = default;
};

// Sparse matrix with labelled rows and columns. Entries are kept sorted by
// (row, col) with no duplicates and no explicit zeros.
template <typename T>
struct LabeledSparseMatrix {
  Vocabulary rows;
  std::vector<std::string> cols;
  std::vector<MatrixEntry<T>> entries;

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return cols.size(); }
};

// Word-tweet counts X or keyword-context co-occurrence counts C.
using SparseCountMatrix = LabeledSparseMatrix<std::uint64_t>;
// tf-idf or PPMI weights.
using WeightedMatrix = LabeledSparseMatrix<double>;

struct WordScore {
  std::string word;
  double score = 0.0;

  bool operator==(const WordScore&) const = default;
};

struct SelectionResult {
  // Every scored word, descending score, ties broken lexicographically.
  std::vector<WordScore> ranking;
  std::vector<std::string> keywords;       // first N1 of ranking
  std::vector<std::string> context_words;  // first N2 of ranking
  bool truncated = false;                  // N1 or N2 exceeded the vocabulary
};

// Rows are words in lexicographic order, columns are tweet ids in corpus
// order. Throws DataError on an empty corpus.
SparseCountMatrix build_word_tweet_matrix(const Corpus& corpus);

// tf * (ln(M + 1) - ln(df)) for every nonzero count, M = number of tweets.
WeightedMatrix tfidf(const SparseCountMatrix& counts);

// Row sums of the tf-idf matrix, in row order.
std::vector<WordScore> overlap_scores(const WeightedMatrix& weights);

// Throws ConfigError when n1 > n2.
SelectionResult select_terms(std::span<const WordScore> scores, std::size_t n1,
                             std::size_t n2);

// Ranks all words of a corpus by overlap score.
SelectionResult rank_corpus(const Corpus& corpus, std::size_t n1,
                            std::size_t n2);

// C[i][j] = number of tweets containing keyword i and context word j. When
// the keyword and the context word are the same word the tweet must contain
// it at least twice.
SparseCountMatrix build_cooccurrence(const Corpus& corpus,
                                     const SelectionResult& selection);

// Keywords whose row in a co-occurrence matrix is empty.
std::vector<std::string> empty_rows(const SparseCountMatrix& counts);

// max(log2(P(i,j) / (P(i) P(j))), 0) with probabilities taken from the
// count totals. Throws DataError when the matrix sums to zero.
WeightedMatrix ppmi(const SparseCountMatrix& counts);

}  // namespace moralscope

#endif  // MORALSCOPE_VECTORIZER_HPP_
