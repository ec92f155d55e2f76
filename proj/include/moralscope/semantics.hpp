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

#ifndef MORALSCOPE_SEMANTICS_HPP_
#define MORALSCOPE_SEMANTICS_HPP_

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "moralscope/corpus.hpp"
#include "moralscope/lexicon.hpp"
#include "moralscope/linalg.hpp"
#include "moralscope/vectorizer.hpp"

namespace moralscope {

// Sum of keyword vectors for a tweet, topic or foundation.
struct ContextVector {
  std::string label;
  Eigen::VectorXd vector;
  std::vector<std::pair<std::string, std::size_t>> contributing_words;
  std::size_t skipped = 0;  // tokens or topic words without an embedding

  bool degenerate() const { return contributing_words.empty(); }
};

// Indexed by foundation_index(): Care, Fairness, Ingroup, Authority, Purity.
using MFVectors = std::array<ContextVector, 5>;

// Sums the embedding of every keyword token, once per occurrence.
ContextVector tweet_vector(const TokenizedTweet& tweet, const EmbeddingSpace& emb);

// For each foundation, the sum of the keywords matched by its vice entries.
// Throws DataError if some foundation matches no keyword.
MFVectors mf_vectors(const MFDictionary& dict, const EmbeddingSpace& emb);

// Sums the first n topic-ranked words that are keywords of emb.
ContextVector topic_vector(std::string label, std::span<const WordScore> ranking,
                           const EmbeddingSpace& emb, std::size_t n);

using LoadingRow = std::array<double, 5>;

struct LoadingMatrix {
  std::vector<std::string> row_labels;
  std::vector<LoadingRow> values;
  std::vector<bool> degenerate;

  std::size_t rows() const { return values.size(); }
  static constexpr std::size_t cols() { return 5; }
  // Drops degenerate rows.
  LoadingMatrix non_degenerate() const;
};

LoadingMatrix loading_matrix(std::span<const ContextVector> rows,
                             const MFVectors& mf);

// Argmax with ties resolved in canonical order; nullopt for an all-zero row.
std::optional<Foundation> dominant_foundation(const LoadingRow& row);

// Dominant-foundation histogram over non-degenerate, classifiable rows.
std::array<std::size_t, 5> foundation_counts(const LoadingMatrix& matrix);

Eigen::Matrix<double, 5, 5> mf_similarity_matrix(const MFVectors& mf);

struct WordSimilarity {
  std::string word;
  double similarity = 0.0;
};

struct ExtendedDictionary {
  std::array<std::vector<WordSimilarity>, 5> lists;

  std::size_t total() const;
};

// Top-n keywords by cosine to each foundation vector.
ExtendedDictionary extend_dictionary(const EmbeddingSpace& emb,
                                     const MFVectors& mf, std::size_t n);

struct ViceReportRow {
  std::string word;
  std::vector<Foundation> foundations;
  std::uint64_t frequency = 0;
};

struct ViceReport {
  std::vector<ViceReportRow> rows;  // descending frequency, then word
  double coverage = 0.0;
};

// Token frequency of every corpus word.
WordFrequencies word_frequencies(const Corpus& corpus);

// Vocabulary words matched by a vice entry of the five foundations, with
// their corpus frequencies, plus the vice coverage of vocabulary.
ViceReport vice_frequency_report(const MFDictionary& dict, const Corpus& corpus,
                                 const WordFrequencies& vocabulary);

}  // namespace moralscope

#endif  // MORALSCOPE_SEMANTICS_HPP_
