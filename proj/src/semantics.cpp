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

#include "moralscope/semantics.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <unordered_map>

#include "moralscope/errors.hpp"

namespace moralscope {
namespace {

void add_word(ContextVector& cv, const std::string& word,
              const Eigen::VectorXd& vec) {
  cv.vector += vec;
  auto it = std::find_if(cv.contributing_words.begin(), cv.contributing_words.end(),
                         [&](const auto& p) { return p.first == word; });
  if (it == cv.contributing_words.end()) {
    cv.contributing_words.emplace_back(word, 1);
  } else {
    ++it->second;
  }
}

ContextVector empty_vector(std::string label, int k) {
  ContextVector cv;
  cv.label = std::move(label);
  cv.vector = Eigen::VectorXd::Zero(k);
  return cv;
}

}  // namespace

ContextVector tweet_vector(const TokenizedTweet& tweet, const EmbeddingSpace& emb) {
  ContextVector cv = empty_vector(tweet.id, emb.k());
  std::unordered_map<std::string, std::size_t> position;
  for (const auto& token : tweet.tokens) {
    auto row = emb.words.find(token);
    if (!row) {
      ++cv.skipped;
      continue;
    }
    cv.vector += emb.vectors.row(static_cast<Eigen::Index>(*row)).transpose();
    auto [it, inserted] = position.emplace(token, cv.contributing_words.size());
    if (inserted) {
      cv.contributing_words.emplace_back(token, 1);
    } else {
      ++cv.contributing_words[it->second].second;
    }
  }
  return cv;
}

MFVectors mf_vectors(const MFDictionary& dict, const EmbeddingSpace& emb) {
  MFVectors mf;
  for (Foundation f : kFoundations) {
    mf[*foundation_index(f)] = empty_vector(std::string(to_string(f)), emb.k());
  }
  for (std::size_t i = 0; i < emb.words.size(); ++i) {
    const std::string& word = emb.words[i];
    const auto matched = match_word(dict, word, Polarity::Vice);
    if (matched.empty()) continue;
    const Eigen::VectorXd vec = emb.vectors.row(static_cast<Eigen::Index>(i)).transpose();
    for (Foundation f : matched) {
      if (auto idx = foundation_index(f)) add_word(mf[*idx], word, vec);
    }
  }
  for (const auto& cv : mf) {
    if (cv.degenerate()) {
      throw DataError("no keyword matches a " + cv.label +
                      " vice entry; its foundation vector is undefined");
    }
  }
  return mf;
}

ContextVector topic_vector(std::string label, std::span<const WordScore> ranking,
                           const EmbeddingSpace& emb, std::size_t n) {
  ContextVector cv = empty_vector(std::move(label), emb.k());
  std::size_t taken = 0;
  for (const auto& ws : ranking) {
    if (taken == n) break;
    auto vec = emb.vector(ws.word);
    if (!vec) {
      ++cv.skipped;
      continue;
    }
    add_word(cv, ws.word, *vec);
    ++taken;
  }
  if (taken < n) {
    spdlog::warn("topic '{}': only {} of {} requested words are keywords", cv.label,
                 taken, n);
  }
  return cv;
}

LoadingMatrix LoadingMatrix::non_degenerate() const {
  LoadingMatrix out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (degenerate[i]) continue;
    out.row_labels.push_back(row_labels[i]);
    out.values.push_back(values[i]);
    out.degenerate.push_back(false);
  }
  return out;
}

LoadingMatrix loading_matrix(std::span<const ContextVector> rows,
                             const MFVectors& mf) {
  LoadingMatrix out;
  out.row_labels.reserve(rows.size());
  out.values.reserve(rows.size());
  out.degenerate.reserve(rows.size());
  for (const auto& row : rows) {
    LoadingRow values{};
    const bool degenerate = row.degenerate();
    if (!degenerate) {
      for (std::size_t f = 0; f < 5; ++f) values[f] = cosine(row.vector, mf[f].vector);
    }
    out.row_labels.push_back(row.label);
    out.values.push_back(values);
    out.degenerate.push_back(degenerate);
  }
  return out;
}

std::optional<Foundation> dominant_foundation(const LoadingRow& row) {
  if (std::all_of(row.begin(), row.end(), [](double v) { return v == 0.0; })) {
    return std::nullopt;
  }
  std::size_t best = 0;
  for (std::size_t f = 1; f < row.size(); ++f) {
    if (row[f] > row[best]) best = f;
  }
  return kFoundations[best];
}

std::array<std::size_t, 5> foundation_counts(const LoadingMatrix& matrix) {
  std::array<std::size_t, 5> counts{};
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    if (matrix.degenerate[i]) continue;
    if (auto f = dominant_foundation(matrix.values[i])) ++counts[*foundation_index(*f)];
  }
  return counts;
}

Eigen::Matrix<double, 5, 5> mf_similarity_matrix(const MFVectors& mf) {
  Eigen::Matrix<double, 5, 5> out;
  for (int i = 0; i < 5; ++i) {
    out(i, i) = 1.0;
    for (int j = i + 1; j < 5; ++j) {
      out(i, j) = out(j, i) = cosine(mf[i].vector, mf[j].vector);
    }
  }
  return out;
}

std::size_t ExtendedDictionary::total() const {
  std::size_t n = 0;
  for (const auto& list : lists) n += list.size();
  return n;
}

ExtendedDictionary extend_dictionary(const EmbeddingSpace& emb,
                                     const MFVectors& mf, std::size_t n) {
  ExtendedDictionary out;
  if (n > emb.words.size()) {
    spdlog::warn("extended dictionary: requested {} words per foundation, only {} "
                 "keywords exist", n, emb.words.size());
  }
  if (n == 0) return out;
  for (std::size_t f = 0; f < 5; ++f) {
    std::vector<WordSimilarity> scored;
    scored.reserve(emb.words.size());
    for (std::size_t i = 0; i < emb.words.size(); ++i) {
      const Eigen::VectorXd vec = emb.vectors.row(static_cast<Eigen::Index>(i)).transpose();
      scored.push_back({emb.words[i], cosine(vec, mf[f].vector)});
    }
    const std::size_t take = std::min(n, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take),
                      scored.end(), [](const WordSimilarity& a, const WordSimilarity& b) {
                        return a.similarity != b.similarity ? a.similarity > b.similarity
                                                            : a.word < b.word;
                      });
    scored.resize(take);
    out.lists[f] = std::move(scored);
  }
  return out;
}

WordFrequencies word_frequencies(const Corpus& corpus) {
  WordFrequencies freq;
  for (const auto& tweet : corpus) {
    for (const auto& token : tweet.tokens) ++freq[token];
  }
  return freq;
}

ViceReport vice_frequency_report(const MFDictionary& dict, const Corpus& corpus,
                                 const WordFrequencies& vocabulary) {
  ViceReport report;
  report.coverage = coverage(dict, vocabulary, Polarity::Vice).fraction;
  const WordFrequencies counts = word_frequencies(corpus);
  for (const auto& [word, unused] : vocabulary) {
    ViceReportRow row;
    row.word = word;
    for (Foundation f : match_word(dict, word, Polarity::Vice)) {
      if (foundation_index(f)) row.foundations.push_back(f);
    }
    if (row.foundations.empty()) continue;
    if (auto it = counts.find(word); it != counts.end()) row.frequency = it->second;
    report.rows.push_back(std::move(row));
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const ViceReportRow& a, const ViceReportRow& b) {
                     return a.frequency > b.frequency;
                   });
  return report;
}

}  // namespace moralscope
