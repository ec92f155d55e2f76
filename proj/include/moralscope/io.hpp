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

#ifndef MORALSCOPE_IO_HPP_
#define MORALSCOPE_IO_HPP_

// Artifact file formats shared by the pipeline stages.

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "moralscope/corpus.hpp"
#include "moralscope/linalg.hpp"
#include "moralscope/semantics.hpp"
#include "moralscope/vectorizer.hpp"

namespace moralscope::io {

namespace fs = std::filesystem;

// id<TAB>space-joined tokens.
void write_corpus(const fs::path& path, const Corpus& corpus);
Corpus read_corpus(const fs::path& path);

// rank<TAB>word<TAB>score over the full ranking; rank starts at 1.
void write_ranking(const fs::path& path, const std::vector<WordScore>& ranking);
std::vector<WordScore> read_ranking(const fs::path& path);

// row_word<TAB>col_id<TAB>value triplets plus two sidecars, path + ".rows"
// and path + ".cols", listing row and column labels in index order.
void write_triplets(const fs::path& path, const SparseCountMatrix& m);
void write_triplets(const fs::path& path, const WeightedMatrix& m);
WeightedMatrix read_weighted_triplets(const fs::path& path);

// word followed by k reals, 9 significant digits, tab separated.
void write_embedding(const fs::path& path, const EmbeddingSpace& emb);
EmbeddingSpace read_embedding(const fs::path& path);

// label followed by k reals, same layout as the embedding file.
void write_vectors(const fs::path& path, std::span<const ContextVector> vectors);
std::vector<ContextVector> read_vectors(const fs::path& path);

void write_singular_values(const fs::path& path, const Eigen::VectorXd& values);

// id,care,fairness,ingroup,authority,purity,dominant,degenerate
void write_loadings(const fs::path& path, const LoadingMatrix& m);
// topic,care,fairness,ingroup,authority,purity
void write_topic_loadings(const fs::path& path, const LoadingMatrix& m);
LoadingMatrix read_loadings(const fs::path& path);
void write_mf_similarity(const fs::path& path, const Eigen::Matrix<double, 5, 5>& m);
void write_foundation_counts(const fs::path& path,
                             const std::array<std::size_t, 5>& counts);
// foundation<TAB>rank<TAB>word<TAB>similarity
void write_extended_dictionary(const fs::path& path, const ExtendedDictionary& d);
ExtendedDictionary read_extended_dictionary(const fs::path& path);
// label,pc1,pc2
void write_pca(const fs::path& path, const PCAProjection& p);
// word<TAB>foundations (comma-joined)<TAB>frequency
void write_vice_report(const fs::path& path, const ViceReport& r);
// Per-entry coverage listing as JSON.
void write_coverage(const fs::path& path, const CoverageReport& r);

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const fs::path& path);

// Shortest decimal form with 9 significant digits.
std::string format_real(double v);

}  // namespace moralscope::io

#endif  // MORALSCOPE_IO_HPP_
