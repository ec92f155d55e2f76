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

#ifndef MORALSCOPE_LINALG_HPP_
#define MORALSCOPE_LINALG_HPP_

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moralscope/vectorizer.hpp"

namespace moralscope {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

SparseMatrix to_sparse(const WeightedMatrix& m);

struct SvdOptions {
  int oversampling = 10;
  // Power iterations always performed.
  int power_iterations = 4;
  // Further subspace iterations continue until the top-k Ritz values move by
  // less than tolerance (relative), up to this many iterations in total.
  int max_power_iterations = 100;
  double tolerance = 1e-10;
};

struct SVDResult {
  Eigen::MatrixXd left_vectors;     // n x k, orthonormal columns
  Eigen::VectorXd singular_values;  // k, nonincreasing
  int iterations = 0;
};

// Randomized truncated SVD (seeded Gaussian range finder followed by
// orthonormalized subspace iteration). Deterministic for a fixed input, k and
// seed on one build. Throws ConfigError if k is outside [1, min(rows, cols)]
// and DataError on non-finite entries.
SVDResult truncated_svd(const SparseMatrix& a, int k, std::uint64_t seed,
                        const SvdOptions& options = {});
SVDResult truncated_svd(const Eigen::MatrixXd& a, int k, std::uint64_t seed,
                        const SvdOptions& options = {});

// Rank-k keyword vectors: one row per keyword.
struct EmbeddingSpace {
  Vocabulary words;
  Eigen::MatrixXd vectors;

  int k() const { return static_cast<int>(vectors.cols()); }
  // Row of the keyword, or nullopt when it is not a keyword.
  std::optional<Eigen::VectorXd> vector(const std::string& word) const;
};

// Cosine similarity; 0 when either vector has zero norm. Throws ConfigError
// on a dimension mismatch.
double cosine(std::span<const double> u, std::span<const double> v);
double cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

struct PCAPoint {
  std::string label;
  double pc1 = 0.0;
  double pc2 = 0.0;
};

struct PCAProjection {
  std::vector<PCAPoint> points;
  std::array<double, 2> explained_variance{};
  Eigen::MatrixXd components;  // k x 2, unit columns
};

// Projects mean-centered rows onto the top two principal directions. Each
// direction's largest-magnitude entry is made positive. Throws DataError on
// fewer than 3 rows, a label count mismatch or zero variance.
PCAProjection pca_2d(const Eigen::MatrixXd& points,
                     std::span<const std::string> labels);

}  // namespace moralscope

#endif  // MORALSCOPE_LINALG_HPP_
