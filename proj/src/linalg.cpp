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

#include "moralscope/linalg.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "moralscope/errors.hpp"

namespace moralscope {
namespace {

// Thin Q of a Householder QR; optionally also the leading square of R.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& y,
                               Eigen::MatrixXd* r = nullptr) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  if (r != nullptr) {
    *r = qr.matrixQR()
             .topRows(y.cols())
             .template triangularView<Eigen::Upper>();
  }
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

template <typename Matrix>
bool all_finite(const Matrix& a) {
  if constexpr (std::is_same_v<Matrix, SparseMatrix>) {
    for (int i = 0; i < a.outerSize(); ++i) {
      for (typename Matrix::InnerIterator it(a, i); it; ++it) {
        if (!std::isfinite(it.value())) return false;
      }
    }
    return true;
  } else {
    return a.allFinite();
  }
}

template <typename Matrix>
SVDResult randomized_svd(const Matrix& a, int k, std::uint64_t seed,
                         const SvdOptions& options) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (k < 1 || k > std::min(m, n)) {
    throw ConfigError("SVD rank k=" + std::to_string(k) + " outside [1, " +
                      std::to_string(std::min(m, n)) + "]");
  }
  if (!all_finite(a)) throw DataError("SVD input contains non-finite entries");

  const Eigen::Index l =
      std::min<Eigen::Index>(k + std::max(options.oversampling, 0), std::min(m, n));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd omega(n, l);
  for (Eigen::Index j = 0; j < l; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) omega(i, j) = gauss(rng);
  }

  Eigen::MatrixXd q = orthonormalize(a * omega);
  Eigen::MatrixXd r;
  Eigen::VectorXd previous;
  int iterations = 0;
  bool converged = false;
  // A tolerance <= 0 means exactly power_iterations iterations.
  const int max_iterations = options.tolerance > 0.0
                                 ? std::max(options.max_power_iterations,
                                            options.power_iterations)
                                 : options.power_iterations;
  while (iterations < max_iterations) {
    const Eigen::MatrixXd z = orthonormalize(a.transpose() * q);
    q = orthonormalize(a * z, &r);
    ++iterations;
    if (options.tolerance <= 0.0) continue;
    Eigen::VectorXd ritz =
        Eigen::JacobiSVD<Eigen::MatrixXd>(r).singularValues().head(k);
    if (iterations >= options.power_iterations && previous.size() == k) {
      double change = 0.0;
      for (int i = 0; i < k; ++i) {
        const double scale = ritz(i) > 0.0 ? ritz(i) : ritz(0);
        if (scale > 0.0) {
          change = std::max(change, std::abs(ritz(i) - previous(i)) / scale);
        }
      }
      if (change <= options.tolerance) {
        converged = true;
        break;
      }
    }
    previous = std::move(ritz);
  }
  if (options.tolerance <= 0.0) converged = true;
  if (!converged) {
    spdlog::warn("randomized SVD stopped after {} subspace iterations without "
                 "reaching tolerance {}", iterations, options.tolerance);
  }

  // Rayleigh-Ritz step: B = Q^T A = R2^T Q2^T with A^T Q = Q2 R2.
  Eigen::MatrixXd r2;
  orthonormalize(a.transpose() * q, &r2);
  Eigen::JacobiSVD<Eigen::MatrixXd> small(r2.transpose(), Eigen::ComputeFullU);

  SVDResult result;
  result.left_vectors = q * small.matrixU().leftCols(k);
  result.singular_values = small.singularValues().head(k);
  result.iterations = iterations;
  return result;
}

}  // namespace

SparseMatrix to_sparse(const WeightedMatrix& m) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(m.entries.size());
  for (const auto& e : m.entries) {
    triplets.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value);
  }
  SparseMatrix out(static_cast<Eigen::Index>(m.n_rows()),
                   static_cast<Eigen::Index>(m.n_cols()));
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

SVDResult truncated_svd(const SparseMatrix& a, int k, std::uint64_t seed,
                        const SvdOptions& options) {
  return randomized_svd(a, k, seed, options);
}

SVDResult truncated_svd(const Eigen::MatrixXd& a, int k, std::uint64_t seed,
                        const SvdOptions& options) {
  return randomized_svd(a, k, seed, options);
}

std::optional<Eigen::VectorXd> EmbeddingSpace::vector(
    const std::string& word) const {
  auto row = words.find(word);
  if (!row) return std::nullopt;
  return Eigen::VectorXd(vectors.row(static_cast<Eigen::Index>(*row)).transpose());
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw ConfigError("cosine of vectors with dimensions " +
                      std::to_string(u.size()) + " and " + std::to_string(v.size()));
  }
  double dot = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) {
    spdlog::debug("cosine with a zero vector; returning 0");
    return 0.0;
  }
  return std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

double cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  return cosine(std::span<const double>(u.data(), static_cast<std::size_t>(u.size())),
                std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

PCAProjection pca_2d(const Eigen::MatrixXd& points,
                     std::span<const std::string> labels) {
  if (points.rows() < 3) throw DataError("PCA needs at least 3 points");
  if (points.cols() < 1) throw DataError("PCA needs at least one dimension");
  if (static_cast<std::size_t>(points.rows()) != labels.size()) {
    throw DataError("PCA label count does not match the number of points");
  }
  const Eigen::RowVectorXd mean = points.colwise().mean();
  const Eigen::MatrixXd centered = points.rowwise() - mean;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) throw DataError("PCA input has zero variance");

  PCAProjection out;
  out.components = Eigen::MatrixXd::Zero(points.cols(), 2);
  const Eigen::Index available = std::min<Eigen::Index>(2, svd.matrixV().cols());
  for (Eigen::Index c = 0; c < available; ++c) {
    Eigen::VectorXd direction = svd.matrixV().col(c);
    Eigen::Index pivot = 0;
    direction.cwiseAbs().maxCoeff(&pivot);
    if (direction(pivot) < 0.0) direction = -direction;
    out.components.col(c) = direction;
  }
  const double dof = static_cast<double>(points.rows() - 1);
  out.explained_variance = {s(0) * s(0) / dof,
                            s.size() > 1 ? s(1) * s(1) / dof : 0.0};

  const Eigen::MatrixXd projected = centered * out.components;
  out.points.reserve(labels.size());
  for (Eigen::Index i = 0; i < projected.rows(); ++i) {
    out.points.push_back({labels[static_cast<std::size_t>(i)], projected(i, 0),
                          projected(i, 1)});
  }
  return out;
}

}  // namespace moralscope
