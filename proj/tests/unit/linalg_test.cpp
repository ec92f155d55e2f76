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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "moralscope/errors.hpp"
#include "moralscope/linalg.hpp"
#include "oracles.hpp"

using namespace moralscope;

namespace {

double orthonormality_error(const Eigen::MatrixXd& u) {
  const Eigen::MatrixXd g = u.transpose() * u;
  return (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

std::vector<std::string> labels(Eigen::Index n) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back("p" + std::to_string(i));
  return out;
}

}  // namespace

TEST_CASE("svd of simple spectra") {
  auto eye = truncated_svd(Eigen::MatrixXd::Identity(5, 5), 2, 1);
  CHECK(eye.singular_values.size() == 2);
  CHECK(eye.singular_values(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eye.singular_values(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(orthonormality_error(eye.left_vectors) <= 1e-8);

  Eigen::MatrixXd d = Eigen::Vector3d(3, 2, 1).asDiagonal();
  auto diag = truncated_svd(d, 2, 1);
  CHECK(diag.singular_values(0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(diag.singular_values(1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(diag.left_vectors(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(diag.left_vectors(1, 1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("svd rejects bad input") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(4, 3);
  CHECK_THROWS_AS(truncated_svd(a, 0, 1), ConfigError);
  CHECK_THROWS_AS(truncated_svd(a, 4, 1), ConfigError);
  a(1, 1) = std::nan("");
  CHECK_THROWS_AS(truncated_svd(a, 1, 1), DataError);
}

TEST_CASE("svd of rank-50 matrix matches dense oracle") {
  std::mt19937_64 rng(2024);
  const Eigen::MatrixXd a = oracle::random_rank(200, 300, 50, rng);
  auto result = truncated_svd(a, 20, 42);
  const Eigen::VectorXd ref = oracle::singular_values(a).head(20);
  const double rel = ((result.singular_values - ref).array() / ref.array()).abs().maxCoeff();
  CHECK(rel <= 1e-6);
  CHECK(orthonormality_error(result.left_vectors) <= 1e-8);
  for (Eigen::Index i = 1; i < 20; ++i) {
    CHECK(result.singular_values(i - 1) >= result.singular_values(i));
  }
  // U_k spans the dominant subspace: A^T u_i has norm sigma_i.
  for (Eigen::Index i = 0; i < 20; ++i) {
    const double norm = (a.transpose() * result.left_vectors.col(i)).norm();
    CHECK(std::abs(norm - ref(i)) / ref(i) <= 1e-6);
  }
}

TEST_CASE("sparse and dense routes agree and are seeded") {
  std::mt19937_64 rng(5);
  Eigen::MatrixXd a = oracle::random_rank(60, 90, 12, rng);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i % 3 == 0) a.data()[i] = 0;
  }
  const SparseMatrix s = a.sparseView();
  auto dense = truncated_svd(a, 8, 7);
  auto sparse = truncated_svd(s, 8, 7);
  CHECK((dense.singular_values - sparse.singular_values).cwiseAbs().maxCoeff() <= 1e-9);
  auto again = truncated_svd(s, 8, 7);
  CHECK(again.left_vectors == sparse.left_vectors);
  const Eigen::VectorXd ref = oracle::singular_values(a).head(8);
  CHECK(((sparse.singular_values - ref).array() / ref.array()).abs().maxCoeff() <= 1e-6);
}

TEST_CASE("orthonormal columns on random shapes") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> dim(10, 120);
  for (int trial = 0; trial < 10; ++trial) {
    const int rows = dim(rng);
    const int cols = dim(rng);
    const Eigen::MatrixXd a = oracle::random_rank(rows, cols, std::min(rows, cols), rng);
    const int k = std::min(rows, cols) / 2;
    auto r = truncated_svd(a, k, trial);
    CHECK(orthonormality_error(r.left_vectors) <= 1e-8);
    CHECK(r.singular_values.minCoeff() >= 0.0);
  }
}

TEST_CASE("cosine examples") {
  const Eigen::Vector2d x(1, 0), y(0, 1), xy(1, 1);
  CHECK(cosine(x, y) == 0.0);
  CHECK(cosine(xy, xy) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cosine(x, xy) == doctest::Approx(0.7071067811865475).epsilon(1e-15));
  CHECK(cosine(Eigen::Vector2d(0, 0), x) == 0.0);
  CHECK_THROWS_AS(cosine(Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(3)), ConfigError);
  const std::vector<double> u = {1, 2, 3}, v = {3, 2, 1};
  CHECK(cosine(u, v) == doctest::Approx(10.0 / 14.0).epsilon(1e-15));
}

TEST_CASE("cosine range and scale invariance") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::VectorXd u(7), v(7);
    for (int i = 0; i < 7; ++i) {
      u(i) = g(rng);
      v(i) = g(rng);
    }
    const double c = cosine(u, v);
    CHECK(c >= -1.0 - 1e-12);
    CHECK(c <= 1.0 + 1e-12);
    const Eigen::VectorXd su = scale(rng) * u;
    const Eigen::VectorXd sv = scale(rng) * v;
    CHECK(std::abs(cosine(su, sv) - c) <= 1e-12);
    CHECK(std::abs(c - oracle::cosine(u, v)) <= 1e-12);
  }
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(4, 1e-3);
  CHECK(cosine(w, w) <= 1.0);
}

TEST_CASE("pca of collinear points") {
  Eigen::MatrixXd p(5, 3);
  for (int i = 0; i < 5; ++i) p.row(i) = (i - 1.5) * Eigen::RowVector3d(1, 2, -2);
  auto proj = pca_2d(p, labels(5));
  for (const auto& pt : proj.points) CHECK(std::abs(pt.pc2) <= 1e-12);
  CHECK(proj.explained_variance[1] <= 1e-20);
  CHECK(proj.explained_variance[0] > 0);
}

TEST_CASE("pca of a symmetric set") {
  Eigen::MatrixXd p(4, 3);
  p << 1, 2, 0, -1, -2, 0, 0.5, -1, 3, -0.5, 1, -3;
  auto proj = pca_2d(p, labels(4));
  double s1 = 0, s2 = 0;
  for (const auto& pt : proj.points) {
    s1 += pt.pc1;
    s2 += pt.pc2;
  }
  CHECK(std::abs(s1) <= 1e-12);
  CHECK(std::abs(s2) <= 1e-12);
  CHECK(proj.points[0].pc1 == doctest::Approx(-proj.points[1].pc1));
  CHECK(proj.points[0].label == "p0");
}

TEST_CASE("pca matches covariance eigendecomposition") {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd p(10, 4);
    for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = g(rng) * (1 + i % 4);
    auto proj = pca_2d(p, labels(10));

    const Eigen::MatrixXd centered = p.rowwise() - p.colwise().mean();
    const Eigen::MatrixXd cov = centered.transpose() * centered / 9.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    for (int c = 0; c < 2; ++c) {
      Eigen::VectorXd axis = eig.eigenvectors().col(3 - c);
      Eigen::Index arg;
      axis.cwiseAbs().maxCoeff(&arg);
      if (axis(arg) < 0) axis = -axis;
      CHECK(std::abs(proj.explained_variance[c] - eig.eigenvalues()(3 - c)) <= 1e-8);
      CHECK((proj.components.col(c) - axis).cwiseAbs().maxCoeff() <= 1e-8);
      const Eigen::VectorXd scores = centered * axis;
      for (int i = 0; i < 10; ++i) {
        const double got = c == 0 ? proj.points[i].pc1 : proj.points[i].pc2;
        CHECK(std::abs(got - scores(i)) <= 1e-8);
      }
    }
    CHECK(proj.explained_variance[0] >= proj.explained_variance[1]);
  }
}

TEST_CASE("pca errors") {
  CHECK_THROWS_AS(pca_2d(Eigen::MatrixXd::Ones(2, 3), labels(2)), DataError);
  CHECK_THROWS_AS(pca_2d(Eigen::MatrixXd::Ones(4, 3), labels(4)), DataError);
  CHECK_THROWS_AS(pca_2d(Eigen::MatrixXd::Random(4, 3), labels(3)), DataError);
}
