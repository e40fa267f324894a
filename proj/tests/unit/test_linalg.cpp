/* Copyright 2026 The htg-eval Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "htg_eval/linalg.hpp"
#include "test_support.hpp"

namespace htg {
namespace {

TEST(GaussianSummaryTest, TwoPoints) {
  RowMatrix m(2, 2);
  m << 0, 0, 2, 2;
  const auto g = gaussian_summary(m);
  EXPECT_EQ(g.mu, Eigen::Vector2d(1, 1));
  Eigen::Matrix2d expected;
  expected << 2, 2, 2, 2;
  EXPECT_TRUE(g.sigma.isApprox(expected, 1e-15));
  EXPECT_EQ(g.n, 2);
}

TEST(GaussianSummaryTest, IdenticalRowsGiveZeroCovariance) {
  RowMatrix m = RowMatrix::Constant(10, 3, 4.5);
  EXPECT_EQ(gaussian_summary(m).sigma, Eigen::MatrixXd::Zero(3, 3));
}

TEST(GaussianSummaryTest, MatchesTwoPassOracle) {
  Rng rng(8);
  const RowMatrix m = testing::random_matrix(rng, 100, 5, -3, 7);
  const auto g = gaussian_summary(testing::make_features(m));
  for (int j = 0; j < 5; ++j) {
    double mean = 0;
    for (int i = 0; i < 100; ++i) mean += m(i, j);
    mean /= 100;
    EXPECT_NEAR(g.mu(j), mean, 1e-12);
  }
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      double s = 0;
      for (int i = 0; i < 100; ++i) s += (m(i, a) - g.mu(a)) * (m(i, b) - g.mu(b));
      EXPECT_NEAR(g.sigma(a, b), s / 99.0, 1e-10);
      EXPECT_EQ(g.sigma(a, b), g.sigma(b, a));
    }
}

TEST(GaussianSummaryTest, NeedsTwoRows) {
  EXPECT_HTG_ERROR(gaussian_summary(RowMatrix::Ones(1, 3)), kInsufficientSamples);
}

TEST(MatrixSqrtTest, DiagonalAndIdentity) {
  Eigen::MatrixXd d = Eigen::Vector2d(4, 9).asDiagonal();
  EXPECT_TRUE(matrix_sqrt_psd(d).isApprox(Eigen::MatrixXd(Eigen::Vector2d(2, 3).asDiagonal()),
                                          1e-14));
  const Eigen::MatrixXd i = Eigen::MatrixXd::Identity(5, 5);
  EXPECT_TRUE(matrix_sqrt_psd(i).isApprox(i, 1e-14));
}

TEST(MatrixSqrtTest, MultiplyBackOracle) {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const int d = 1 + static_cast<int>(rng.uniform_index(16));
    const RowMatrix a = testing::random_matrix(rng, d, d);
    const Eigen::MatrixXd m = a * a.transpose();
    const Eigen::MatrixXd s = matrix_sqrt_psd(m);
    EXPECT_LE((s * s - m).norm(), 1e-8 * m.norm());
    EXPECT_LE((s - s.transpose()).norm(), 1e-14 * (1 + s.norm()));
    EXPECT_GE(symmetric_eigenvalues(s).minCoeff(), -1e-12);
  }
}

TEST(MatrixSqrtTest, ClampsNegativeNoise) {
  Eigen::Matrix2d m;
  m << 1, 0, 0, -1e-12;
  const Eigen::MatrixXd s = matrix_sqrt_psd(m);
  EXPECT_EQ(s(1, 1), 0.0);
  EXPECT_NEAR(s(0, 0), 1.0, 1e-15);
}

TEST(MatrixSqrtTest, RejectsAsymmetry) {
  Eigen::Matrix2d m;
  m << 1, 0.5, 0, 1;
  EXPECT_HTG_ERROR(matrix_sqrt_psd(m), kShapeError);
  EXPECT_HTG_ERROR(matrix_sqrt_psd(Eigen::MatrixXd::Ones(2, 3)), kShapeError);
}

TEST(SymmetricEigenvaluesTest, Ascending) {
  Eigen::Matrix2d m;
  m << 2, 1, 1, 2;
  const auto e = symmetric_eigenvalues(m);
  EXPECT_NEAR(e(0), 1, 1e-14);
  EXPECT_NEAR(e(1), 3, 1e-14);
}

}  // namespace
}  // namespace htg
