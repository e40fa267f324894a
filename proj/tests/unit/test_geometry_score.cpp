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
#include <algorithm>
#include <cmath>

#include "htg_eval/geometry_score.hpp"
#include "htg_eval/persistence.hpp"
#include "test_support.hpp"

namespace htg {
namespace {

// Overlap count at the midpoint of every elementary segment.
RltDistribution rlt_oracle(const PersistenceBarcode& bars, double alpha_max, int i_max) {
  std::vector<double> cuts{0.0, alpha_max};
  for (const auto& b : bars) {
    cuts.push_back(std::clamp(b.birth, 0.0, alpha_max));
    cuts.push_back(std::clamp(b.death, 0.0, alpha_max));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  RltDistribution out(static_cast<std::size_t>(i_max), 0.0);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    int alive = 0;
    for (const auto& b : bars) alive += b.birth <= mid && mid < b.death;
    if (alive < i_max) out[static_cast<std::size_t>(alive)] += (cuts[k + 1] - cuts[k]) / alpha_max;
  }
  return out;
}

RowMatrix circle(Rng& rng, int n, double noise = 0.0) {
  RowMatrix m(n, 2);
  for (int i = 0; i < n; ++i) {
    const double t = rng.uniform(0, 2 * M_PI);
    m(i, 0) = std::cos(t) + noise * testing::normal(rng);
    m(i, 1) = std::sin(t) + noise * testing::normal(rng);
  }
  return m;
}

RowMatrix disk(Rng& rng, int n) {
  RowMatrix m(n, 2);
  for (int i = 0; i < n; ++i) {
    const double r = std::sqrt(rng.uniform01());
    const double t = rng.uniform(0, 2 * M_PI);
    m(i, 0) = r * std::cos(t);
    m(i, 1) = r * std::sin(t);
  }
  return m;
}

TEST(RltTest, EmptyAndFullBarcodes) {
  auto e = rlt_from_barcode({}, 2.0, 5);
  EXPECT_EQ(e, (RltDistribution{1, 0, 0, 0, 0}));
  auto f = rlt_from_barcode({{0.0, 2.0}}, 2.0, 5);
  EXPECT_EQ(f, (RltDistribution{0, 1, 0, 0, 0}));
  EXPECT_EQ(rlt_from_barcode({{0.0, 1.0}}, 0.0, 3), (RltDistribution{1, 0, 0}));
}

TEST(RltTest, TruncationDropsMass) {
  const PersistenceBarcode bars{{0.0, 1.0}, {0.5, 1.0}};
  const auto r = rlt_from_barcode(bars, 1.0, 2);
  EXPECT_DOUBLE_EQ(r[0], 0.0);
  EXPECT_DOUBLE_EQ(r[1], 0.5);
}

TEST(RltTest, MatchesOracleOnRandomBarcodes) {
  Rng rng(40);
  for (int t = 0; t < 300; ++t) {
    PersistenceBarcode bars;
    const int n = static_cast<int>(rng.uniform_index(12));
    for (int i = 0; i < n; ++i) {
      const double b = std::round(rng.uniform(0, 1.2) * 10) / 10;
      const double d = b + std::round(rng.uniform(0.05, 0.8) * 10) / 10 + 0.01;
      bars.push_back({b, d});
    }
    const int i_max = 1 + static_cast<int>(rng.uniform_index(6));
    const auto r = rlt_from_barcode(bars, 1.0, i_max);
    const auto o = rlt_oracle(bars, 1.0, i_max);
    double sum = 0;
    for (int i = 0; i < i_max; ++i) {
      EXPECT_NEAR(r[i], o[i], 1e-12);
      EXPECT_GE(r[i], 0.0);
      sum += r[i];
    }
    EXPECT_LE(sum, 1.0 + 1e-9);
  }
}

TEST(RltTest, RandomCloudMatchesOracle) {
  Rng rng(41);
  const RowMatrix pts = testing::random_matrix(rng, 50, 3);
  GsParams p;
  p.n_landmarks = 20;
  p.gamma = 0.1;
  const auto lm = draw_landmarks(50, p, 0);
  const double alpha_max = p.gamma * max_landmark_witness_distance(pts, lm);
  const auto bars = witness_persistence_h1(pts, lm, alpha_max);
  const auto r = rlt(pts, lm, p);
  const auto o = rlt_oracle(bars, alpha_max, p.i_max);
  for (int i = 0; i < p.i_max; ++i) EXPECT_NEAR(r[i], o[i], 1e-12);
}

TEST(GsParamsTest, Validation) {
  GsParams p;
  EXPECT_NO_THROW(validate(p));
  p.i_max = 0;
  EXPECT_HTG_ERROR(validate(p), kInvalidArgument);
  p = {};
  p.n_landmarks = 1;
  EXPECT_HTG_ERROR(validate(p), kInvalidArgument);
  p = {};
  p.gamma = 0;
  EXPECT_HTG_ERROR(validate(p), kInvalidArgument);
  p = {};
  p.n_repeats = 0;
  EXPECT_HTG_ERROR(validate(p), kInvalidArgument);
}

GsParams small_params() {
  GsParams p;
  p.n_landmarks = 24;
  p.n_repeats = 10;
  p.gamma = 1.0 / 16;
  return p;
}

TEST(MrltTest, SingleRepeatEqualsRlt) {
  Rng rng(42);
  const RowMatrix pts = testing::random_matrix(rng, 80, 2);
  auto p = small_params();
  p.n_repeats = 1;
  p.seed = 9;
  EXPECT_EQ(mrlt(pts, p), rlt(pts, draw_landmarks(80, p, 0), p));
}

TEST(MrltTest, DeterministicAndThreadInvariant) {
  Rng rng(43);
  const RowMatrix pts = circle(rng, 120, 0.05);
  const auto p = small_params();
  const auto a = mrlt(pts, p, ThreadCount{1});
  EXPECT_EQ(a, mrlt(pts, p, ThreadCount{1}));
  EXPECT_EQ(a, mrlt(pts, p, ThreadCount{4}));
  double sum = 0;
  for (double v : a) {
    EXPECT_GE(v, 0.0);
    sum += v;
  }
  EXPECT_LE(sum, 1.0 + 1e-9);
}

TEST(MrltTest, InsufficientSamples) {
  const RowMatrix pts = RowMatrix::Ones(10, 2);
  EXPECT_HTG_ERROR(mrlt(pts, small_params()), kInsufficientSamples);
}

TEST(MrltTest, IsometryInvariance) {
  Rng rng(44);
  const RowMatrix pts = circle(rng, 100, 0.1);
  const auto p = small_params();
  const auto base = mrlt(pts, p);
  RowMatrix moved = pts;
  moved.rowwise() += Eigen::RowVector2d(3.5, -12.25);
  const double c = std::cos(0.7), s = std::sin(0.7);
  Eigen::Matrix2d rot;
  rot << c, -s, s, c;
  const RowMatrix rotated = pts * rot.transpose();
  const auto mt = mrlt(moved, p);
  const auto mr = mrlt(rotated, p);
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_NEAR(mt[i], base[i], 1e-9);
    EXPECT_NEAR(mr[i], base[i], 1e-9);
  }
}

TEST(GeometryScoreTest, IdentityTranslationAndSymmetry) {
  Rng rng(45);
  const RowMatrix x = circle(rng, 100, 0.05);
  const RowMatrix y = disk(rng, 100);
  const auto p = small_params();
  EXPECT_EQ(geometry_score(x, x, p).score, 0.0);
  RowMatrix shifted = x;
  shifted.rowwise() += Eigen::RowVector2d(100.0, 0.25);
  EXPECT_NEAR(geometry_score(x, shifted, p).score, 0.0, 1e-12);
  const double ab = geometry_score(x, 3, y, 8, p).score;
  EXPECT_EQ(ab, geometry_score(y, 8, x, 3, p).score);
  EXPECT_GE(ab, 0.0);
}

TEST(GeometryScoreTest, CircleVersusDisk) {
  Rng rng(0);
  const RowMatrix c1 = circle(rng, 300);
  const RowMatrix c2 = circle(rng, 300);
  const RowMatrix d = disk(rng, 300);
  GsParams p;
  p.n_repeats = 20;
  EXPECT_GT(geometry_score(c1, d, p).score, geometry_score(c1, c2, p).score);
}

}  // namespace
}  // namespace htg
