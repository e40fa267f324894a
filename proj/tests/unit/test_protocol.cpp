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

#include <set>
#include <vector>

#include "htg_eval/manifest.hpp"
#include "htg_eval/protocol.hpp"
#include "test_support.hpp"

namespace htg {
namespace {

DatasetManifest numbered_manifest(std::size_t n) {
  std::vector<SampleEntry> s;
  for (std::size_t i = 0; i < n; ++i) {
    s.push_back({"w" + std::to_string(i), std::nullopt, "word" + std::to_string(i % 97),
                 static_cast<std::int64_t>(i % 5), VocabTag::kUnset});
  }
  return DatasetManifest("train", std::move(s));
}

TEST(ScalingPlanTest, NestedSubsets) {
  const auto m = numbered_manifest(47000);
  const auto plan = scaling_subsets(m, 5000, 3);
  ASSERT_EQ(plan.sizes.size(), 10u);
  for (std::size_t k = 0; k < 9; ++k) EXPECT_EQ(plan.sizes[k], 5000 * (k + 1));
  EXPECT_EQ(plan.sizes.back(), 47000u);
  const std::set<std::string> all(plan.order.begin(), plan.order.end());
  EXPECT_EQ(all.size(), 47000u);
  for (std::size_t k = 1; k < plan.sizes.size(); ++k) {
    const auto prev = plan.subset(k - 1), cur = plan.subset(k);
    EXPECT_TRUE(std::equal(prev.begin(), prev.end(), cur.begin()));
  }
  EXPECT_EQ(scaling_subsets(m, 5000, 3).order, plan.order);
  EXPECT_NE(scaling_subsets(m, 5000, 4).order, plan.order);
}

TEST(ScalingPlanTest, EdgeCases) {
  const auto m = numbered_manifest(10);
  EXPECT_EQ(scaling_subsets(m, 5).sizes, (std::vector<std::size_t>{5, 10}));
  EXPECT_EQ(scaling_subsets(m, 20).sizes, (std::vector<std::size_t>{10}));
  EXPECT_HTG_ERROR(scaling_subsets(m, 0), kInvalidArgument);
}

TEST(ScalingPlanTest, WritesFiles) {
  testing::TempDir dir;
  const auto m = numbered_manifest(12);
  const auto plan = scaling_subsets(m, 5, 1);
  const auto paths = write_scaling_plan(plan, m, dir.path());
  ASSERT_EQ(paths.size(), 3u);
  EXPECT_EQ(load_manifest(paths[0]).size(), 5u);
  EXPECT_EQ(load_manifest(paths[2]).size(), 12u);
  const auto j = nlohmann::json::parse(testing::read_file(dir / "plan.json"));
  EXPECT_EQ(j["total"], 12);
  EXPECT_EQ(j["subsets"][1]["file"], "step_02.jsonl");
}

TEST(ScalingCurveTest, CountsIncreasesAndValidates) {
  const std::vector<ScalingPoint> pts{{5000, 9.0}, {10000, 7.5}, {15000, 7.9}, {20000, 6.0}};
  const auto c = scaling_curve(pts);
  EXPECT_EQ(c.increases, 1u);
  EXPECT_EQ(c.to_csv(), "size,cer_percent\n5000,9\n10000,7.5\n15000,7.9\n20000,6\n");
  const auto parsed = parse_scaling_csv(c.to_csv());
  ASSERT_EQ(parsed.size(), 4u);
  EXPECT_EQ(parsed[2].cer_percent, 7.9);
  const std::vector<ScalingPoint> dup{{5000, 1.0}, {5000, 2.0}};
  EXPECT_HTG_ERROR(scaling_curve(dup), kSchemaError);
  const std::vector<ScalingPoint> nan{{5000, std::nan("")}};
  EXPECT_HTG_ERROR(scaling_curve(nan), kNonFiniteData);
  EXPECT_HTG_ERROR(parse_scaling_csv("size,cer\n1,2\nx,3\n"), kSchemaError);
}

TEST(UtilityComparisonTest, DeltaAndSplitCheck) {
  const CerSummary base{5.14, "d1"};
  const std::vector<std::pair<std::string, CerSummary>> v{{"augmented", {4.49, "d1"}},
                                                          {"worse", {6.0, "d1"}}};
  const auto c = utility_comparison(base, v);
  ASSERT_EQ(c.variants.size(), 2u);
  EXPECT_NEAR(c.variants[0].delta, -0.65, 1e-12);
  EXPECT_TRUE(c.variants[0].improved);
  EXPECT_FALSE(c.variants[1].improved);
  const std::vector<std::pair<std::string, CerSummary>> other{{"x", {4.0, "d2"}}};
  EXPECT_HTG_ERROR(utility_comparison(base, other), kSplitViolation);
}

TEST(UtilityComparisonTest, FromReports) {
  const std::vector<TranscriptionRecord> a{{"x", "abcd", "abcx"}, {"y", "ef", "ef"}};
  const std::vector<TranscriptionRecord> b{{"y", "ef", "ef"}, {"x", "abcd", "abcd"}};
  const std::vector<std::pair<std::string, CerReport>> v{{"b", cer(b)}};
  const auto c = utility_comparison(cer(a), v);
  EXPECT_NEAR(c.baseline_cer_percent, 100.0 / 6.0, 1e-12);
  EXPECT_NEAR(c.variants[0].delta, -100.0 / 6.0, 1e-12);
  const std::vector<TranscriptionRecord> other{{"z", "ef", "ef"}};
  const std::vector<std::pair<std::string, CerReport>> bad{{"z", cer(other)}};
  EXPECT_HTG_ERROR(utility_comparison(cer(a), bad), kSplitViolation);
}

}  // namespace
}  // namespace htg
