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

#ifndef HTG_EVAL_PROTOCOL_HPP_
#define HTG_EVAL_PROTOCOL_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "htg_eval/manifest.hpp"
#include "htg_eval/text_metrics.hpp"

namespace htg {

// Nested training subsets for a data-scaling experiment. Subset k is the
// first sizes[k] IDs of `order`.
struct ScalingPlan {
  std::size_t step = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> order;
  std::vector<std::size_t> sizes;

  std::size_t total() const { return order.size(); }
  std::span<const std::string> subset(std::size_t k) const {
    return std::span<const std::string>(order).first(sizes.at(k));
  }
};

ScalingPlan scaling_subsets(const DatasetManifest& manifest, std::size_t step = 5000,
                            std::uint64_t seed = 0);

nlohmann::json scaling_plan_to_json(const ScalingPlan& plan);

// Writes step_NN.jsonl sub-manifests (entries in manifest order) and
// plan.json into `dir`. Returns the sub-manifest paths.
std::vector<std::filesystem::path> write_scaling_plan(const ScalingPlan& plan,
                                                      const DatasetManifest& manifest,
                                                      const std::filesystem::path& dir);

struct ScalingPoint {
  std::size_t size = 0;
  double cer_percent = 0.0;
};

struct ScalingCurve {
  std::vector<ScalingPoint> points;
  // Number of steps at which CER went up.
  std::size_t increases = 0;

  std::string to_csv() const;
  nlohmann::json to_json() const;
};

ScalingCurve scaling_curve(std::span<const ScalingPoint> points);
// Reads "size,cer_percent" rows; a non-numeric first row is taken as a header.
std::vector<ScalingPoint> parse_scaling_csv(std::string_view text);

struct CerSummary {
  double cer_percent = 0.0;
  std::string split_digest;
};

CerSummary summarize(const CerReport& report);

struct UtilityDelta {
  std::string name;
  double cer_percent = 0.0;
  double delta = 0.0;  // variant - baseline, in CER percentage points
  bool improved = false;
};

struct UtilityComparison {
  double baseline_cer_percent = 0.0;
  std::string split_digest;
  std::vector<UtilityDelta> variants;

  nlohmann::json to_json() const;
};

// All inputs must share the baseline's split digest.
UtilityComparison utility_comparison(const CerSummary& baseline,
                                     std::span<const std::pair<std::string, CerSummary>> variants);
UtilityComparison utility_comparison(const CerReport& baseline,
                                     std::span<const std::pair<std::string, CerReport>> variants);

}  // namespace htg

#endif  // HTG_EVAL_PROTOCOL_HPP_
