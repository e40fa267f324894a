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

#include "htg_eval/protocol.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "htg_eval/error.hpp"
#include "htg_eval/random.hpp"

namespace htg {
namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
bool parse_number(const std::string& s, T& out) {
  if (s.empty()) return false;
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

ScalingPlan scaling_subsets(const DatasetManifest& manifest, std::size_t step,
                            std::uint64_t seed) {
  require(step >= 1, ErrorCode::kInvalidArgument, "scaling step must be >= 1");
  require(!manifest.empty(), ErrorCode::kInvalidArgument, "manifest is empty");
  ScalingPlan plan;
  plan.step = step;
  plan.seed = seed;
  plan.order = manifest.ids();
  Rng rng(seed);
  rng.shuffle(plan.order);
  for (std::size_t s = step; s < plan.order.size(); s += step) plan.sizes.push_back(s);
  plan.sizes.push_back(plan.order.size());
  return plan;
}

nlohmann::json scaling_plan_to_json(const ScalingPlan& plan) {
  nlohmann::json j;
  j["step"] = plan.step;
  j["seed"] = plan.seed;
  j["total"] = plan.total();
  j["sizes"] = plan.sizes;
  nlohmann::json subsets = nlohmann::json::array();
  for (std::size_t k = 0; k < plan.sizes.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "step_%02zu.jsonl", k + 1);
    subsets.push_back({{"file", name}, {"size", plan.sizes[k]}});
  }
  j["subsets"] = subsets;
  return j;
}

std::vector<std::filesystem::path> write_scaling_plan(const ScalingPlan& plan,
                                                      const DatasetManifest& manifest,
                                                      const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (std::size_t k = 0; k < plan.sizes.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "step_%02zu", k + 1);
    const auto sub = manifest.subset(plan.subset(k), name);
    paths.push_back(dir / (std::string(name) + ".jsonl"));
    write_manifest(sub, paths.back());
  }
  std::ofstream out(dir / "plan.json", std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::kIoError, "cannot write " + (dir / "plan.json").string());
  out << scaling_plan_to_json(plan).dump(2) << '\n';
  return paths;
}

std::string ScalingCurve::to_csv() const {
  std::string s = "size,cer_percent\n";
  for (const auto& p : points) s += std::to_string(p.size) + "," + shortest(p.cer_percent) + "\n";
  return s;
}

nlohmann::json ScalingCurve::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points) pts.push_back({{"size", p.size}, {"cer_percent", p.cer_percent}});
  return {{"points", pts}, {"increases", increases}};
}

ScalingCurve scaling_curve(std::span<const ScalingPoint> points) {
  ScalingCurve curve;
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(std::isfinite(points[i].cer_percent), ErrorCode::kNonFiniteData,
            "non-finite CER in scaling results");
    if (i > 0) {
      require(points[i].size != points[i - 1].size, ErrorCode::kSchemaError,
              "duplicate size " + std::to_string(points[i].size) + " in scaling results");
      require(points[i].size > points[i - 1].size, ErrorCode::kSchemaError,
              "scaling sizes must be strictly increasing");
      if (points[i].cer_percent > points[i - 1].cer_percent) ++curve.increases;
    }
    curve.points.push_back(points[i]);
  }
  return curve;
}

std::vector<ScalingPoint> parse_scaling_csv(std::string_view text) {
  std::vector<ScalingPoint> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto comma = t.find(',');
    require(comma != std::string::npos, ErrorCode::kSchemaError,
            "line " + std::to_string(lineno) + ": expected 'size,cer_percent'");
    ScalingPoint p;
    const bool ok = parse_number(trim(t.substr(0, comma)), p.size) &&
                    parse_number(trim(t.substr(comma + 1)), p.cer_percent);
    if (!ok && out.empty() && lineno == 1) continue;
    require(ok, ErrorCode::kSchemaError, "line " + std::to_string(lineno) + ": malformed row");
    out.push_back(p);
  }
  return out;
}

CerSummary summarize(const CerReport& report) {
  return {100.0 * report.micro_rate, report.split_digest};
}

nlohmann::json UtilityComparison::to_json() const {
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : variants) {
    vs.push_back({{"name", v.name},
                  {"cer_percent", v.cer_percent},
                  {"delta", v.delta},
                  {"improved", v.improved}});
  }
  return {{"baseline_cer_percent", baseline_cer_percent},
          {"split_digest", split_digest},
          {"variants", vs}};
}

UtilityComparison utility_comparison(
    const CerSummary& baseline, std::span<const std::pair<std::string, CerSummary>> variants) {
  UtilityComparison cmp;
  cmp.baseline_cer_percent = baseline.cer_percent;
  cmp.split_digest = baseline.split_digest;
  for (const auto& [name, v] : variants) {
    require(v.split_digest == baseline.split_digest, ErrorCode::kSplitViolation,
            "variant '" + name + "' was evaluated on a different test split");
    const double delta = v.cer_percent - baseline.cer_percent;
    cmp.variants.push_back({name, v.cer_percent, delta, delta < 0.0});
  }
  return cmp;
}

UtilityComparison utility_comparison(
    const CerReport& baseline, std::span<const std::pair<std::string, CerReport>> variants) {
  std::vector<std::pair<std::string, CerSummary>> s;
  for (const auto& [name, r] : variants) s.emplace_back(name, summarize(r));
  return utility_comparison(summarize(baseline), s);
}

}  // namespace htg
