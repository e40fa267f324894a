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

#ifndef HTG_EVAL_REPORT_HPP_
#define HTG_EVAL_REPORT_HPP_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace htg {

inline constexpr const char* kTableColumns[] = {"FID",     "KID",       "HWD",
                                                "HTG_HTR", "HTG_style", "HTG_OOV"};

struct MetricEntry {
  std::string method;
  std::string metric;
  double value = 0.0;
  nlohmann::json metadata = nlohmann::json::object();
};

struct MetricValue {
  double value = 0.0;
  nlohmann::json metadata = nlohmann::json::object();

  bool operator==(const MetricValue&) const = default;
};

struct MetricReport {
  std::vector<std::string> method_order;  // first appearance
  std::map<std::string, std::map<std::string, MetricValue>> methods;
};

// Repeating an identical entry is allowed; the same (method, metric) with a
// different value or metadata is a SchemaError, as is an empty input.
MetricReport build_report(std::span<const MetricEntry> entries);

enum class ReportFormat { kJson, kMarkdown, kCsv };

ReportFormat parse_report_format(std::string_view name);
std::string render_report(const MetricReport& report, ReportFormat format);

// Accepts either an array of entries or an object with an "entries" array.
std::vector<MetricEntry> entries_from_json(const nlohmann::json& j);

}  // namespace htg

#endif  // HTG_EVAL_REPORT_HPP_
