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

#include <vector>

#include "htg_eval/report.hpp"
#include "test_support.hpp"

namespace htg {
namespace {

std::vector<MetricEntry> benchmark_entries() {
  std::vector<MetricEntry> e{{"Real", "HTG_HTR", 5.14}, {"Real", "HTG_style", 82.05}};
  const auto add = [&](const std::string& m, std::vector<double> v) {
    for (std::size_t i = 0; i < 6; ++i) e.push_back({m, kTableColumns[i], v[i]});
  };
  add("GANwriting", {37.41, 0.0196, 0.610, 39.56, 4.59, 7.45});
  add("SmartPatch", {48.24, 0.0331, 0.641, 39.22, 3.00, 9.20});
  add("VATr", {27.79, 0.0105, 0.591, 21.37, 1.39, 5.42});
  add("WordStylist", {36.69, 0.0194, 0.303, 8.23, 67.12, 29.85});
  return e;
}

const char* kExpectedMarkdown =
    "| Method | FID | KID | HWD | HTG_HTR | HTG_style | HTG_OOV |\n"
    "|---|---:|---:|---:|---:|---:|---:|\n"
    "| Real | - | - | - | 5.14 | 82.05 | - |\n"
    "| GANwriting | 37.41 | 0.0196 | 0.610 | 39.56 | 4.59 | 7.45 |\n"
    "| SmartPatch | 48.24 | 0.0331 | 0.641 | 39.22 | 3.00 | 9.20 |\n"
    "| VATr | 27.79 | 0.0105 | 0.591 | 21.37 | 1.39 | 5.42 |\n"
    "| WordStylist | 36.69 | 0.0194 | 0.303 | 8.23 | 67.12 | 29.85 |\n";

TEST(ReportTest, MarkdownTable) {
  const auto r = build_report(benchmark_entries());
  EXPECT_EQ(render_report(r, ReportFormat::kMarkdown), kExpectedMarkdown);
}

TEST(ReportTest, DeterministicAcrossRuns) {
  const auto e = benchmark_entries();
  for (auto f : {ReportFormat::kJson, ReportFormat::kMarkdown, ReportFormat::kCsv}) {
    EXPECT_EQ(render_report(build_report(e), f), render_report(build_report(e), f));
  }
}

TEST(ReportTest, CsvAndExtraColumns) {
  std::vector<MetricEntry> e{{"A", "FID", 1.5}, {"A", "GS", 0.000123456789}, {"B", "KID", 0.25}};
  const auto r = build_report(e);
  EXPECT_EQ(render_report(r, ReportFormat::kCsv),
            "method,FID,KID,HWD,HTG_HTR,HTG_style,HTG_OOV,GS\n"
            "A,1.5,,,,,,0.000123456789\n"
            "B,,0.25,,,,,\n");
  const auto md = render_report(r, ReportFormat::kMarkdown);
  EXPECT_NE(md.find("| GS |"), std::string::npos);
  EXPECT_NE(md.find("0.000123457"), std::string::npos);
}

TEST(ReportTest, JsonRoundTrip) {
  std::vector<MetricEntry> e{{"A", "FID", 1.5, {{"n", 3}}}, {"A", "KID", 0.1}};
  const auto r = build_report(e);
  const auto j = nlohmann::json::parse(render_report(r, ReportFormat::kJson));
  EXPECT_EQ(j["method_order"], nlohmann::json::array({"A"}));
  EXPECT_EQ(j["methods"]["A"]["FID"]["value"], 1.5);
  EXPECT_EQ(j["methods"]["A"]["FID"]["metadata"]["n"], 3);
  const nlohmann::json in = {{"entries", {{{"method", "A"}, {"metric", "FID"}, {"value", 2.0}}}}};
  const auto back = entries_from_json(in);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].value, 2.0);
  EXPECT_HTG_ERROR(entries_from_json(nlohmann::json{{"x", 1}}), kSchemaError);
  EXPECT_HTG_ERROR(entries_from_json(nlohmann::json::array({{{"method", "A"}}})), kSchemaError);
}

TEST(ReportTest, Validation) {
  EXPECT_HTG_ERROR(build_report({}), kSchemaError);
  const std::vector<MetricEntry> conflict{{"A", "FID", 1.0}, {"A", "FID", 2.0}};
  EXPECT_HTG_ERROR(build_report(conflict), kSchemaError);
  const std::vector<MetricEntry> same{{"A", "FID", 1.0}, {"A", "FID", 1.0}};
  EXPECT_NO_THROW(build_report(same));
  const std::vector<MetricEntry> inf{{"A", "FID", INFINITY}};
  EXPECT_HTG_ERROR(build_report(inf), kNonFiniteData);
  EXPECT_EQ(parse_report_format("md"), ReportFormat::kMarkdown);
  EXPECT_HTG_ERROR(parse_report_format("xml"), kInvalidArgument);
}

}  // namespace
}  // namespace htg
