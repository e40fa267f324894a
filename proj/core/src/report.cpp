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

#include "htg_eval/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "htg_eval/error.hpp"

namespace htg {
namespace {

int column_precision(std::string_view metric) {
  if (metric == "KID") return 4;
  if (metric == "HWD") return 3;
  return 2;
}

bool is_table_column(std::string_view metric) {
  return std::find(std::begin(kTableColumns), std::end(kTableColumns), metric) !=
         std::end(kTableColumns);
}

std::string format_fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string format_general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> columns_of(const MetricReport& r) {
  std::vector<std::string> cols(std::begin(kTableColumns), std::end(kTableColumns));
  std::set<std::string> extra;
  for (const auto& [_, metrics] : r.methods) {
    for (const auto& [name, _v] : metrics) {
      if (!is_table_column(name)) extra.insert(name);
    }
  }
  cols.insert(cols.end(), extra.begin(), extra.end());
  return cols;
}

std::string render_markdown(const MetricReport& r) {
  const auto cols = columns_of(r);
  std::string s = "| Method |";
  std::string rule = "|---|";
  for (const auto& c : cols) {
    s += " " + c + " |";
    rule += "---:|";
  }
  s += "\n" + rule + "\n";
  for (const auto& method : r.method_order) {
    const auto& metrics = r.methods.at(method);
    s += "| " + method + " |";
    for (const auto& c : cols) {
      auto it = metrics.find(c);
      std::string cell = "-";
      if (it != metrics.end()) {
        cell = is_table_column(c) ? format_fixed(it->second.value, column_precision(c))
                                  : format_general(it->second.value);
      }
      s += " " + cell + " |";
    }
    s += "\n";
  }
  return s;
}

std::string render_csv(const MetricReport& r) {
  const auto cols = columns_of(r);
  std::string s = "method";
  for (const auto& c : cols) s += "," + csv_field(c);
  s += "\n";
  for (const auto& method : r.method_order) {
    const auto& metrics = r.methods.at(method);
    s += csv_field(method);
    for (const auto& c : cols) {
      auto it = metrics.find(c);
      s += ",";
      if (it != metrics.end()) s += shortest(it->second.value);
    }
    s += "\n";
  }
  return s;
}

std::string render_json(const MetricReport& r) {
  nlohmann::json j;
  j["method_order"] = r.method_order;
  nlohmann::json methods = nlohmann::json::object();
  for (const auto& [method, metrics] : r.methods) {
    for (const auto& [name, v] : metrics) {
      methods[method][name] = {{"value", v.value}, {"metadata", v.metadata}};
    }
  }
  j["methods"] = methods;
  return j.dump(2) + "\n";
}

}  // namespace

MetricReport build_report(std::span<const MetricEntry> entries) {
  require(!entries.empty(), ErrorCode::kSchemaError, "report has no metric entries");
  MetricReport r;
  for (const auto& e : entries) {
    require(!e.method.empty() && !e.metric.empty(), ErrorCode::kSchemaError,
            "metric entries need a method and a metric name");
    require(std::isfinite(e.value), ErrorCode::kNonFiniteData,
            "non-finite value for " + e.method + "/" + e.metric);
    auto [mit, fresh] = r.methods.try_emplace(e.method);
    if (fresh) r.method_order.push_back(e.method);
    const MetricValue v{e.value, e.metadata};
    auto [it, inserted] = mit->second.try_emplace(e.metric, v);
    require(inserted || it->second == v, ErrorCode::kSchemaError,
            "conflicting entries for " + e.method + "/" + e.metric);
  }
  return r;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  if (name == "csv") return ReportFormat::kCsv;
  fail(ErrorCode::kInvalidArgument, "unknown report format '" + std::string(name) + "'");
}

std::string render_report(const MetricReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson:
      return render_json(report);
    case ReportFormat::kMarkdown:
      return render_markdown(report);
    case ReportFormat::kCsv:
      return render_csv(report);
  }
  fail(ErrorCode::kInvalidArgument, "unknown report format");
}

std::vector<MetricEntry> entries_from_json(const nlohmann::json& j) {
  const nlohmann::json* arr = &j;
  if (j.is_object()) {
    require(j.contains("entries"), ErrorCode::kSchemaError, "report input lacks 'entries'");
    arr = &j.at("entries");
  }
  require(arr->is_array(), ErrorCode::kSchemaError, "report entries must be an array");
  std::vector<MetricEntry> out;
  for (const auto& e : *arr) {
    require(e.is_object() && e.contains("method") && e.contains("metric") && e.contains("value"),
            ErrorCode::kSchemaError, "entry needs 'method', 'metric' and 'value'");
    try {
      MetricEntry m{e.at("method").get<std::string>(), e.at("metric").get<std::string>(),
                    e.at("value").get<double>(),
                    e.value("metadata", nlohmann::json::object())};
      out.push_back(std::move(m));
    } catch (const nlohmann::json::exception& ex) {
      fail(ErrorCode::kSchemaError, std::string("bad report entry: ") + ex.what());
    }
  }
  return out;
}

}  // namespace htg
