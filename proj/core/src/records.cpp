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

#include "htg_eval/records.hpp"

#include <fstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "htg_eval/error.hpp"

namespace htg {
namespace {

using nlohmann::json;

template <typename Fn>
void for_each_json_line(std::istream& in, const char* what, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string ctx = std::string(what) + " line " + std::to_string(line_no);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::kSchemaError, ctx + ": " + e.what());
    }
    require(obj.is_object(), ErrorCode::kSchemaError, ctx + ": expected a JSON object");
    fn(obj, ctx);
  }
}

std::string string_field(const json& obj, const char* key, const std::string& ctx) {
  auto it = obj.find(key);
  require(it != obj.end(), ErrorCode::kSchemaError, ctx + ": missing field '" + key + "'");
  require(it->is_string(), ErrorCode::kSchemaError, ctx + ": '" + key + "' must be a string");
  return it->get<std::string>();
}

std::int64_t label_field(const json& obj, const char* key, const std::string& ctx) {
  auto it = obj.find(key);
  require(it != obj.end(), ErrorCode::kSchemaError, ctx + ": missing field '" + key + "'");
  require(it->is_number_integer(), ErrorCode::kSchemaError,
          ctx + ": '" + key + "' must be an integer");
  const auto v = it->get<std::int64_t>();
  require(v >= 0, ErrorCode::kSchemaError, ctx + ": '" + key + "' must be non-negative");
  return v;
}

std::ifstream open_or_fail(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kIoError, "cannot open " + path.string());
  return in;
}

void check_unique(std::unordered_set<std::string>& seen, const std::string& id,
                  const std::string& ctx) {
  require(!id.empty(), ErrorCode::kSchemaError, ctx + ": sample_id is empty");
  require(seen.insert(id).second, ErrorCode::kDuplicateId,
          ctx + ": duplicate sample_id '" + id + "'");
}

}  // namespace

std::vector<TranscriptionRecord> parse_transcriptions(std::istream& in) {
  std::vector<TranscriptionRecord> out;
  std::unordered_set<std::string> seen;
  for_each_json_line(in, "transcription log", [&](const json& obj, const std::string& ctx) {
    TranscriptionRecord r;
    r.sample_id = string_field(obj, "sample_id", ctx);
    r.reference = string_field(obj, "reference", ctx);
    r.hypothesis = string_field(obj, "hypothesis", ctx);
    check_unique(seen, r.sample_id, ctx);
    require(!r.reference.empty(), ErrorCode::kEmptyReference,
            ctx + ": empty reference for '" + r.sample_id + "'");
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<TranscriptionRecord> load_transcriptions(const std::filesystem::path& path) {
  auto in = open_or_fail(path);
  return parse_transcriptions(in);
}

std::string transcriptions_to_jsonl(std::span<const TranscriptionRecord> records) {
  std::string out;
  for (const auto& r : records) {
    json obj = {{"sample_id", r.sample_id}, {"reference", r.reference},
                {"hypothesis", r.hypothesis}};
    out += obj.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<StylePredictionRecord> parse_style_predictions(std::istream& in) {
  std::vector<StylePredictionRecord> out;
  std::unordered_set<std::string> seen;
  for_each_json_line(in, "style log", [&](const json& obj, const std::string& ctx) {
    StylePredictionRecord r;
    r.sample_id = string_field(obj, "sample_id", ctx);
    r.true_label = label_field(obj, "true_label", ctx);
    r.predicted_label = label_field(obj, "predicted_label", ctx);
    check_unique(seen, r.sample_id, ctx);
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<StylePredictionRecord> load_style_predictions(const std::filesystem::path& path) {
  auto in = open_or_fail(path);
  return parse_style_predictions(in);
}

std::string style_predictions_to_jsonl(std::span<const StylePredictionRecord> records) {
  std::string out;
  for (const auto& r : records) {
    json obj = {{"sample_id", r.sample_id}, {"true_label", r.true_label},
                {"predicted_label", r.predicted_label}};
    out += obj.dump();
    out.push_back('\n');
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::kIoError, "cannot write " + path.string());
  out << content;
}

}  // namespace htg
