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

#include "htg_eval/manifest.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "htg_eval/error.hpp"
#include "htg_eval/random.hpp"
#include "htg_eval/unicode.hpp"

namespace htg {
namespace {

using nlohmann::json;

std::string line_context(std::size_t line_no) {
  return "manifest line " + std::to_string(line_no);
}

SampleEntry parse_entry(const json& obj, std::size_t line_no) {
  const auto ctx = line_context(line_no);
  require(obj.is_object(), ErrorCode::kSchemaError, ctx + ": expected a JSON object");
  for (const char* key : {"sample_id", "transcript", "writer_id"}) {
    require(obj.contains(key), ErrorCode::kSchemaError,
            ctx + ": missing required field '" + key + "'");
  }
  SampleEntry e;
  const auto& id = obj.at("sample_id");
  require(id.is_string() && !id.get<std::string>().empty(), ErrorCode::kSchemaError,
          ctx + ": sample_id must be a non-empty string");
  e.sample_id = id.get<std::string>();

  const auto& transcript = obj.at("transcript");
  require(transcript.is_string(), ErrorCode::kSchemaError, ctx + ": transcript must be a string");
  e.transcript = transcript.get<std::string>();

  const auto& writer = obj.at("writer_id");
  require(writer.is_number_integer(), ErrorCode::kSchemaError,
          ctx + ": writer_id must be an integer");
  e.writer_id = writer.get<std::int64_t>();

  if (auto it = obj.find("image_path"); it != obj.end() && !it->is_null()) {
    require(it->is_string(), ErrorCode::kSchemaError, ctx + ": image_path must be string or null");
    e.image_path = it->get<std::string>();
  }
  if (auto it = obj.find("vocab_tag"); it != obj.end() && !it->is_null()) {
    require(it->is_string(), ErrorCode::kSchemaError, ctx + ": vocab_tag must be string or null");
    const auto tag = it->get<std::string>();
    if (tag == "IV") {
      e.vocab_tag = VocabTag::kInVocabulary;
    } else if (tag == "OOV") {
      e.vocab_tag = VocabTag::kOutOfVocabulary;
    } else {
      fail(ErrorCode::kSchemaError, ctx + ": vocab_tag must be \"IV\", \"OOV\" or null");
    }
  }
  return e;
}

json entry_to_json(const SampleEntry& e) {
  json obj = json::object();
  obj["sample_id"] = e.sample_id;
  obj["image_path"] = e.image_path ? json(*e.image_path) : json(nullptr);
  obj["transcript"] = e.transcript;
  obj["writer_id"] = e.writer_id;
  switch (e.vocab_tag) {
    case VocabTag::kInVocabulary: obj["vocab_tag"] = "IV"; break;
    case VocabTag::kOutOfVocabulary: obj["vocab_tag"] = "OOV"; break;
    case VocabTag::kUnset: obj["vocab_tag"] = nullptr; break;
  }
  return obj;
}

}  // namespace

DatasetManifest::DatasetManifest(std::string split_name, std::vector<SampleEntry> samples)
    : split_name_(std::move(split_name)), samples_(std::move(samples)) {
  index_.reserve(samples_.size());
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& e = samples_[i];
    require(!e.sample_id.empty(), ErrorCode::kSchemaError, "empty sample_id");
    require(!e.transcript.empty(), ErrorCode::kSchemaError,
            "sample '" + e.sample_id + "' has an empty transcript");
    require(e.writer_id >= 0, ErrorCode::kSchemaError,
            "sample '" + e.sample_id + "' has a negative writer_id");
    require(index_.emplace(e.sample_id, i).second, ErrorCode::kDuplicateId,
            "duplicate sample_id '" + e.sample_id + "'");
    lexicon_.insert(nfc(e.transcript));
  }
}

const SampleEntry* DatasetManifest::find(std::string_view sample_id) const {
  auto it = index_.find(std::string(sample_id));
  return it == index_.end() ? nullptr : &samples_[it->second];
}

std::vector<std::string> DatasetManifest::ids() const {
  std::vector<std::string> out;
  out.reserve(samples_.size());
  for (const auto& e : samples_) out.push_back(e.sample_id);
  return out;
}

DatasetManifest DatasetManifest::subset(std::span<const std::string> ids,
                                        std::string split_name) const {
  std::unordered_set<std::string_view> wanted(ids.begin(), ids.end());
  std::vector<SampleEntry> out;
  for (const auto& e : samples_) {
    if (wanted.contains(e.sample_id)) out.push_back(e);
  }
  return DatasetManifest(std::move(split_name), std::move(out));
}

DatasetManifest parse_manifest(std::istream& in, std::string split_name) {
  std::vector<SampleEntry> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::kSchemaError, line_context(line_no) + ": " + e.what());
    }
    samples.push_back(parse_entry(obj, line_no));
  }
  return DatasetManifest(std::move(split_name), std::move(samples));
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kIoError, "cannot open manifest " + path.string());
  return parse_manifest(in, path.stem().string());
}

std::string manifest_to_jsonl(const DatasetManifest& manifest) {
  std::string out;
  for (const auto& e : manifest.samples()) {
    out += entry_to_json(e).dump();
    out.push_back('\n');
  }
  return out;
}

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::kIoError, "cannot write " + path.string());
  out << manifest_to_jsonl(manifest);
}

LexiconPartition partition_lexicon(const std::set<std::string>& train_lexicon,
                                   std::span<const std::string> candidates) {
  require(!train_lexicon.empty(), ErrorCode::kInvalidArgument, "training lexicon is empty");
  std::unordered_set<std::string> normalized;
  normalized.reserve(train_lexicon.size());
  for (const auto& w : train_lexicon) normalized.insert(nfc(w));

  LexiconPartition out;
  for (const auto& word : candidates) {
    if (normalized.contains(nfc(word))) {
      out.in_vocabulary.push_back(word);
    } else {
      out.out_of_vocabulary.push_back(word);
    }
  }
  return out;
}

DatasetManifest tag_vocabulary(const DatasetManifest& manifest,
                               const std::set<std::string>& train_lexicon) {
  require(!train_lexicon.empty(), ErrorCode::kInvalidArgument, "training lexicon is empty");
  std::unordered_set<std::string> normalized;
  for (const auto& w : train_lexicon) normalized.insert(nfc(w));
  std::vector<SampleEntry> tagged = manifest.samples();
  for (auto& e : tagged) {
    e.vocab_tag = normalized.contains(nfc(e.transcript)) ? VocabTag::kInVocabulary
                                                         : VocabTag::kOutOfVocabulary;
  }
  return DatasetManifest(manifest.split_name(), std::move(tagged));
}

StyleSplit make_style_split(const DatasetManifest& manifest, double train_fraction,
                            std::uint64_t seed) {
  require(train_fraction > 0.0 && train_fraction < 1.0, ErrorCode::kInvalidArgument,
          "train_fraction must lie in (0, 1)");
  std::map<std::int64_t, std::vector<std::size_t>> by_writer;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    by_writer[manifest.samples()[i].writer_id].push_back(i);
  }

  Rng rng(seed);
  std::vector<char> in_train(manifest.size(), 0);
  StyleSplit split;
  for (auto& [writer, members] : by_writer) {
    if (members.size() == 1) {
      in_train[members.front()] = 1;
      split.warnings.push_back("writer " + std::to_string(writer) +
                               " has a single sample; placed in train");
      continue;
    }
    rng.shuffle(members);
    // The epsilon keeps products such as 0.7 * 10 from flooring to 6.
    const auto n_train = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(members.size()) + 1e-9));
    for (std::size_t k = 0; k < n_train; ++k) in_train[members[k]] = 1;
  }
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    (in_train[i] ? split.train_ids : split.eval_ids).push_back(manifest.samples()[i].sample_id);
  }
  return split;
}

std::vector<std::string> load_id_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kIoError, "cannot open id list " + path.string());
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

std::string id_list_to_text(std::span<const std::string> ids) {
  std::string out;
  for (const auto& id : ids) {
    out += id;
    out.push_back('\n');
  }
  return out;
}

}  // namespace htg
