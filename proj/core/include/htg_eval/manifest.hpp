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

#ifndef HTG_EVAL_MANIFEST_HPP_
#define HTG_EVAL_MANIFEST_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace htg {

enum class VocabTag { kUnset, kInVocabulary, kOutOfVocabulary };

struct SampleEntry {
  std::string sample_id;
  std::optional<std::string> image_path;
  std::string transcript;
  std::int64_t writer_id = 0;
  VocabTag vocab_tag = VocabTag::kUnset;

  bool operator==(const SampleEntry&) const = default;
};

// A split of a word-level dataset. Sample IDs are unique, transcripts are
// non-empty and writer labels non-negative; the constructor enforces this.
class DatasetManifest {
 public:
  DatasetManifest(std::string split_name, std::vector<SampleEntry> samples);

  const std::string& split_name() const { return split_name_; }
  const std::vector<SampleEntry>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  // Distinct NFC-normalised transcripts.
  const std::set<std::string>& lexicon() const { return lexicon_; }

  const SampleEntry* find(std::string_view sample_id) const;
  bool contains(std::string_view sample_id) const { return find(sample_id) != nullptr; }
  std::vector<std::string> ids() const;

  // Entries whose ID is in `ids`, kept in manifest order.
  DatasetManifest subset(std::span<const std::string> ids, std::string split_name) const;

 private:
  std::string split_name_;
  std::vector<SampleEntry> samples_;
  std::unordered_map<std::string, std::size_t> index_;
  std::set<std::string> lexicon_;
};

// JSON Lines, one sample object per non-blank line. The split name defaults
// to the file stem.
DatasetManifest load_manifest(const std::filesystem::path& path);
DatasetManifest parse_manifest(std::istream& in, std::string split_name);
std::string manifest_to_jsonl(const DatasetManifest& manifest);
void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

struct LexiconPartition {
  std::vector<std::string> in_vocabulary;
  std::vector<std::string> out_of_vocabulary;
};

// Splits candidates by membership in the training lexicon. Words are
// compared after NFC, case-sensitively; output keeps the candidates'
// original spelling and order.
LexiconPartition partition_lexicon(const std::set<std::string>& train_lexicon,
                                   std::span<const std::string> candidates);

// Copy of `manifest` with every entry tagged IV or OOV against the lexicon.
DatasetManifest tag_vocabulary(const DatasetManifest& manifest,
                               const std::set<std::string>& train_lexicon);

struct StyleSplit {
  std::vector<std::string> train_ids;
  std::vector<std::string> eval_ids;
  std::vector<std::string> warnings;
};

// Per-writer stratified split: floor(fraction * n_w) samples of writer w go
// to train, the rest to eval. Single-sample writers go to train with a
// warning. Both lists are in manifest order.
StyleSplit make_style_split(const DatasetManifest& manifest, double train_fraction,
                            std::uint64_t seed);

// Newline-separated ID lists, used for split files and filter output.
std::vector<std::string> load_id_list(const std::filesystem::path& path);
std::string id_list_to_text(std::span<const std::string> ids);

}  // namespace htg

#endif  // HTG_EVAL_MANIFEST_HPP_
