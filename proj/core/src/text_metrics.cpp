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

#include "htg_eval/text_metrics.hpp"

#include "htg_eval/digest.hpp"
#include "htg_eval/error.hpp"
#include "htg_eval/unicode.hpp"

namespace htg {
namespace {

EditStats record_stats(const TranscriptionRecord& r, ErrorUnit unit) {
  const EditStats s = unit == ErrorUnit::kCharacter ? levenshtein(r.reference, r.hypothesis)
                                                    : word_levenshtein(r.reference, r.hypothesis);
  require(s.reference_length > 0, ErrorCode::kEmptyReference,
          "record '" + r.sample_id + "' has an empty reference");
  return s;
}

CerReport error_rate(std::span<const TranscriptionRecord> records, ErrorUnit unit,
                     ThreadCount threads) {
  require(!records.empty(), ErrorCode::kNoRecords, "no transcription records");
  CerReport report;
  report.unit = unit;
  report.records.resize(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i) {
    report.records[i] = {records[i].sample_id, record_stats(records[i], unit)};
  });
  double macro = 0.0;
  std::vector<std::string> ids;
  ids.reserve(records.size());
  for (const auto& r : report.records) {
    report.total_edits += r.stats.distance();
    report.total_reference_length += r.stats.reference_length;
    macro += r.rate();
    ids.push_back(r.sample_id);
  }
  report.micro_rate = static_cast<double>(report.total_edits) /
                      static_cast<double>(report.total_reference_length);
  report.macro_rate = macro / static_cast<double>(records.size());
  report.split_digest = id_set_digest(std::move(ids));
  return report;
}

}  // namespace

EditStats levenshtein(std::string_view reference, std::string_view hypothesis) {
  const auto ref = nfc_codepoints(reference);
  const auto hyp = nfc_codepoints(hypothesis);
  return edit_stats<char32_t>(ref, hyp);
}

EditStats word_levenshtein(std::string_view reference, std::string_view hypothesis) {
  auto ref = split_whitespace(nfc(reference));
  auto hyp = split_whitespace(nfc(hypothesis));
  return edit_stats<std::string>(ref, hyp);
}

CerReport cer(std::span<const TranscriptionRecord> records, ThreadCount threads) {
  return error_rate(records, ErrorUnit::kCharacter, threads);
}

CerReport wer(std::span<const TranscriptionRecord> records, ThreadCount threads) {
  return error_rate(records, ErrorUnit::kWord, threads);
}

double htg_htr(std::span<const TranscriptionRecord> records, const DatasetManifest& test_split,
               ThreadCount threads) {
  for (const auto& r : records) {
    require(test_split.contains(r.sample_id), ErrorCode::kSplitViolation,
            "record '" + r.sample_id + "' is not in test split '" + test_split.split_name() +
                "'");
  }
  return 100.0 * cer(records, threads).micro_rate;
}

double htg_oov(std::span<const TranscriptionRecord> records, const DatasetManifest& oov_set,
               ThreadCount threads) {
  for (const auto& r : records) {
    const auto* entry = oov_set.find(r.sample_id);
    require(entry != nullptr, ErrorCode::kSplitViolation,
            "record '" + r.sample_id + "' is not in OOV set '" + oov_set.split_name() + "'");
    require(entry->vocab_tag != VocabTag::kInVocabulary, ErrorCode::kVocabViolation,
            "record '" + r.sample_id + "' (\"" + r.reference + "\") is tagged in-vocabulary");
    require(entry->vocab_tag == VocabTag::kOutOfVocabulary, ErrorCode::kVocabViolation,
            "record '" + r.sample_id + "' has no OOV tag in the manifest");
    require(nfc(entry->transcript) == nfc(r.reference), ErrorCode::kSchemaError,
            "record '" + r.sample_id + "' reference differs from the manifest transcript");
  }
  return 100.0 * cer(records, threads).micro_rate;
}

FilterResult filter_by_cer(std::span<const TranscriptionRecord> records, double threshold,
                           ThreadCount threads) {
  std::vector<double> rates(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i) {
    const auto s = record_stats(records[i], ErrorUnit::kCharacter);
    rates[i] = static_cast<double>(s.distance()) / static_cast<double>(s.reference_length);
  });
  FilterResult out;
  out.threshold = threshold;
  for (std::size_t i = 0; i < records.size(); ++i) {
    (rates[i] <= threshold ? out.kept_ids : out.dropped_ids).push_back(records[i].sample_id);
  }
  return out;
}

}  // namespace htg
