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

#ifndef HTG_EVAL_TEXT_METRICS_HPP_
#define HTG_EVAL_TEXT_METRICS_HPP_

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "htg_eval/manifest.hpp"
#include "htg_eval/parallel.hpp"
#include "htg_eval/types.hpp"

namespace htg {

struct EditStats {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t reference_length = 0;

  std::size_t distance() const { return substitutions + insertions + deletions; }
  bool operator==(const EditStats&) const = default;
};

// Levenshtein alignment of `hypothesis` against `reference`. On equal cost
// the backtrace prefers match/substitution, then insertion, then deletion.
template <typename T>
EditStats edit_stats(std::span<const T> reference, std::span<const T> hypothesis) {
  const std::size_t n = reference.size(), m = hypothesis.size();
  const std::size_t stride = m + 1;
  std::vector<std::size_t> d((n + 1) * stride);
  for (std::size_t i = 0; i <= n; ++i) d[i * stride] = i;
  for (std::size_t j = 0; j <= m; ++j) d[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag =
          d[(i - 1) * stride + (j - 1)] + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      const std::size_t ins = d[i * stride + (j - 1)] + 1;
      const std::size_t del = d[(i - 1) * stride + j] + 1;
      d[i * stride + j] = std::min({diag, ins, del});
    }
  }
  EditStats s;
  s.reference_length = n;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const std::size_t here = d[i * stride + j];
    if (i > 0 && j > 0) {
      const bool same = reference[i - 1] == hypothesis[j - 1];
      if (here == d[(i - 1) * stride + (j - 1)] + (same ? 0 : 1)) {
        if (!same) ++s.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (j > 0 && here == d[i * stride + (j - 1)] + 1) {
      ++s.insertions;
      --j;
    } else {
      ++s.deletions;
      --i;
    }
  }
  return s;
}

// Character-level alignment on NFC codepoints.
EditStats levenshtein(std::string_view reference, std::string_view hypothesis);
// Word-level alignment on whitespace-separated tokens.
EditStats word_levenshtein(std::string_view reference, std::string_view hypothesis);

enum class ErrorUnit { kCharacter, kWord };

struct RecordErrors {
  std::string sample_id;
  EditStats stats;

  double rate() const {
    return static_cast<double>(stats.distance()) / static_cast<double>(stats.reference_length);
  }
};

struct CerReport {
  ErrorUnit unit = ErrorUnit::kCharacter;
  double micro_rate = 0.0;  // total edits / total reference length
  double macro_rate = 0.0;  // mean of per-record rates
  std::size_t total_edits = 0;
  std::size_t total_reference_length = 0;
  std::vector<RecordErrors> records;
  std::string split_digest;  // digest of the evaluated sample-ID set
};

// Throws NoRecords on an empty list and EmptyReference for references with
// no characters (or no tokens for WER).
CerReport cer(std::span<const TranscriptionRecord> records, ThreadCount threads = {});
CerReport wer(std::span<const TranscriptionRecord> records, ThreadCount threads = {});

// 100 x micro CER of an HTR trained on synthetic data, over the real test
// split. Records outside `test_split` raise SplitViolation.
double htg_htr(std::span<const TranscriptionRecord> records, const DatasetManifest& test_split,
               ThreadCount threads = {});

// 100 x micro CER over an OOV set. Every record must be in `oov_set`, be
// tagged OOV there (VocabViolation otherwise) and carry the manifest's
// transcript as its reference.
double htg_oov(std::span<const TranscriptionRecord> records, const DatasetManifest& oov_set,
               ThreadCount threads = {});

struct FilterResult {
  std::vector<std::string> kept_ids;
  std::vector<std::string> dropped_ids;
  double threshold = 0.0;
};

// Keeps records whose own CER is <= threshold, in input order.
FilterResult filter_by_cer(std::span<const TranscriptionRecord> records, double threshold = 0.0,
                           ThreadCount threads = {});

}  // namespace htg

#endif  // HTG_EVAL_TEXT_METRICS_HPP_
