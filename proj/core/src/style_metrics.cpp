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

#include "htg_eval/style_metrics.hpp"

#include "htg_eval/error.hpp"

namespace htg {

StyleReport style_accuracy(std::span<const StylePredictionRecord> records,
                           const std::optional<std::set<std::int64_t>>& known_writers) {
  require(!records.empty(), ErrorCode::kNoRecords, "no style prediction records");
  std::set<std::int64_t> known;
  if (known_writers) {
    known = *known_writers;
  } else {
    for (const auto& r : records) known.insert(r.true_label);
  }
  StyleReport report;
  report.n_records = records.size();
  for (const auto& r : records) {
    auto& w = report.per_writer[r.true_label];
    ++w.total;
    ++report.confusion[{r.true_label, r.predicted_label}];
    if (!known.contains(r.predicted_label)) {
      ++report.unknown_predictions;
    } else if (r.predicted_label == r.true_label) {
      ++w.correct;
      ++report.n_correct;
    }
  }
  report.accuracy =
      static_cast<double>(report.n_correct) / static_cast<double>(report.n_records);
  return report;
}

double htg_style(std::span<const StylePredictionRecord> records,
                 const std::set<std::string>& eval_ids,
                 const std::optional<std::set<std::int64_t>>& known_writers) {
  for (const auto& r : records) {
    require(eval_ids.contains(r.sample_id), ErrorCode::kSplitViolation,
            "record '" + r.sample_id + "' is not in the evaluation split");
  }
  return 100.0 * style_accuracy(records, known_writers).accuracy;
}

}  // namespace htg
