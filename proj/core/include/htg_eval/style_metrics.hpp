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

#ifndef HTG_EVAL_STYLE_METRICS_HPP_
#define HTG_EVAL_STYLE_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>

#include "htg_eval/types.hpp"

namespace htg {

struct WriterAccuracy {
  std::size_t correct = 0;
  std::size_t total = 0;
  double accuracy() const { return static_cast<double>(correct) / static_cast<double>(total); }
};

struct StyleReport {
  double accuracy = 0.0;
  std::size_t n_records = 0;
  std::size_t n_correct = 0;
  // Predictions whose label is outside the known writer set. Always errors.
  std::size_t unknown_predictions = 0;
  std::map<std::int64_t, WriterAccuracy> per_writer;
  // (true, predicted) -> count; only non-zero cells are stored.
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> confusion;
};

// `known_writers` is the classifier's training label set. When omitted, the
// set of true labels in `records` is used.
StyleReport style_accuracy(std::span<const StylePredictionRecord> records,
                           const std::optional<std::set<std::int64_t>>& known_writers = {});

// 100 x accuracy; every record must belong to the evaluation split.
double htg_style(std::span<const StylePredictionRecord> records,
                 const std::set<std::string>& eval_ids,
                 const std::optional<std::set<std::int64_t>>& known_writers = {});

}  // namespace htg

#endif  // HTG_EVAL_STYLE_METRICS_HPP_
