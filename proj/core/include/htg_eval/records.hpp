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

#ifndef HTG_EVAL_RECORDS_HPP_
#define HTG_EVAL_RECORDS_HPP_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "htg_eval/types.hpp"

namespace htg {

// JSON Lines {"sample_id", "reference", "hypothesis"}. An empty reference
// is rejected with EmptyReference; an empty hypothesis is allowed.
std::vector<TranscriptionRecord> parse_transcriptions(std::istream& in);
std::vector<TranscriptionRecord> load_transcriptions(const std::filesystem::path& path);
std::string transcriptions_to_jsonl(std::span<const TranscriptionRecord> records);

// JSON Lines {"sample_id", "true_label", "predicted_label"}, labels >= 0.
std::vector<StylePredictionRecord> parse_style_predictions(std::istream& in);
std::vector<StylePredictionRecord> load_style_predictions(const std::filesystem::path& path);
std::string style_predictions_to_jsonl(std::span<const StylePredictionRecord> records);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace htg

#endif  // HTG_EVAL_RECORDS_HPP_
