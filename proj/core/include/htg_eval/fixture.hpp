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

#ifndef HTG_EVAL_FIXTURE_HPP_
#define HTG_EVAL_FIXTURE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "htg_eval/manifest.hpp"
#include "htg_eval/types.hpp"

namespace htg {

// Desk-scale synthetic stand-in for a handwriting dataset. Writers differ
// in slant, glyph width, stroke thickness, ink level and glyph shape; word
// images are rendered with integer-valued pixels so the output is
// bit-identical on every platform for a given seed.
struct FixtureOptions {
  // Per-character substitution probability in the hypothesis log.
  double char_error_rate = 0.0;
  // When set, exactly round(clean_fraction * N) records are error-free and
  // every other record carries at least one substitution.
  std::optional<double> clean_fraction;
  // Probability that the style log predicts the true writer.
  double style_accuracy = 1.0;
  // Perturbation applied to writer parameters, in units of their range.
  double style_jitter = 0.0;
  // Seed for writer parameters; defaults to the dataset seed. Sharing it
  // between two fixtures makes them imitate the same writers.
  std::optional<std::uint64_t> writer_seed;
  std::string id_prefix = "s";
  std::string split_name = "fixture";
};

struct FixtureDataset {
  DatasetManifest manifest;
  std::vector<GrayImage> images;
  FeatureMatrix features;
  std::vector<TranscriptionRecord> transcriptions;
  std::vector<StylePredictionRecord> style_predictions;
};

inline constexpr int kDescriptorDim = 16;

// Low-dimensional ink-distribution descriptor of a word image.
std::vector<double> word_image_descriptor(const GrayImage& image);

// Renders `word` in the style of `writer` of the fixture with the given
// writer seed. Exposed for tests.
GrayImage render_word(const std::string& word, std::int64_t writer, std::uint64_t writer_seed,
                      std::uint64_t sample_seed, double style_jitter = 0.0);

FixtureDataset generate_fixture_dataset(int n_writers, int n_samples, std::uint64_t seed,
                                        const FixtureOptions& options = {});

// Writes manifest.jsonl, images/<id>.png, features.htgf,
// transcriptions.jsonl and style.jsonl under `dir`. Returns the file paths
// written, in write order.
std::vector<std::filesystem::path> write_fixture(const FixtureDataset& dataset,
                                                 const std::filesystem::path& dir);

}  // namespace htg

#endif  // HTG_EVAL_FIXTURE_HPP_
