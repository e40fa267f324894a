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

#ifndef HTG_EVAL_HTGF_HPP_
#define HTG_EVAL_HTGF_HPP_

// HTGF v1 interchange file:
//   "HTGF" | u32 version (=1) | u32 rank | rank x u32 dims | u32 id-table
//   length | id table (N ids joined by '\n') | prod(dims) x f32 payload
// All integers and floats little-endian, payload row-major. Logit files add
// one trailing byte: 1 for probabilities, 0 for raw logits.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "htg_eval/types.hpp"

namespace htg {

inline constexpr std::uint32_t kHtgfVersion = 1;

struct HtgfTensor {
  std::vector<std::string> ids;
  std::vector<std::uint32_t> dims;
  std::vector<float> payload;
  std::optional<bool> probability_flag;
};

enum class HtgfKind { kTensor, kLogits };

std::vector<unsigned char> encode_htgf(const HtgfTensor& tensor);
HtgfTensor decode_htgf(std::span<const unsigned char> bytes, HtgfKind kind);

HtgfTensor read_htgf(const std::filesystem::path& path, HtgfKind kind);
void write_htgf(const std::filesystem::path& path, const HtgfTensor& tensor);

HtgfTensor to_htgf(const FeatureMatrix& features);
HtgfTensor to_htgf(const LogitMatrix& logits);
HtgfTensor to_htgf(const LayerFeatureMap& layer, const std::vector<std::string>& ids);

FeatureMatrix feature_matrix_from(const HtgfTensor& tensor);
LogitMatrix logit_matrix_from(const HtgfTensor& tensor);

FeatureMatrix load_feature_matrix(const std::filesystem::path& path);
LogitMatrix load_logits(const std::filesystem::path& path);
void save_feature_matrix(const std::filesystem::path& path, const FeatureMatrix& features);
void save_logits(const std::filesystem::path& path, const LogitMatrix& logits);

struct LayerSource {
  std::filesystem::path path;
  std::string name;  // empty: use the file stem
  double weight = 1.0;
};

// Each file holds one N x C x H x W layer; all must share the ID table.
LayerFeatureMapSet load_layer_maps(std::span<const LayerSource> sources);

}  // namespace htg

#endif  // HTG_EVAL_HTGF_HPP_
