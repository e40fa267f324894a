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

#ifndef HTG_EVAL_IMAGE_HPP_
#define HTG_EVAL_IMAGE_HPP_

#include <filesystem>
#include <vector>

#include "htg_eval/types.hpp"

namespace htg {

// ITU-R BT.601 luma.
inline double luma_bt601(double r, double g, double b) {
  return 0.299 * r + 0.587 * g + 0.114 * b;
}

// Reads an 8- or 16-bit PNG. Grayscale is taken as-is (alpha dropped);
// colour and palette images are reduced to BT.601 luma. max_intensity is
// 255 or 65535 according to the bit depth.
GrayImage load_image(const std::filesystem::path& path);

// Encodes pixels rounded to the nearest integer. The image's max intensity
// must be 255 (8-bit) or 65535 (16-bit).
std::vector<unsigned char> encode_png(const GrayImage& image);
void write_png(const std::filesystem::path& path, const GrayImage& image);

}  // namespace htg

#endif  // HTG_EVAL_IMAGE_HPP_
