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

#ifndef HTG_EVAL_PIXEL_METRICS_HPP_
#define HTG_EVAL_PIXEL_METRICS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "htg_eval/types.hpp"

namespace htg {

// SSIM stabilisers c1 = (k1 L)^2 and c2 = (k2 L)^2.
struct SsimConstants {
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;

  double c1() const { return (k1 * dynamic_range) * (k1 * dynamic_range); }
  double c2() const { return (k2 * dynamic_range) * (k2 * dynamic_range); }

  static SsimConstants for_image(const GrayImage& image) {
    return SsimConstants{0.01, 0.03, image.max_intensity()};
  }
};

double mse(const GrayImage& a, const GrayImage& b);
double rmse(const GrayImage& a, const GrayImage& b);

// 10 log10(MAX_I^2 / MSE) with MAX_I taken from `a`. Throws IdenticalImages
// when MSE is zero; PSNR is not reported as a number in that case.
double psnr(const GrayImage& a, const GrayImage& b);

// Single-window SSIM over the whole image, population (1/n) moments.
double ssim_global(const GrayImage& a, const GrayImage& b, const SsimConstants& c);

// Mean of the single-window formula over every w x w window at stride 1,
// uniformly weighted.
double ssim_windowed(const GrayImage& a, const GrayImage& b, const SsimConstants& c,
                     std::size_t window);

enum class SsimMode { kGlobal, kWindowed };

struct PixelPairResult {
  std::string label;
  double mse = 0.0;
  double rmse = 0.0;
  std::optional<double> psnr;  // nullopt: identical images ("inf")
  double ssim = 0.0;
};

struct SummaryStat {
  double mean = 0.0;
  double stddev = 0.0;  // population
  std::size_t count = 0;
};

struct PixelMetricReport {
  std::vector<PixelPairResult> pairs;
  SummaryStat mse, rmse, psnr, ssim;
  std::size_t identical_pairs = 0;  // excluded from the PSNR summary
  SsimMode ssim_mode = SsimMode::kGlobal;
  std::size_t ssim_window = 0;
};

struct ImagePair {
  std::string label;
  const GrayImage* a;
  const GrayImage* b;
};

PixelMetricReport evaluate_pixel_pairs(std::span<const ImagePair> pairs, SsimMode mode,
                                       std::size_t window = 11);

}  // namespace htg

#endif  // HTG_EVAL_PIXEL_METRICS_HPP_
