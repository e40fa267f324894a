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

#include "htg_eval/pixel_metrics.hpp"

#include <algorithm>
#include <cmath>

#include "htg_eval/error.hpp"

namespace htg {
namespace {

void check_same_shape(const GrayImage& a, const GrayImage& b) {
  require(a.width() == b.width() && a.height() == b.height(), ErrorCode::kShapeError,
          "image shapes differ: " + std::to_string(a.width()) + "x" + std::to_string(a.height()) +
              " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()));
}

struct Moments {
  double mean_a, mean_b, var_a, var_b, cov;
};

// Two-pass population moments over a rectangular window.
Moments window_moments(const GrayImage& a, const GrayImage& b, std::size_t x0, std::size_t y0,
                       std::size_t w, std::size_t h) {
  const double n = static_cast<double>(w * h);
  double sa = 0.0, sb = 0.0;
  for (std::size_t y = y0; y < y0 + h; ++y) {
    for (std::size_t x = x0; x < x0 + w; ++x) {
      sa += a.at(x, y);
      sb += b.at(x, y);
    }
  }
  Moments m{sa / n, sb / n, 0.0, 0.0, 0.0};
  for (std::size_t y = y0; y < y0 + h; ++y) {
    for (std::size_t x = x0; x < x0 + w; ++x) {
      const double da = a.at(x, y) - m.mean_a;
      const double db = b.at(x, y) - m.mean_b;
      m.var_a += da * da;
      m.var_b += db * db;
      m.cov += da * db;
    }
  }
  m.var_a /= n;
  m.var_b /= n;
  m.cov /= n;
  return m;
}

double ssim_from_moments(const Moments& m, double c1, double c2) {
  const double num = (2.0 * m.mean_a * m.mean_b + c1) * (2.0 * m.cov + c2);
  const double den = (m.mean_a * m.mean_a + m.mean_b * m.mean_b + c1) * (m.var_a + m.var_b + c2);
  return num / den;
}

SummaryStat summarize(const std::vector<double>& values) {
  SummaryStat s;
  s.count = values.size();
  if (values.empty()) return s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  for (double v : values) s.stddev += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(s.stddev / static_cast<double>(values.size()));
  return s;
}

}  // namespace

double mse(const GrayImage& a, const GrayImage& b) {
  check_same_shape(a, b);
  double sum = 0.0;
  const auto& pa = a.pixels();
  const auto& pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double d = pa[i] - pb[i];
    sum += d * d;
  }
  return sum / static_cast<double>(pa.size());
}

double rmse(const GrayImage& a, const GrayImage& b) { return std::sqrt(mse(a, b)); }

double psnr(const GrayImage& a, const GrayImage& b) {
  const double m = mse(a, b);
  require(m > 0.0, ErrorCode::kIdenticalImages, "PSNR is undefined for identical images");
  const double max_i = a.max_intensity();
  return 10.0 * std::log10(max_i * max_i / m);
}

double ssim_global(const GrayImage& a, const GrayImage& b, const SsimConstants& c) {
  check_same_shape(a, b);
  require(a.size() >= 2, ErrorCode::kShapeError, "SSIM needs at least 2 pixels");
  return ssim_from_moments(window_moments(a, b, 0, 0, a.width(), a.height()), c.c1(), c.c2());
}

double ssim_windowed(const GrayImage& a, const GrayImage& b, const SsimConstants& c,
                     std::size_t window) {
  check_same_shape(a, b);
  require(window >= 1 && window <= std::min(a.width(), a.height()), ErrorCode::kShapeError,
          "SSIM window " + std::to_string(window) + " does not fit a " +
              std::to_string(a.width()) + "x" + std::to_string(a.height()) + " image");
  require(window * window >= 2, ErrorCode::kShapeError, "SSIM window needs at least 2 pixels");

  // Running window sums of centred values; centring on the global means
  // keeps the E[x^2] - E[x]^2 step well conditioned.
  const std::size_t w = a.width(), h = a.height();
  double ga = 0.0, gb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ga += a.pixels()[i];
    gb += b.pixels()[i];
  }
  ga /= static_cast<double>(a.size());
  gb /= static_cast<double>(a.size());

  const std::size_t sw = w + 1;
  std::vector<double> s_a((w + 1) * (h + 1), 0.0), s_b(s_a), s_aa(s_a), s_bb(s_a), s_ab(s_a);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double va = a.at(x, y) - ga;
      const double vb = b.at(x, y) - gb;
      const std::size_t i = (y + 1) * sw + (x + 1);
      const std::size_t up = y * sw + (x + 1), left = (y + 1) * sw + x, diag = y * sw + x;
      s_a[i] = va + s_a[up] + s_a[left] - s_a[diag];
      s_b[i] = vb + s_b[up] + s_b[left] - s_b[diag];
      s_aa[i] = va * va + s_aa[up] + s_aa[left] - s_aa[diag];
      s_bb[i] = vb * vb + s_bb[up] + s_bb[left] - s_bb[diag];
      s_ab[i] = va * vb + s_ab[up] + s_ab[left] - s_ab[diag];
    }
  }
  const auto box = [&](const std::vector<double>& s, std::size_t x, std::size_t y) {
    return s[(y + window) * sw + (x + window)] - s[y * sw + (x + window)] -
           s[(y + window) * sw + x] + s[y * sw + x];
  };

  const double n = static_cast<double>(window * window);
  const double c1 = c.c1(), c2 = c.c2();
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t y = 0; y + window <= h; ++y) {
    for (std::size_t x = 0; x + window <= w; ++x) {
      const double ma = box(s_a, x, y) / n;
      const double mb = box(s_b, x, y) / n;
      Moments m;
      m.mean_a = ma + ga;
      m.mean_b = mb + gb;
      m.var_a = std::max(0.0, box(s_aa, x, y) / n - ma * ma);
      m.var_b = std::max(0.0, box(s_bb, x, y) / n - mb * mb);
      m.cov = box(s_ab, x, y) / n - ma * mb;
      total += ssim_from_moments(m, c1, c2);
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

PixelMetricReport evaluate_pixel_pairs(std::span<const ImagePair> pairs, SsimMode mode,
                                       std::size_t window) {
  require(!pairs.empty(), ErrorCode::kNoRecords, "no image pairs given");
  PixelMetricReport report;
  report.ssim_mode = mode;
  report.ssim_window = mode == SsimMode::kWindowed ? window : 0;
  std::vector<double> v_mse, v_rmse, v_psnr, v_ssim;
  for (const auto& p : pairs) {
    PixelPairResult r;
    r.label = p.label;
    r.mse = mse(*p.a, *p.b);
    r.rmse = std::sqrt(r.mse);
    if (r.mse > 0.0) {
      r.psnr = psnr(*p.a, *p.b);
      v_psnr.push_back(*r.psnr);
    } else {
      ++report.identical_pairs;
    }
    const auto consts = SsimConstants::for_image(*p.a);
    r.ssim = mode == SsimMode::kGlobal ? ssim_global(*p.a, *p.b, consts)
                                       : ssim_windowed(*p.a, *p.b, consts, window);
    v_mse.push_back(r.mse);
    v_rmse.push_back(r.rmse);
    v_ssim.push_back(r.ssim);
    report.pairs.push_back(std::move(r));
  }
  report.mse = summarize(v_mse);
  report.rmse = summarize(v_rmse);
  report.psnr = summarize(v_psnr);
  report.ssim = summarize(v_ssim);
  return report;
}

}  // namespace htg
