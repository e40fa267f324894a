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

#include "htg_eval/geometry_score.hpp"

#include <algorithm>
#include <utility>

#include "htg_eval/error.hpp"
#include "htg_eval/random.hpp"

namespace htg {

void validate(const GsParams& p) {
  require(p.i_max >= 1, ErrorCode::kInvalidArgument, "GS: i_max must be >= 1");
  require(p.n_landmarks >= 2, ErrorCode::kInvalidArgument, "GS: need at least 2 landmarks");
  require(p.gamma > 0.0, ErrorCode::kInvalidArgument, "GS: gamma must be positive");
  require(p.n_repeats >= 1, ErrorCode::kInvalidArgument, "GS: n_repeats must be >= 1");
}

RltDistribution rlt_from_barcode(const PersistenceBarcode& barcode, double alpha_max, int i_max) {
  RltDistribution out(static_cast<std::size_t>(i_max), 0.0);
  if (!(alpha_max > 0.0)) {
    out[0] = 1.0;
    return out;
  }
  std::vector<std::pair<double, int>> events;
  events.reserve(2 * barcode.size());
  for (const auto& iv : barcode) {
    const double b = std::clamp(iv.birth, 0.0, alpha_max);
    const double d = std::clamp(iv.death, 0.0, alpha_max);
    if (d <= b) continue;
    events.emplace_back(b, +1);
    events.emplace_back(d, -1);
  }
  std::sort(events.begin(), events.end());
  double cursor = 0.0;
  int alive = 0;
  const auto credit = [&](double until) {
    if (until > cursor && alive < i_max) out[static_cast<std::size_t>(alive)] += until - cursor;
    cursor = std::max(cursor, until);
  };
  for (const auto& [pos, delta] : events) {
    credit(pos);
    alive += delta;
  }
  credit(alpha_max);
  for (auto& v : out) v /= alpha_max;
  return out;
}

RltDistribution rlt(const RowMatrix& points, std::span<const std::size_t> landmarks,
                    const GsParams& params) {
  validate(params);
  const double alpha_max = params.gamma * max_landmark_witness_distance(points, landmarks);
  if (!(alpha_max > 0.0) || landmarks.size() < 3) {
    return rlt_from_barcode({}, alpha_max, params.i_max);
  }
  return rlt_from_barcode(witness_persistence_h1(points, landmarks, alpha_max), alpha_max,
                          params.i_max);
}

std::vector<std::size_t> draw_landmarks(std::size_t n_points, const GsParams& params,
                                        int repeat) {
  Rng rng(params.seed + static_cast<std::uint64_t>(repeat));
  return rng.sample_without_replacement(n_points, static_cast<std::size_t>(params.n_landmarks));
}

std::vector<double> mrlt(const RowMatrix& points, const GsParams& params, ThreadCount threads) {
  validate(params);
  require(points.rows() >= params.n_landmarks, ErrorCode::kInsufficientSamples,
          "GS: " + std::to_string(points.rows()) + " points for " +
              std::to_string(params.n_landmarks) + " landmarks");
  require(points.allFinite(), ErrorCode::kNonFiniteData, "GS: points contain NaN or Inf");
  const auto repeats = static_cast<std::size_t>(params.n_repeats);
  std::vector<RltDistribution> per_repeat(repeats);
  parallel_for(repeats, threads, [&](std::size_t r) {
    const auto landmarks =
        draw_landmarks(static_cast<std::size_t>(points.rows()), params, static_cast<int>(r));
    per_repeat[r] = rlt(points, landmarks, params);
  });
  std::vector<double> mean(static_cast<std::size_t>(params.i_max), 0.0);
  for (const auto& v : per_repeat) {
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += v[i];
  }
  for (auto& v : mean) v /= static_cast<double>(repeats);
  return mean;
}

GeometryScoreResult geometry_score(const RowMatrix& a, std::uint64_t seed_a, const RowMatrix& b,
                                   std::uint64_t seed_b, const GsParams& params,
                                   ThreadCount threads) {
  GsParams pa = params, pb = params;
  pa.seed = seed_a;
  pb.seed = seed_b;
  GeometryScoreResult out;
  out.mrlt_a = mrlt(a, pa, threads);
  out.mrlt_b = mrlt(b, pb, threads);
  for (std::size_t i = 0; i < out.mrlt_a.size(); ++i) {
    const double d = out.mrlt_a[i] - out.mrlt_b[i];
    out.score += d * d;
  }
  return out;
}

GeometryScoreResult geometry_score(const RowMatrix& a, const RowMatrix& b,
                                   const GsParams& params, ThreadCount threads) {
  return geometry_score(a, params.seed, b, params.seed, params, threads);
}

}  // namespace htg
