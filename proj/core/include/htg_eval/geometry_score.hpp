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

#ifndef HTG_EVAL_GEOMETRY_SCORE_HPP_
#define HTG_EVAL_GEOMETRY_SCORE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "htg_eval/parallel.hpp"
#include "htg_eval/persistence.hpp"
#include "htg_eval/types.hpp"

namespace htg {

// Defaults follow the reference Geometry Score construction at desk scale:
// 64 landmarks, alpha_max = d_max / 128, 100 hole-count bins and 100
// landmark draws (1000 for full runs).
struct GsParams {
  int i_max = 100;
  int n_landmarks = 64;
  double gamma = 1.0 / 128.0;
  int n_repeats = 100;
  std::uint64_t seed = 0;
};

void validate(const GsParams& params);

// Entry i is the fraction of [0, alpha_max] during which exactly i
// one-dimensional holes are alive; counts >= i_max are dropped.
using RltDistribution = std::vector<double>;

RltDistribution rlt_from_barcode(const PersistenceBarcode& barcode, double alpha_max, int i_max);

// RLT of one landmark draw: alpha_max = gamma * max landmark-witness distance.
RltDistribution rlt(const RowMatrix& points, std::span<const std::size_t> landmarks,
                    const GsParams& params);

// Landmarks for repeat r: n_landmarks rows drawn uniformly without
// replacement with seed (params.seed + r).
std::vector<std::size_t> draw_landmarks(std::size_t n_points, const GsParams& params,
                                        int repeat);

// Mean RLT over params.n_repeats landmark draws. Repeats run in parallel
// and are accumulated in repeat order.
std::vector<double> mrlt(const RowMatrix& points, const GsParams& params,
                         ThreadCount threads = {});

struct GeometryScoreResult {
  double score = 0.0;
  std::vector<double> mrlt_a;
  std::vector<double> mrlt_b;
};

// sum_i (MRLT_a[i] - MRLT_b[i])^2, both sets using params.seed.
GeometryScoreResult geometry_score(const RowMatrix& a, const RowMatrix& b,
                                   const GsParams& params, ThreadCount threads = {});
// Per-input seeds.
GeometryScoreResult geometry_score(const RowMatrix& a, std::uint64_t seed_a, const RowMatrix& b,
                                   std::uint64_t seed_b, const GsParams& params,
                                   ThreadCount threads = {});

}  // namespace htg

#endif  // HTG_EVAL_GEOMETRY_SCORE_HPP_
