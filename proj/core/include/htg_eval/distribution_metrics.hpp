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

#ifndef HTG_EVAL_DISTRIBUTION_METRICS_HPP_
#define HTG_EVAL_DISTRIBUTION_METRICS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "htg_eval/linalg.hpp"
#include "htg_eval/manifest.hpp"
#include "htg_eval/parallel.hpp"
#include "htg_eval/types.hpp"

namespace htg {

// ||mu_r - mu_g||^2 + Tr(S_r + S_g - 2 (S_r^1/2 S_g S_r^1/2)^1/2).
// The trace root is taken as the sum of singular values of
// S_g^1/2 S_r^1/2, which equals it without squaring the spectrum. Results in [-1e-6, 0) are clamped to 0; anything lower is
// a NumericalError.
double fid(const GaussianSummary& real, const GaussianSummary& generated,
           double clamp_eps = 1e-10);

// k(x, y) = (gamma <x, y> + coef0)^degree; gamma defaults to 1/D.
struct KernelSpec {
  int degree = 3;
  std::optional<double> gamma;
  double coef0 = 1.0;

  double gamma_for(Eigen::Index dim) const {
    return gamma.value_or(1.0 / static_cast<double>(dim));
  }
};

double polynomial_kernel(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                         const Eigen::Ref<const Eigen::RowVectorXd>& y, int degree,
                         double gamma, double coef0);

// Unbiased MMD^2 estimate between the two feature sets. Can be slightly
// negative.
double kid(const FeatureMatrix& real, const FeatureMatrix& generated, const KernelSpec& kernel = {},
           ThreadCount threads = {});
double kid(const RowMatrix& real, const RowMatrix& generated, const KernelSpec& kernel = {},
           ThreadCount threads = {});

struct KidSubsetEstimate {
  double mean = 0.0;
  double stddev = 0.0;  // population, over subsets
  std::size_t subsets = 0;
  std::size_t subset_size = 0;
};

// Averages kid over `subsets` random blocks of `subset_size` rows drawn
// without replacement from each set; block s uses seed mix(seed, s).
KidSubsetEstimate kid_subsets(const FeatureMatrix& real, const FeatureMatrix& generated,
                              const KernelSpec& kernel, std::size_t subsets,
                              std::size_t subset_size, std::uint64_t seed,
                              ThreadCount threads = {});

struct InceptionScore {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t splits = 1;
};

// exp(E_x KL(p(y|x) || p(y))) per contiguous split, with 0 log 0 = 0.
InceptionScore inception_score(const LogitMatrix& logits, std::size_t n_splits = 1);

inline constexpr double kLpipsEpsilon = 1e-10;

// Per-sample weighted distance between channel-normalised feature maps.
std::vector<double> lpips(const LayerFeatureMapSet& a, const LayerFeatureMapSet& b,
                          ThreadCount threads = {});

using WriterFeatureTable = std::map<std::int64_t, std::vector<Eigen::VectorXd>>;

// Groups rows of `features` by the writer the manifest assigns to their ID.
// IDs missing from the manifest are an AlignmentError.
WriterFeatureTable writer_feature_table(const FeatureMatrix& features,
                                        const DatasetManifest& manifest);

// (1/M) sum_m ||Y_m - Y'_m||_2 with Y_m the mean feature vector of writer m.
double hwd(const WriterFeatureTable& real, const WriterFeatureTable& generated);

}  // namespace htg

#endif  // HTG_EVAL_DISTRIBUTION_METRICS_HPP_
