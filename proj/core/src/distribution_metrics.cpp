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

#include "htg_eval/distribution_metrics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "htg_eval/error.hpp"
#include "htg_eval/random.hpp"

namespace htg {

double fid(const GaussianSummary& real, const GaussianSummary& generated, double clamp_eps) {
  require(real.dim() == generated.dim(), ErrorCode::kShapeError,
          "FID: feature dimensions differ (" + std::to_string(real.dim()) + " vs " +
              std::to_string(generated.dim()) + ")");
  const Eigen::VectorXd diff = real.mu - generated.mu;
  const Eigen::MatrixXd root_r = matrix_sqrt_psd(real.sigma, clamp_eps);
  const Eigen::MatrixXd root_g = matrix_sqrt_psd(generated.sigma, clamp_eps);
  // Tr sqrt(S_r^1/2 S_g S_r^1/2) is the nuclear norm of S_g^1/2 S_r^1/2.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(root_g * root_r);
  const double trace_root = svd.singularValues().sum();
  const double value =
      diff.squaredNorm() + real.sigma.trace() + generated.sigma.trace() - 2.0 * trace_root;
  require(value >= -1e-6, ErrorCode::kNumericalError,
          "FID evaluated to " + std::to_string(value) + "; covariance inputs are not PSD");
  return std::max(0.0, value);
}

double polynomial_kernel(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                         const Eigen::Ref<const Eigen::RowVectorXd>& y, int degree,
                         double gamma, double coef0) {
  const double base = gamma * x.dot(y) + coef0;
  double out = 1.0;
  for (int i = 0; i < degree; ++i) out *= base;
  return out;
}

namespace {

// Sum over ordered pairs (i, j), skipping i == j when `same` is set. Each
// row's partial sum lands in its own slot and the slots are added in index
// order, so the result does not depend on the thread count.
double kernel_sum(const RowMatrix& x, const RowMatrix& y, bool same, int degree, double gamma,
                  double coef0, ThreadCount threads) {
  std::vector<double> row_sums(static_cast<std::size_t>(x.rows()), 0.0);
  parallel_for(row_sums.size(), threads, [&](std::size_t i) {
    const auto xi = x.row(static_cast<Eigen::Index>(i));
    double s = 0.0;
    for (Eigen::Index j = 0; j < y.rows(); ++j) {
      if (same && j == static_cast<Eigen::Index>(i)) continue;
      s += polynomial_kernel(xi, y.row(j), degree, gamma, coef0);
    }
    row_sums[i] = s;
  });
  double total = 0.0;
  for (double s : row_sums) total += s;
  return total;
}

}  // namespace

double kid(const RowMatrix& real, const RowMatrix& generated, const KernelSpec& kernel,
           ThreadCount threads) {
  require(real.cols() == generated.cols(), ErrorCode::kShapeError,
          "KID: feature dimensions differ (" + std::to_string(real.cols()) + " vs " +
              std::to_string(generated.cols()) + ")");
  require(real.rows() >= 2 && generated.rows() >= 2, ErrorCode::kInsufficientSamples,
          "KID needs at least 2 rows in each set");
  require(kernel.degree >= 1, ErrorCode::kInvalidArgument, "kernel degree must be >= 1");
  const double gamma = kernel.gamma_for(real.cols());
  require(gamma > 0.0, ErrorCode::kInvalidArgument, "kernel gamma must be positive");

  const auto m = static_cast<double>(real.rows());
  const auto n = static_cast<double>(generated.rows());
  const double kxx = kernel_sum(real, real, true, kernel.degree, gamma, kernel.coef0, threads);
  const double kyy =
      kernel_sum(generated, generated, true, kernel.degree, gamma, kernel.coef0, threads);
  const double kxy =
      kernel_sum(real, generated, false, kernel.degree, gamma, kernel.coef0, threads);
  return kxx / (m * (m - 1.0)) + kyy / (n * (n - 1.0)) - 2.0 * kxy / (m * n);
}

double kid(const FeatureMatrix& real, const FeatureMatrix& generated, const KernelSpec& kernel,
           ThreadCount threads) {
  return kid(real.data(), generated.data(), kernel, threads);
}

KidSubsetEstimate kid_subsets(const FeatureMatrix& real, const FeatureMatrix& generated,
                              const KernelSpec& kernel, std::size_t subsets,
                              std::size_t subset_size, std::uint64_t seed,
                              ThreadCount threads) {
  require(subsets >= 1, ErrorCode::kInvalidArgument, "KID: subsets must be >= 1");
  require(subset_size >= 2, ErrorCode::kInsufficientSamples, "KID: subset size must be >= 2");
  const auto m = static_cast<std::size_t>(real.rows());
  const auto n = static_cast<std::size_t>(generated.rows());
  require(subset_size <= m && subset_size <= n, ErrorCode::kInsufficientSamples,
          "KID: subset size exceeds a feature set");
  const auto pick = [](const RowMatrix& src, const std::vector<std::size_t>& rows) {
    RowMatrix out(static_cast<Eigen::Index>(rows.size()), src.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      out.row(static_cast<Eigen::Index>(r)) = src.row(static_cast<Eigen::Index>(rows[r]));
    }
    return out;
  };
  std::vector<double> values(subsets);
  for (std::size_t s = 0; s < subsets; ++s) {
    Rng rng(mix_seed(seed, s));
    const auto rows_r = rng.sample_without_replacement(m, subset_size);
    const auto rows_g = rng.sample_without_replacement(n, subset_size);
    values[s] = kid(pick(real.data(), rows_r), pick(generated.data(), rows_g), kernel, threads);
  }
  KidSubsetEstimate est;
  est.subsets = subsets;
  est.subset_size = subset_size;
  for (double v : values) est.mean += v;
  est.mean /= static_cast<double>(subsets);
  for (double v : values) est.stddev += (v - est.mean) * (v - est.mean);
  est.stddev = std::sqrt(est.stddev / static_cast<double>(subsets));
  return est;
}

InceptionScore inception_score(const LogitMatrix& logits, std::size_t n_splits) {
  const auto& values = logits.values();
  const auto n = static_cast<std::size_t>(values.rows());
  const auto k = values.cols();
  require(n_splits >= 1 && n >= n_splits, ErrorCode::kInsufficientSamples,
          "IS needs N >= splits >= 1 (N = " + std::to_string(n) + ", splits = " +
              std::to_string(n_splits) + ")");

  RowMatrix probs(values.rows(), k);
  if (logits.is_probability()) {
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      require(std::abs(values.row(i).sum() - 1.0) <= kProbabilityRowTolerance,
              ErrorCode::kSchemaError, "probability row " + std::to_string(i) +
                                           " does not sum to 1");
    }
    probs = values;
  } else {
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      const double mx = values.row(i).maxCoeff();
      double z = 0.0;
      for (Eigen::Index c = 0; c < k; ++c) z += std::exp(values(i, c) - mx);
      for (Eigen::Index c = 0; c < k; ++c) probs(i, c) = std::exp(values(i, c) - mx) / z;
    }
  }

  std::vector<double> scores(n_splits);
  for (std::size_t s = 0; s < n_splits; ++s) {
    const auto begin = static_cast<Eigen::Index>(n * s / n_splits);
    const auto end = static_cast<Eigen::Index>(n * (s + 1) / n_splits);
    const auto rows = end - begin;
    const Eigen::RowVectorXd marginal =
        probs.middleRows(begin, rows).colwise().sum() / static_cast<double>(rows);
    double kl_sum = 0.0;
    for (Eigen::Index i = begin; i < end; ++i) {
      double kl = 0.0;
      for (Eigen::Index c = 0; c < k; ++c) {
        const double p = probs(i, c);
        if (p > 0.0) kl += p * (std::log(p) - std::log(marginal(c)));
      }
      kl_sum += kl;
    }
    scores[s] = std::exp(kl_sum / static_cast<double>(rows));
  }
  InceptionScore out;
  out.splits = n_splits;
  for (double v : scores) out.mean += v;
  out.mean /= static_cast<double>(n_splits);
  for (double v : scores) out.stddev += (v - out.mean) * (v - out.mean);
  out.stddev = std::sqrt(out.stddev / static_cast<double>(n_splits));
  return out;
}

std::vector<double> lpips(const LayerFeatureMapSet& a, const LayerFeatureMapSet& b,
                          ThreadCount threads) {
  require(a.size() == b.size(), ErrorCode::kShapeError,
          "LPIPS: sample counts differ (" + std::to_string(a.size()) + " vs " +
              std::to_string(b.size()) + ")");
  require(a.layers().size() == b.layers().size(), ErrorCode::kShapeError,
          "LPIPS: layer counts differ");
  for (std::size_t l = 0; l < a.layers().size(); ++l) {
    const auto& la = a.layers()[l];
    const auto& lb = b.layers()[l];
    require(la.name == lb.name && la.c == lb.c && la.h == lb.h && la.w == lb.w,
            ErrorCode::kShapeError, "LPIPS: layer " + std::to_string(l) + " ('" + la.name +
                                        "' vs '" + lb.name + "') does not match");
    require(la.weight == lb.weight, ErrorCode::kShapeError,
            "LPIPS: layer '" + la.name + "' has different weights in the two sets");
  }

  std::vector<double> out(a.size(), 0.0);
  parallel_for(a.size(), threads, [&](std::size_t i) {
    double total = 0.0;
    for (std::size_t l = 0; l < a.layers().size(); ++l) {
      const auto& la = a.layers()[l];
      const auto& lb = b.layers()[l];
      if (la.weight == 0.0) continue;
      double layer_sum = 0.0;
      for (std::size_t y = 0; y < la.h; ++y) {
        for (std::size_t x = 0; x < la.w; ++x) {
          double na = 0.0, nb = 0.0;
          for (std::size_t c = 0; c < la.c; ++c) {
            na += la.at(i, c, y, x) * la.at(i, c, y, x);
            nb += lb.at(i, c, y, x) * lb.at(i, c, y, x);
          }
          na = std::sqrt(na) + kLpipsEpsilon;
          nb = std::sqrt(nb) + kLpipsEpsilon;
          double d2 = 0.0;
          for (std::size_t c = 0; c < la.c; ++c) {
            const double d = la.at(i, c, y, x) / na - lb.at(i, c, y, x) / nb;
            d2 += d * d;
          }
          layer_sum += d2;
        }
      }
      total += la.weight * layer_sum / static_cast<double>(la.h * la.w);
    }
    out[i] = total;
  });
  return out;
}

WriterFeatureTable writer_feature_table(const FeatureMatrix& features,
                                        const DatasetManifest& manifest) {
  WriterFeatureTable table;
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    const auto& id = features.ids()[static_cast<std::size_t>(i)];
    const auto* entry = manifest.find(id);
    require(entry != nullptr, ErrorCode::kAlignmentError,
            "feature row '" + id + "' is not in manifest '" + manifest.split_name() + "'");
    table[entry->writer_id].push_back(features.data().row(i).transpose());
  }
  return table;
}

double hwd(const WriterFeatureTable& real, const WriterFeatureTable& generated) {
  require(!real.empty(), ErrorCode::kWriterMismatch, "HWD: no writers");
  require(real.size() == generated.size() &&
              std::equal(real.begin(), real.end(), generated.begin(),
                         [](const auto& x, const auto& y) { return x.first == y.first; }),
          ErrorCode::kWriterMismatch, "HWD: real and generated writer sets differ");
  const auto mean_of = [](const std::vector<Eigen::VectorXd>& vs, std::int64_t writer) {
    require(!vs.empty(), ErrorCode::kWriterMismatch,
            "HWD: writer " + std::to_string(writer) + " has no feature vectors");
    Eigen::VectorXd m = Eigen::VectorXd::Zero(vs.front().size());
    for (const auto& v : vs) {
      require(v.size() == m.size(), ErrorCode::kShapeError, "HWD: inconsistent feature width");
      m += v;
    }
    return Eigen::VectorXd(m / static_cast<double>(vs.size()));
  };
  double total = 0.0;
  for (const auto& [writer, vectors] : real) {
    const Eigen::VectorXd yr = mean_of(vectors, writer);
    const Eigen::VectorXd yg = mean_of(generated.at(writer), writer);
    require(yr.size() == yg.size(), ErrorCode::kShapeError, "HWD: feature widths differ");
    total += (yr - yg).norm();
  }
  return total / static_cast<double>(real.size());
}

}  // namespace htg
