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

#ifndef HTG_EVAL_LINALG_HPP_
#define HTG_EVAL_LINALG_HPP_

#include <Eigen/Core>

#include "htg_eval/types.hpp"

namespace htg {

// Gaussian fit of a feature set: column means and the unbiased 1/(N-1)
// sample covariance, symmetrised as (S + S^T) / 2.
struct GaussianSummary {
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
  Eigen::Index n = 0;

  Eigen::Index dim() const { return mu.size(); }
};

GaussianSummary gaussian_summary(const FeatureMatrix& features);
GaussianSummary gaussian_summary(const RowMatrix& data);

// Principal square root of a symmetric PSD matrix through a symmetric
// eigendecomposition. Eigenvalues at or below clamp_eps are set to zero.
// Asymmetry beyond 1e-6 (relative to max(1, max |m_ij|)) is a ShapeError.
Eigen::MatrixXd matrix_sqrt_psd(const Eigen::MatrixXd& m, double clamp_eps = 1e-10);

// Eigenvalues of a symmetric matrix, ascending; NumericalError on failure.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m);

}  // namespace htg

#endif  // HTG_EVAL_LINALG_HPP_
