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

#include "htg_eval/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

#include "htg_eval/error.hpp"

namespace htg {
namespace {

void check_square_symmetric(const Eigen::MatrixXd& m) {
  require(m.rows() == m.cols(), ErrorCode::kShapeError, "matrix is not square");
  require(m.allFinite(), ErrorCode::kNonFiniteData, "matrix contains NaN or Inf");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = m.rows() == 0 ? 0.0 : (m - m.transpose()).cwiseAbs().maxCoeff();
  require(asym <= 1e-6 * scale, ErrorCode::kShapeError,
          "matrix is not symmetric (max |m - m^T| = " + std::to_string(asym) + ")");
}

}  // namespace

GaussianSummary gaussian_summary(const RowMatrix& data) {
  require(data.rows() >= 2, ErrorCode::kInsufficientSamples,
          "covariance needs at least 2 samples, got " + std::to_string(data.rows()));
  GaussianSummary g;
  g.n = data.rows();
  g.mu = data.colwise().mean().transpose();
  const Eigen::MatrixXd centered = data.rowwise() - g.mu.transpose();
  const Eigen::MatrixXd s = (centered.transpose() * centered) / static_cast<double>(g.n - 1);
  g.sigma = 0.5 * (s + s.transpose());
  return g;
}

GaussianSummary gaussian_summary(const FeatureMatrix& features) {
  return gaussian_summary(features.data());
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  check_square_symmetric(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorCode::kNumericalError,
          "symmetric eigendecomposition did not converge");
  return solver.eigenvalues();
}

Eigen::MatrixXd matrix_sqrt_psd(const Eigen::MatrixXd& m, double clamp_eps) {
  check_square_symmetric(m);
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  require(solver.info() == Eigen::Success, ErrorCode::kNumericalError,
          "symmetric eigendecomposition did not converge");
  Eigen::VectorXd roots = solver.eigenvalues();
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    roots(i) = roots(i) > clamp_eps ? std::sqrt(roots(i)) : 0.0;
  }
  const Eigen::MatrixXd& v = solver.eigenvectors();
  const Eigen::MatrixXd s = v * roots.asDiagonal() * v.transpose();
  return 0.5 * (s + s.transpose());
}

}  // namespace htg
