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

#include "htg_eval/types.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "htg_eval/error.hpp"

namespace htg {
namespace {

void check_ids(const std::vector<std::string>& ids, Eigen::Index rows, const char* what) {
  require(static_cast<Eigen::Index>(ids.size()) == rows, ErrorCode::kAlignmentError,
          std::string(what) + ": " + std::to_string(ids.size()) + " ids for " +
              std::to_string(rows) + " rows");
  std::unordered_set<std::string_view> seen;
  for (const auto& id : ids) {
    require(seen.insert(id).second, ErrorCode::kDuplicateId,
            std::string(what) + ": duplicate sample id '" + id + "'");
  }
}

void check_finite(const RowMatrix& m, const char* what) {
  require(m.allFinite(), ErrorCode::kNonFiniteData,
          std::string(what) + ": payload contains NaN or Inf");
}

}  // namespace

FeatureMatrix::FeatureMatrix(std::vector<std::string> ids, RowMatrix data)
    : ids_(std::move(ids)), data_(std::move(data)) {
  require(data_.rows() >= 1 && data_.cols() >= 1, ErrorCode::kShapeError,
          "feature matrix must be at least 1x1");
  check_ids(ids_, data_.rows(), "feature matrix");
  check_finite(data_, "feature matrix");
}

FeatureMatrix FeatureMatrix::select(std::span<const std::string> keep) const {
  std::unordered_set<std::string_view> wanted(keep.begin(), keep.end());
  std::vector<std::string> out_ids;
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < data_.rows(); ++i) {
    if (wanted.contains(ids_[static_cast<size_t>(i)])) {
      out_ids.push_back(ids_[static_cast<size_t>(i)]);
      rows.push_back(i);
    }
  }
  RowMatrix out(static_cast<Eigen::Index>(rows.size()), data_.cols());
  for (size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = data_.row(rows[r]);
  return FeatureMatrix(std::move(out_ids), std::move(out));
}

LogitMatrix::LogitMatrix(std::vector<std::string> ids, RowMatrix values, bool is_probability)
    : ids_(std::move(ids)), values_(std::move(values)), is_probability_(is_probability) {
  require(values_.rows() >= 1 && values_.cols() >= 1, ErrorCode::kShapeError,
          "logit matrix must be at least 1x1");
  check_ids(ids_, values_.rows(), "logit matrix");
  check_finite(values_, "logit matrix");
  if (is_probability_) {
    for (Eigen::Index i = 0; i < values_.rows(); ++i) {
      const auto row = values_.row(i);
      require(row.minCoeff() >= 0.0 && row.maxCoeff() <= 1.0, ErrorCode::kSchemaError,
              "probability row " + std::to_string(i) + " has entries outside [0,1]");
      require(std::abs(row.sum() - 1.0) <= kProbabilityRowTolerance, ErrorCode::kSchemaError,
              "probability row " + std::to_string(i) + " does not sum to 1");
    }
  }
}

LayerFeatureMapSet::LayerFeatureMapSet(std::vector<std::string> ids,
                                       std::vector<LayerFeatureMap> layers)
    : ids_(std::move(ids)), layers_(std::move(layers)) {
  require(!layers_.empty(), ErrorCode::kShapeError, "layer set has no layers");
  check_ids(ids_, static_cast<Eigen::Index>(ids_.size()), "layer set");
  for (const auto& layer : layers_) {
    require(layer.n == ids_.size(), ErrorCode::kAlignmentError,
            "layer '" + layer.name + "' has " + std::to_string(layer.n) + " samples, expected " +
                std::to_string(ids_.size()));
    require(layer.c >= 1 && layer.h >= 1 && layer.w >= 1, ErrorCode::kShapeError,
            "layer '" + layer.name + "' has an empty dimension");
    require(layer.data.size() == layer.n * layer.c * layer.h * layer.w, ErrorCode::kShapeError,
            "layer '" + layer.name + "' payload size does not match its shape");
    require(std::isfinite(layer.weight) && layer.weight >= 0.0, ErrorCode::kSchemaError,
            "layer '" + layer.name + "' weight must be finite and non-negative");
    for (double v : layer.data) {
      require(std::isfinite(v), ErrorCode::kNonFiniteData,
              "layer '" + layer.name + "' contains NaN or Inf");
    }
  }
}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels,
                     double max_intensity)
    : width_(width), height_(height), pixels_(std::move(pixels)), max_intensity_(max_intensity) {
  require(width_ > 0 && height_ > 0, ErrorCode::kShapeError, "image dimensions must be positive");
  require(pixels_.size() == width_ * height_, ErrorCode::kShapeError,
          "image pixel count does not match width*height");
  require(std::isfinite(max_intensity_) && max_intensity_ > 0, ErrorCode::kInvalidArgument,
          "max intensity must be positive");
  for (double p : pixels_) {
    require(std::isfinite(p), ErrorCode::kNonFiniteData, "image contains NaN or Inf");
    require(p >= 0.0 && p <= max_intensity_, ErrorCode::kInvalidArgument,
            "pixel value outside [0, max_intensity]");
  }
}

GrayImage::GrayImage(std::size_t width, std::size_t height, double value, double max_intensity)
    : GrayImage(width, height, std::vector<double>(width * height, value), max_intensity) {}

}  // namespace htg
