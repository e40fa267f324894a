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

#ifndef HTG_EVAL_TYPES_HPP_
#define HTG_EVAL_TYPES_HPP_

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace htg {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// N x D embedding matrix, row i belongs to ids[i]. Validated on
// construction: N, D >= 1, unique IDs, finite entries.
class FeatureMatrix {
 public:
  FeatureMatrix(std::vector<std::string> ids, RowMatrix data);

  const std::vector<std::string>& ids() const { return ids_; }
  const RowMatrix& data() const { return data_; }
  Eigen::Index rows() const { return data_.rows(); }
  Eigen::Index cols() const { return data_.cols(); }

  // Rows whose ID is in `keep`, in this matrix's order.
  FeatureMatrix select(std::span<const std::string> keep) const;

 private:
  std::vector<std::string> ids_;
  RowMatrix data_;
};

// Classifier outputs p(y|x) or raw logits, one row per sample.
class LogitMatrix {
 public:
  LogitMatrix(std::vector<std::string> ids, RowMatrix values, bool is_probability);

  const std::vector<std::string>& ids() const { return ids_; }
  const RowMatrix& values() const { return values_; }
  bool is_probability() const { return is_probability_; }

 private:
  std::vector<std::string> ids_;
  RowMatrix values_;
  bool is_probability_;
};

// Probability rows must sum to 1 within this tolerance.
inline constexpr double kProbabilityRowTolerance = 1e-6;

// One layer of N x C x H x W activations, stored densely in that order.
struct LayerFeatureMap {
  std::string name;
  double weight = 1.0;
  std::size_t n = 0, c = 0, h = 0, w = 0;
  std::vector<double> data;

  double at(std::size_t i, std::size_t ch, std::size_t y, std::size_t x) const {
    return data[((i * c + ch) * h + y) * w + x];
  }
};

// Layers share N and the ID list.
class LayerFeatureMapSet {
 public:
  LayerFeatureMapSet(std::vector<std::string> ids, std::vector<LayerFeatureMap> layers);

  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<LayerFeatureMap>& layers() const { return layers_; }
  std::size_t size() const { return ids_.size(); }

 private:
  std::vector<std::string> ids_;
  std::vector<LayerFeatureMap> layers_;
};

// Row-major grayscale raster with values in [0, max_intensity].
class GrayImage {
 public:
  GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels,
            double max_intensity = 255.0);
  // Filled with a constant value.
  GrayImage(std::size_t width, std::size_t height, double value,
            double max_intensity = 255.0);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }
  double max_intensity() const { return max_intensity_; }
  const std::vector<double>& pixels() const { return pixels_; }

  double at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> pixels_;
  double max_intensity_;
};

struct TranscriptionRecord {
  std::string sample_id;
  std::string reference;
  std::string hypothesis;

  bool operator==(const TranscriptionRecord&) const = default;
};

struct StylePredictionRecord {
  std::string sample_id;
  std::int64_t true_label = 0;
  std::int64_t predicted_label = 0;

  bool operator==(const StylePredictionRecord&) const = default;
};

}  // namespace htg

#endif  // HTG_EVAL_TYPES_HPP_
