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

#include "htg_eval/htgf.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "htg_eval/error.hpp"

namespace htg {
namespace {

constexpr char kMagic[4] = {'H', 'T', 'G', 'F'};

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

class Reader {
 public:
  explicit Reader(std::span<const unsigned char> bytes) : bytes_(bytes) {}

  std::span<const unsigned char> take(std::size_t n) {
    require(bytes_.size() - pos_ >= n, ErrorCode::kFormatError, "HTGF: truncated file");
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint32_t u32() {
    auto b = take(4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const unsigned char> bytes_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split_ids(std::span<const unsigned char> table, std::size_t n) {
  std::string text(table.begin(), table.end());
  // Tolerate a single trailing newline after the last id.
  if (!text.empty() && text.back() == '\n') text.pop_back();
  std::vector<std::string> ids;
  if (n == 0) {
    require(text.empty(), ErrorCode::kAlignmentError, "HTGF: id table present for N = 0");
    return ids;
  }
  std::size_t start = 0;
  while (true) {
    const auto nl = text.find('\n', start);
    ids.push_back(text.substr(start, nl == std::string::npos ? std::string::npos : nl - start));
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  require(ids.size() == n, ErrorCode::kAlignmentError,
          "HTGF: id table has " + std::to_string(ids.size()) + " entries for N = " +
              std::to_string(n));
  return ids;
}

std::size_t element_count(const std::vector<std::uint32_t>& dims) {
  std::size_t count = 1;
  for (auto d : dims) {
    require(d == 0 || count <= SIZE_MAX / d, ErrorCode::kFormatError, "HTGF: dims overflow");
    count *= d;
  }
  return count;
}

RowMatrix to_matrix(const HtgfTensor& t, const char* what) {
  require(t.dims.size() == 2, ErrorCode::kShapeError,
          std::string(what) + ": expected a rank-2 HTGF file, got rank " +
              std::to_string(t.dims.size()));
  RowMatrix m(t.dims[0], t.dims[1]);
  for (std::size_t i = 0; i < t.payload.size(); ++i) m.data()[i] = t.payload[i];
  return m;
}

std::vector<float> to_floats(const double* data, std::size_t n) {
  std::vector<float> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<float>(data[i]);
  return out;
}

}  // namespace

std::vector<unsigned char> encode_htgf(const HtgfTensor& t) {
  require(!t.dims.empty(), ErrorCode::kShapeError, "HTGF: rank must be at least 1");
  require(t.ids.size() == t.dims[0], ErrorCode::kAlignmentError,
          "HTGF: id count does not match the first dimension");
  require(t.payload.size() == element_count(t.dims), ErrorCode::kShapeError,
          "HTGF: payload size does not match dims");
  std::string table;
  for (std::size_t i = 0; i < t.ids.size(); ++i) {
    require(t.ids[i].find('\n') == std::string::npos, ErrorCode::kFormatError,
            "HTGF: ids may not contain newlines");
    if (i) table.push_back('\n');
    table += t.ids[i];
  }
  std::vector<unsigned char> out;
  out.reserve(16 + 4 * t.dims.size() + table.size() + 4 * t.payload.size() + 1);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_u32(out, kHtgfVersion);
  put_u32(out, static_cast<std::uint32_t>(t.dims.size()));
  for (auto d : t.dims) put_u32(out, d);
  put_u32(out, static_cast<std::uint32_t>(table.size()));
  out.insert(out.end(), table.begin(), table.end());
  for (float f : t.payload) put_u32(out, std::bit_cast<std::uint32_t>(f));
  if (t.probability_flag) out.push_back(*t.probability_flag ? 1 : 0);
  return out;
}

HtgfTensor decode_htgf(std::span<const unsigned char> bytes, HtgfKind kind) {
  Reader r(bytes);
  auto magic = r.take(4);
  require(std::memcmp(magic.data(), kMagic, 4) == 0, ErrorCode::kFormatError,
          "HTGF: bad magic");
  const auto version = r.u32();
  require(version == kHtgfVersion, ErrorCode::kFormatError,
          "HTGF: unsupported version " + std::to_string(version));
  const auto rank = r.u32();
  require(rank >= 1 && rank <= 16, ErrorCode::kFormatError,
          "HTGF: implausible rank " + std::to_string(rank));
  HtgfTensor t;
  for (std::uint32_t i = 0; i < rank; ++i) t.dims.push_back(r.u32());
  const auto table_len = r.u32();
  t.ids = split_ids(r.take(table_len), t.dims[0]);

  const auto count = element_count(t.dims);
  require(count <= r.remaining() / 4, ErrorCode::kFormatError, "HTGF: truncated payload");
  auto payload = r.take(count * 4);
  t.payload.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto* p = payload.data() + 4 * i;
    const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) |
                               (static_cast<std::uint32_t>(p[1]) << 8) |
                               (static_cast<std::uint32_t>(p[2]) << 16) |
                               (static_cast<std::uint32_t>(p[3]) << 24);
    const float f = std::bit_cast<float>(bits);
    require(std::isfinite(f), ErrorCode::kNonFiniteData,
            "HTGF: payload element " + std::to_string(i) + " is NaN or Inf");
    t.payload[i] = f;
  }
  if (kind == HtgfKind::kLogits) {
    auto flag = r.take(1);
    require(flag[0] <= 1, ErrorCode::kFormatError, "HTGF: probability flag must be 0 or 1");
    t.probability_flag = flag[0] == 1;
  }
  require(r.remaining() == 0, ErrorCode::kFormatError, "HTGF: trailing bytes after payload");
  return t;
}

HtgfTensor read_htgf(const std::filesystem::path& path, HtgfKind kind) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return decode_htgf(bytes, kind);
}

void write_htgf(const std::filesystem::path& path, const HtgfTensor& tensor) {
  const auto bytes = encode_htgf(tensor);
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::kIoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

HtgfTensor to_htgf(const FeatureMatrix& f) {
  HtgfTensor t;
  t.ids = f.ids();
  t.dims = {static_cast<std::uint32_t>(f.rows()), static_cast<std::uint32_t>(f.cols())};
  t.payload = to_floats(f.data().data(), static_cast<std::size_t>(f.data().size()));
  return t;
}

HtgfTensor to_htgf(const LogitMatrix& l) {
  HtgfTensor t;
  t.ids = l.ids();
  t.dims = {static_cast<std::uint32_t>(l.values().rows()),
            static_cast<std::uint32_t>(l.values().cols())};
  t.payload = to_floats(l.values().data(), static_cast<std::size_t>(l.values().size()));
  t.probability_flag = l.is_probability();
  return t;
}

HtgfTensor to_htgf(const LayerFeatureMap& layer, const std::vector<std::string>& ids) {
  HtgfTensor t;
  t.ids = ids;
  t.dims = {static_cast<std::uint32_t>(layer.n), static_cast<std::uint32_t>(layer.c),
            static_cast<std::uint32_t>(layer.h), static_cast<std::uint32_t>(layer.w)};
  t.payload = to_floats(layer.data.data(), layer.data.size());
  return t;
}

FeatureMatrix feature_matrix_from(const HtgfTensor& t) {
  return FeatureMatrix(t.ids, to_matrix(t, "feature matrix"));
}

LogitMatrix logit_matrix_from(const HtgfTensor& t) {
  require(t.probability_flag.has_value(), ErrorCode::kFormatError,
          "HTGF: logit file lacks the probability flag");
  return LogitMatrix(t.ids, to_matrix(t, "logit matrix"), *t.probability_flag);
}

FeatureMatrix load_feature_matrix(const std::filesystem::path& path) {
  return feature_matrix_from(read_htgf(path, HtgfKind::kTensor));
}

LogitMatrix load_logits(const std::filesystem::path& path) {
  return logit_matrix_from(read_htgf(path, HtgfKind::kLogits));
}

void save_feature_matrix(const std::filesystem::path& path, const FeatureMatrix& features) {
  write_htgf(path, to_htgf(features));
}

void save_logits(const std::filesystem::path& path, const LogitMatrix& logits) {
  write_htgf(path, to_htgf(logits));
}

LayerFeatureMapSet load_layer_maps(std::span<const LayerSource> sources) {
  require(!sources.empty(), ErrorCode::kInvalidArgument, "no layer files given");
  std::vector<std::string> ids;
  std::vector<LayerFeatureMap> layers;
  for (const auto& src : sources) {
    auto t = read_htgf(src.path, HtgfKind::kTensor);
    require(t.dims.size() == 4, ErrorCode::kShapeError,
            src.path.string() + ": layer maps must be rank 4 (N, C, H, W)");
    if (layers.empty()) {
      ids = t.ids;
    } else {
      require(t.ids == ids, ErrorCode::kAlignmentError,
              src.path.string() + ": id table differs from the first layer");
    }
    LayerFeatureMap layer;
    layer.name = src.name.empty() ? src.path.stem().string() : src.name;
    layer.weight = src.weight;
    layer.n = t.dims[0];
    layer.c = t.dims[1];
    layer.h = t.dims[2];
    layer.w = t.dims[3];
    layer.data.assign(t.payload.begin(), t.payload.end());
    layers.push_back(std::move(layer));
  }
  return LayerFeatureMapSet(std::move(ids), std::move(layers));
}

}  // namespace htg
