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

#include "htg_eval/fixture.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "htg_eval/error.hpp"
#include "htg_eval/htgf.hpp"
#include "htg_eval/image.hpp"
#include "htg_eval/random.hpp"
#include "htg_eval/records.hpp"

namespace htg {
namespace {

constexpr std::array<const char*, 96> kWords = {
    "the",     "move",     "to",      "stop",     "mister",   "from",     "nominating",
    "any",     "more",     "labour",  "life",     "peers",    "is",       "be",
    "made",    "at",       "meeting", "of",       "party",    "tomorrow", "will",
    "sabotage", "debate",  "house",   "lords",    "guardian", "sitting",  "kitten",
    "against", "minister", "said",    "would",    "their",    "which",    "there",
    "people",  "about",    "could",   "other",    "after",    "first",    "never",
    "these",   "think",    "where",   "being",    "every",    "great",    "might",
    "shall",   "while",    "those",   "before",   "should",   "through",  "little",
    "around",  "another",  "however", "without",  "again",    "place",    "still",
    "between", "under",    "right",   "three",    "small",    "found",    "general",
    "letter",  "water",    "across",  "system",   "public",   "within",   "during",
    "number",  "second",   "whether", "possible", "perhaps",  "morning",  "evening",
    "written", "hand",     "style",   "word",     "text",     "write",    "pen",
    "ink",     "page",     "line",    "quick",    "brown"};

constexpr double kHeight = 32.0;
constexpr double kBaseline = 25.0;

struct WriterStyle {
  double slant;
  double cell_width;
  double thickness;
  double ink;
  double top;
  std::uint64_t shape;
};

WriterStyle writer_style(std::int64_t writer, std::uint64_t writer_seed) {
  Rng r(mix_seed(writer_seed, 1000 + static_cast<std::uint64_t>(writer)));
  WriterStyle s;
  s.slant = r.uniform(-0.35, 0.35);
  s.cell_width = r.uniform(9.0, 14.0);
  s.thickness = r.uniform(1.0, 2.6);
  s.ink = std::floor(r.uniform(0.0, 80.0));
  s.top = r.uniform(6.0, 10.0);
  s.shape = r.next();
  return s;
}

void perturb(WriterStyle& s, double jitter, Rng& rng) {
  s.slant = std::clamp(s.slant + jitter * 0.7 * rng.uniform(-1, 1), -0.6, 0.6);
  s.cell_width = std::clamp(s.cell_width + jitter * 5.0 * rng.uniform(-1, 1), 6.0, 18.0);
  s.thickness = std::clamp(s.thickness + jitter * 1.6 * rng.uniform(-1, 1), 0.8, 3.5);
  s.ink = std::floor(std::clamp(s.ink + jitter * 80.0 * rng.uniform(-1, 1), 0.0, 120.0));
  s.top = std::clamp(s.top + jitter * 4.0 * rng.uniform(-1, 1), 4.0, 12.0);
}

struct Point {
  double x, y;
};

struct Segment {
  Point a, b;
};

// Grid control points of a glyph: shared skeleton per character plus a
// writer-specific offset.
std::array<Segment, 3> glyph_strokes(char32_t c, const WriterStyle& style, Rng& sample_rng,
                                     double origin_x) {
  Rng skeleton(mix_seed(0xC0FFEEULL, c));
  Rng variant(mix_seed(style.shape, c));
  std::array<Segment, 3> out{};
  const double span_x = style.cell_width - 3.0;
  const double span_y = kBaseline - style.top;
  for (auto& seg : out) {
    std::array<Point, 2> pts{};
    for (auto& p : pts) {
      const double gx = static_cast<double>(skeleton.uniform_index(4));
      const double gy = static_cast<double>(skeleton.uniform_index(6));
      const double vx = variant.uniform(-0.6, 0.6) + sample_rng.uniform(-0.3, 0.3);
      const double vy = variant.uniform(-0.6, 0.6) + sample_rng.uniform(-0.3, 0.3);
      double y = style.top + (gy / 5.0) * span_y + vy;
      double x = origin_x + (gx / 3.0) * span_x + vx;
      x += style.slant * (kBaseline - y);
      p = {x, y};
    }
    if (pts[0].x == pts[1].x && pts[0].y == pts[1].y) pts[1].x += 1.5;
    seg = {pts[0], pts[1]};
  }
  return out;
}

void draw_segment(std::vector<double>& pixels, std::size_t width, std::size_t height,
                  const Segment& s, double thickness, double ink) {
  const double r = thickness / 2.0;
  const double r2 = r * r;
  const double x0 = std::floor(std::min(s.a.x, s.b.x) - r - 1.0);
  const double x1 = std::ceil(std::max(s.a.x, s.b.x) + r + 1.0);
  const double y0 = std::floor(std::min(s.a.y, s.b.y) - r - 1.0);
  const double y1 = std::ceil(std::max(s.a.y, s.b.y) + r + 1.0);
  const double dx = s.b.x - s.a.x;
  const double dy = s.b.y - s.a.y;
  const double len2 = dx * dx + dy * dy;
  for (double py = std::max(0.0, y0); py < std::min<double>(height, y1); py += 1.0) {
    for (double px = std::max(0.0, x0); px < std::min<double>(width, x1); px += 1.0) {
      const double cx = px + 0.5;
      const double cy = py + 0.5;
      double t = ((cx - s.a.x) * dx + (cy - s.a.y) * dy) / len2;
      t = std::clamp(t, 0.0, 1.0);
      const double ex = s.a.x + t * dx - cx;
      const double ey = s.a.y + t * dy - cy;
      if (ex * ex + ey * ey <= r2) {
        auto& p = pixels[static_cast<std::size_t>(py) * width + static_cast<std::size_t>(px)];
        p = std::min(p, ink);
      }
    }
  }
}

char substitute(char c, Rng& rng) {
  char r = static_cast<char>('a' + rng.uniform_index(25));
  if (r >= c) ++r;
  return r == c ? 'z' : r;
}

std::string format_id(const std::string& prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06d", i);
  return prefix + "-" + buf;
}

}  // namespace

GrayImage render_word(const std::string& word, std::int64_t writer, std::uint64_t writer_seed,
                      std::uint64_t sample_seed, double style_jitter) {
  require(!word.empty(), ErrorCode::kInvalidArgument, "cannot render an empty word");
  Rng rng(sample_seed);
  WriterStyle style = writer_style(writer, writer_seed);
  if (style_jitter > 0.0) perturb(style, style_jitter, rng);

  const double pad = 4.0 + std::ceil(std::abs(style.slant) * kHeight);
  const auto width = static_cast<std::size_t>(
      std::ceil(2.0 * pad + static_cast<double>(word.size()) * style.cell_width));
  const auto height = static_cast<std::size_t>(kHeight);
  std::vector<double> pixels(width * height, 255.0);
  for (std::size_t k = 0; k < word.size(); ++k) {
    const double origin = pad + static_cast<double>(k) * style.cell_width;
    const auto c = static_cast<char32_t>(static_cast<unsigned char>(word[k]));
    for (const auto& seg : glyph_strokes(c, style, rng, origin)) {
      draw_segment(pixels, width, height, seg, style.thickness, style.ink);
    }
  }
  return GrayImage(width, height, std::move(pixels), 255.0);
}

std::vector<double> word_image_descriptor(const GrayImage& image) {
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  const double max_i = image.max_intensity();
  std::vector<double> f(kDescriptorDim, 0.0);

  double total = 0.0, sx = 0.0, sy = 0.0;
  std::array<double, 4> rows{}, cols{};
  double ink_pixels = 0.0, ink_sum = 0.0;
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double ink = (max_i - image.at(x, y)) / max_i;
      total += ink;
      sx += ink * static_cast<double>(x);
      sy += ink * static_cast<double>(y);
      rows[std::min<std::size_t>(3, 4 * y / h)] += ink;
      cols[std::min<std::size_t>(3, 4 * x / w)] += ink;
      if (ink > 0.0) {
        ink_pixels += 1.0;
        ink_sum += ink;
      }
    }
  }
  const double n = static_cast<double>(w * h);
  f[0] = total / n;
  f[1] = static_cast<double>(w) / static_cast<double>(h) / 10.0;
  if (total <= 0.0) return f;
  for (int b = 0; b < 4; ++b) {
    f[2 + b] = rows[b] / total;
    f[6 + b] = cols[b] / total;
  }
  const double cx = sx / total;
  const double cy = sy / total;
  double vxx = 0.0, vyy = 0.0, vxy = 0.0;
  double transitions_h = 0.0;
  for (std::size_t y = 0; y < h; ++y) {
    bool prev = false;
    for (std::size_t x = 0; x < w; ++x) {
      const double ink = (max_i - image.at(x, y)) / max_i;
      const double dx = static_cast<double>(x) - cx;
      const double dy = static_cast<double>(y) - cy;
      vxx += ink * dx * dx;
      vyy += ink * dy * dy;
      vxy += ink * dx * dy;
      const bool on = ink > 0.0;
      if (on && !prev) transitions_h += 1.0;
      prev = on;
    }
  }
  vxx /= total;
  vyy /= total;
  vxy /= total;
  double transitions_v = 0.0;
  for (std::size_t x = 0; x < w; ++x) {
    bool prev = false;
    for (std::size_t y = 0; y < h; ++y) {
      const bool on = image.at(x, y) < max_i;
      if (on && !prev) transitions_v += 1.0;
      prev = on;
    }
  }
  f[10] = vxx / static_cast<double>(w * w);
  f[11] = vyy / static_cast<double>(h * h);
  f[12] = -vxy / (vyy + 1e-12);
  f[13] = ink_sum / ink_pixels;
  f[14] = transitions_v / static_cast<double>(w) / 10.0;
  f[15] = transitions_h > 0.0 ? ink_pixels / transitions_h / 10.0 : 0.0;
  return f;
}

FixtureDataset generate_fixture_dataset(int n_writers, int n_samples, std::uint64_t seed,
                                        const FixtureOptions& options) {
  require(n_writers >= 2, ErrorCode::kInvalidArgument, "fixture needs at least 2 writers");
  require(n_samples >= n_writers, ErrorCode::kInvalidArgument,
          "fixture needs at least one sample per writer");
  require(options.char_error_rate >= 0.0 && options.char_error_rate <= 1.0,
          ErrorCode::kInvalidArgument, "char_error_rate must lie in [0, 1]");
  require(options.style_accuracy >= 0.0 && options.style_accuracy <= 1.0,
          ErrorCode::kInvalidArgument, "style_accuracy must lie in [0, 1]");
  if (options.clean_fraction) {
    require(*options.clean_fraction >= 0.0 && *options.clean_fraction <= 1.0,
            ErrorCode::kInvalidArgument, "clean_fraction must lie in [0, 1]");
  }

  const auto n = static_cast<std::size_t>(n_samples);
  const std::uint64_t writer_seed = options.writer_seed.value_or(seed);
  Rng word_rng(mix_seed(seed, 1));
  Rng error_rng(mix_seed(seed, 2));
  Rng style_rng(mix_seed(seed, 3));
  Rng clean_rng(mix_seed(seed, 4));

  std::vector<char> forced_clean(n, 0), forced_dirty(n, 0);
  if (options.clean_fraction) {
    const auto n_clean =
        static_cast<std::size_t>(std::llround(*options.clean_fraction * static_cast<double>(n)));
    const auto order = clean_rng.sample_without_replacement(n, n);
    for (std::size_t k = 0; k < n; ++k) (k < n_clean ? forced_clean : forced_dirty)[order[k]] = 1;
  }

  std::vector<SampleEntry> entries;
  std::vector<GrayImage> images;
  std::vector<std::string> ids;
  RowMatrix features(static_cast<Eigen::Index>(n), kDescriptorDim);
  std::vector<TranscriptionRecord> transcriptions;
  std::vector<StylePredictionRecord> styles;
  entries.reserve(n);
  images.reserve(n);

  for (std::size_t i = 0; i < n; ++i) {
    const auto writer = static_cast<std::int64_t>(i % static_cast<std::size_t>(n_writers));
    const std::string word = kWords[word_rng.uniform_index(kWords.size())];
    const std::string id = format_id(options.id_prefix, static_cast<int>(i));

    auto image = render_word(word, writer, writer_seed, mix_seed(seed, 100000 + i),
                             options.style_jitter);
    const auto desc = word_image_descriptor(image);
    for (int d = 0; d < kDescriptorDim; ++d) {
      // Stored at HTGF precision so files round-trip bit-exactly.
      features(static_cast<Eigen::Index>(i), d) = static_cast<float>(desc[d]);
    }

    std::string hyp = word;
    if (!forced_clean[i]) {
      bool changed = false;
      for (auto& ch : hyp) {
        if (error_rng.bernoulli(options.char_error_rate)) {
          ch = substitute(ch, error_rng);
          changed = true;
        }
      }
      if (forced_dirty[i] && !changed) {
        auto& ch = hyp[error_rng.uniform_index(hyp.size())];
        ch = substitute(ch, error_rng);
      }
    }

    std::int64_t predicted = writer;
    if (!style_rng.bernoulli(options.style_accuracy)) {
      auto other = static_cast<std::int64_t>(style_rng.uniform_index(
          static_cast<std::uint64_t>(n_writers - 1)));
      predicted = other >= writer ? other + 1 : other;
    }

    entries.push_back({id, "images/" + id + ".png", word, writer, VocabTag::kUnset});
    images.push_back(std::move(image));
    ids.push_back(id);
    transcriptions.push_back({id, word, std::move(hyp)});
    styles.push_back({id, writer, predicted});
  }

  return FixtureDataset{DatasetManifest(options.split_name, std::move(entries)), std::move(images),
                        FeatureMatrix(std::move(ids), std::move(features)),
                        std::move(transcriptions), std::move(styles)};
}

std::vector<std::filesystem::path> write_fixture(const FixtureDataset& dataset,
                                                 const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "images");
  std::vector<std::filesystem::path> written;
  const auto put = [&](const std::filesystem::path& p, const std::string& content) {
    write_text_file(p, content);
    written.push_back(p);
  };
  put(dir / "manifest.jsonl", manifest_to_jsonl(dataset.manifest));
  for (std::size_t i = 0; i < dataset.images.size(); ++i) {
    const auto p = dir / ("images/" + dataset.manifest.samples()[i].sample_id + ".png");
    write_png(p, dataset.images[i]);
    written.push_back(p);
  }
  const auto feats = dir / "features.htgf";
  save_feature_matrix(feats, dataset.features);
  written.push_back(feats);
  put(dir / "transcriptions.jsonl", transcriptions_to_jsonl(dataset.transcriptions));
  put(dir / "style.jsonl", style_predictions_to_jsonl(dataset.style_predictions));
  return written;
}

}  // namespace htg
