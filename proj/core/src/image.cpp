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

#include "htg_eval/image.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>

#include "htg_eval/error.hpp"

namespace htg {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

struct DecodedRaster {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int channels = 0;
  std::vector<unsigned char> bytes;
  std::vector<png_bytep> rows;
};

// Returns false on a libpng error; keeps setjmp away from objects with
// non-trivial destructors.
bool read_raster(std::FILE* fp, DecodedRaster* out) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  const int color_type = png_get_color_type(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  if (bit_depth == 16) png_set_swap(png);  // host little-endian words
  png_read_update_info(png, info);

  out->width = png_get_image_width(png, info);
  out->height = png_get_image_height(png, info);
  out->bit_depth = png_get_bit_depth(png, info);
  out->channels = png_get_channels(png, info);
  const png_size_t rowbytes = png_get_rowbytes(png, info);
  out->bytes.resize(rowbytes * out->height);
  out->rows.resize(out->height);
  for (png_uint_32 y = 0; y < out->height; ++y) out->rows[y] = out->bytes.data() + y * rowbytes;
  png_read_image(png, out->rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

struct WriteSink {
  std::vector<unsigned char>* bytes;
};

void write_callback(png_structp png, png_bytep data, png_size_t length) {
  auto* sink = static_cast<WriteSink*>(png_get_io_ptr(png));
  sink->bytes->insert(sink->bytes->end(), data, data + length);
}

void flush_callback(png_structp) {}

bool write_raster(const std::vector<unsigned char>& raster, png_uint_32 width,
                  png_uint_32 height, int bit_depth, std::vector<unsigned char>* out) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  WriteSink sink{out};
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, &sink, write_callback, flush_callback);
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, width, height, bit_depth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t rowbytes = static_cast<std::size_t>(width) * (bit_depth / 8);
  for (png_uint_32 y = 0; y < height; ++y) {
    png_write_row(png, const_cast<png_bytep>(raster.data() + y * rowbytes));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

}  // namespace

GrayImage load_image(const std::filesystem::path& path) {
  std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "rb"));
  require(fp != nullptr, ErrorCode::kIoError, "cannot open image " + path.string());
  unsigned char sig[8] = {};
  require(std::fread(sig, 1, 8, fp.get()) == 8 && png_sig_cmp(sig, 0, 8) == 0,
          ErrorCode::kFormatError, path.string() + ": not a PNG file");
  std::rewind(fp.get());
  DecodedRaster raster;
  require(read_raster(fp.get(), &raster), ErrorCode::kFormatError,
          path.string() + ": corrupt PNG");

  const bool wide = raster.bit_depth == 16;
  const double max_i = wide ? 65535.0 : 255.0;
  const std::size_t n = static_cast<std::size_t>(raster.width) * raster.height;
  std::vector<double> pixels(n);
  const auto sample = [&](std::size_t idx) -> double {
    if (wide) {
      return static_cast<double>(raster.bytes[2 * idx] | (raster.bytes[2 * idx + 1] << 8));
    }
    return static_cast<double>(raster.bytes[idx]);
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (raster.channels == 1) {
      pixels[i] = sample(i);
    } else {
      const std::size_t base = i * static_cast<std::size_t>(raster.channels);
      pixels[i] = std::min(max_i, luma_bt601(sample(base), sample(base + 1), sample(base + 2)));
    }
  }
  return GrayImage(raster.width, raster.height, std::move(pixels), max_i);
}

std::vector<unsigned char> encode_png(const GrayImage& image) {
  const bool wide = image.max_intensity() == 65535.0;
  require(wide || image.max_intensity() == 255.0, ErrorCode::kInvalidArgument,
          "PNG output requires max intensity 255 or 65535");
  std::vector<unsigned char> raster;
  raster.reserve(image.size() * (wide ? 2 : 1));
  for (double p : image.pixels()) {
    const auto v = static_cast<unsigned>(std::lround(p));
    if (wide) {
      raster.push_back(static_cast<unsigned char>(v >> 8));  // PNG is big-endian
      raster.push_back(static_cast<unsigned char>(v & 0xFF));
    } else {
      raster.push_back(static_cast<unsigned char>(v));
    }
  }
  std::vector<unsigned char> out;
  require(write_raster(raster, static_cast<png_uint_32>(image.width()),
                       static_cast<png_uint_32>(image.height()), wide ? 16 : 8, &out),
          ErrorCode::kIoError, "PNG encoding failed");
  return out;
}

void write_png(const std::filesystem::path& path, const GrayImage& image) {
  const auto bytes = encode_png(image);
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::kIoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace htg
