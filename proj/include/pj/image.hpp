/*
Copyright 2026 The PJ Codec Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pj/errors.hpp"
#include "pj/io.hpp"

namespace pj {

/// Row-major 8-bit grayscale image.
struct ImageMatrix {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  ImageMatrix() = default;
  ImageMatrix(std::size_t w, std::size_t h, std::uint8_t fill = 0)
      : width(w), height(h), pixels(w * h, fill) {}

  std::size_t size() const { return pixels.size(); }
  std::uint8_t& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
  std::uint8_t at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }

  friend bool operator==(const ImageMatrix&, const ImageMatrix&) = default;
};

/// One flag per pixel, row-major; true marks a missing pixel.
using PixelMask = std::vector<bool>;

inline void require_same_shape(const ImageMatrix& a, const ImageMatrix& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorKind::kShape, std::to_string(a.width) + "x" + std::to_string(a.height) +
                                       " vs " + std::to_string(b.width) + "x" +
                                       std::to_string(b.height));
  }
}

namespace detail {

// Netpbm header fields: whitespace separated, '#' comments to end of line.
inline std::size_t pnm_field(std::string_view data, std::size_t& pos) {
  for (;;) {
    while (pos < data.size() && std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
    if (pos < data.size() && data[pos] == '#') {
      while (pos < data.size() && data[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  std::size_t start = pos;
  std::size_t v = 0;
  while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
    v = v * 10 + static_cast<std::size_t>(data[pos] - '0');
    if (v > (std::size_t{1} << 32)) throw Error(ErrorKind::kFormat, "PNM header value too large");
    ++pos;
  }
  if (pos == start) throw Error(ErrorKind::kFormat, "malformed PNM header");
  return v;
}

inline void pnm_expect_magic(std::string_view data, std::string_view magic) {
  if (data.size() < 2 || data.substr(0, 2) != magic) {
    throw Error(ErrorKind::kFormat, "expected binary " + std::string(magic) + " image");
  }
}

}  // namespace detail

inline ImageMatrix parse_pgm(std::string_view data) {
  detail::pnm_expect_magic(data, "P5");
  std::size_t pos = 2;
  const std::size_t w = detail::pnm_field(data, pos);
  const std::size_t h = detail::pnm_field(data, pos);
  const std::size_t maxval = detail::pnm_field(data, pos);
  if (maxval != 255) {
    throw Error(ErrorKind::kFormat, "PGM maxval " + std::to_string(maxval) + " (only 255)");
  }
  if (pos >= data.size() || !std::isspace(static_cast<unsigned char>(data[pos]))) {
    throw Error(ErrorKind::kFormat, "PGM header not terminated");
  }
  ++pos;
  if (data.size() - pos < w * h) throw Error(ErrorKind::kFormat, "PGM raster truncated");
  ImageMatrix img(w, h);
  for (std::size_t i = 0; i < w * h; ++i) img.pixels[i] = static_cast<std::uint8_t>(data[pos + i]);
  return img;
}

inline std::string format_pgm(const ImageMatrix& img) {
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                    "\n255\n";
  out.append(img.pixels.begin(), img.pixels.end());
  return out;
}

inline ImageMatrix read_pgm(const std::filesystem::path& path) { return parse_pgm(read_file(path)); }

inline void write_pgm(const ImageMatrix& img, const std::filesystem::path& path) {
  write_file_atomic(path, format_pgm(img));
}

/// P4 bitmap; a set bit (black) marks a missing pixel.
inline std::string format_pbm(const PixelMask& mask, std::size_t width, std::size_t height) {
  if (mask.size() != width * height) throw Error(ErrorKind::kShape, "mask size mismatch");
  std::string out = "P4\n" + std::to_string(width) + " " + std::to_string(height) + "\n";
  const std::size_t row_bytes = (width + 7) / 8;
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t b = 0; b < row_bytes; ++b) {
      unsigned char byte = 0;
      for (std::size_t k = 0; k < 8; ++k) {
        const std::size_t x = b * 8 + k;
        if (x < width && mask[y * width + x]) byte |= static_cast<unsigned char>(0x80u >> k);
      }
      out.push_back(static_cast<char>(byte));
    }
  }
  return out;
}

inline PixelMask parse_pbm(std::string_view data, std::size_t* width_out = nullptr,
                           std::size_t* height_out = nullptr) {
  detail::pnm_expect_magic(data, "P4");
  std::size_t pos = 2;
  const std::size_t w = detail::pnm_field(data, pos);
  const std::size_t h = detail::pnm_field(data, pos);
  if (pos >= data.size()) throw Error(ErrorKind::kFormat, "PBM header not terminated");
  ++pos;
  const std::size_t row_bytes = (w + 7) / 8;
  if (data.size() - pos < row_bytes * h) throw Error(ErrorKind::kFormat, "PBM raster truncated");
  PixelMask mask(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const auto byte = static_cast<unsigned char>(data[pos + y * row_bytes + x / 8]);
      mask[y * w + x] = (byte & (0x80u >> (x % 8))) != 0;
    }
  }
  if (width_out) *width_out = w;
  if (height_out) *height_out = h;
  return mask;
}

inline void write_pbm(const PixelMask& mask, std::size_t width, std::size_t height,
                      const std::filesystem::path& path) {
  write_file_atomic(path, format_pbm(mask, width, height));
}

}  // namespace pj
