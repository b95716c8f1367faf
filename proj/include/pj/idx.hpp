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

// IDX containers (MNIST layout): big-endian magic 0x00000803 for unsigned
// byte image stacks, 0x00000801 for label vectors, then one big-endian
// uint32 per dimension, then the raw bytes.

#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pj/errors.hpp"
#include "pj/image.hpp"
#include "pj/io.hpp"

namespace pj {

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

namespace detail {

inline std::uint32_t read_be32(std::string_view data, std::size_t pos) {
  if (pos + 4 > data.size()) throw Error(ErrorKind::kFormat, "IDX header truncated");
  return (static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos])) << 24) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos + 1])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos + 2])) << 8) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos + 3]));
}

inline void append_be32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v >> 24));
  out.push_back(static_cast<char>(v >> 16));
  out.push_back(static_cast<char>(v >> 8));
  out.push_back(static_cast<char>(v));
}

}  // namespace detail

inline std::vector<ImageMatrix> parse_idx_images(std::string_view data) {
  if (detail::read_be32(data, 0) != kIdxImageMagic) {
    throw Error(ErrorKind::kFormat, "bad IDX image magic");
  }
  const std::size_t count = detail::read_be32(data, 4);
  const std::size_t rows = detail::read_be32(data, 8);
  const std::size_t cols = detail::read_be32(data, 12);
  const std::size_t px = rows * cols;
  if (data.size() - 16 != count * px) {
    throw Error(ErrorKind::kFormat, "IDX image payload is " + std::to_string(data.size() - 16) +
                                        " bytes, dims imply " + std::to_string(count * px));
  }
  std::vector<ImageMatrix> out(count, ImageMatrix(cols, rows));
  for (std::size_t n = 0; n < count; ++n) {
    for (std::size_t i = 0; i < px; ++i) {
      out[n].pixels[i] = static_cast<std::uint8_t>(data[16 + n * px + i]);
    }
  }
  return out;
}

/// All images must share one shape. An empty stack is written as 0 x 0 x 0.
inline std::string format_idx_images(const std::vector<ImageMatrix>& images) {
  const std::size_t rows = images.empty() ? 0 : images.front().height;
  const std::size_t cols = images.empty() ? 0 : images.front().width;
  std::string out;
  detail::append_be32(out, kIdxImageMagic);
  detail::append_be32(out, static_cast<std::uint32_t>(images.size()));
  detail::append_be32(out, static_cast<std::uint32_t>(rows));
  detail::append_be32(out, static_cast<std::uint32_t>(cols));
  for (const ImageMatrix& img : images) {
    if (img.height != rows || img.width != cols) {
      throw Error(ErrorKind::kShape, "IDX stack images differ in shape");
    }
    out.append(img.pixels.begin(), img.pixels.end());
  }
  return out;
}

inline std::vector<ImageMatrix> read_idx_images(const std::filesystem::path& path) {
  return parse_idx_images(read_file(path));
}

inline void write_idx_images(const std::vector<ImageMatrix>& images,
                             const std::filesystem::path& path) {
  write_file_atomic(path, format_idx_images(images));
}

inline std::string format_idx_labels(const std::vector<int>& labels) {
  std::string out;
  detail::append_be32(out, kIdxLabelMagic);
  detail::append_be32(out, static_cast<std::uint32_t>(labels.size()));
  for (int l : labels) {
    if (l < 0 || l > 255) throw Error(ErrorKind::kRange, "IDX label outside 0..255");
    out.push_back(static_cast<char>(l));
  }
  return out;
}

/// Accepts an IDX label file or plain text with one integer per line.
inline std::vector<int> parse_labels(std::string_view data) {
  if (data.size() >= 8 && detail::read_be32(data, 0) == kIdxLabelMagic) {
    const std::size_t count = detail::read_be32(data, 4);
    if (data.size() - 8 != count) throw Error(ErrorKind::kFormat, "IDX label count mismatch");
    std::vector<int> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<unsigned char>(data[8 + i]);
    return out;
  }
  std::vector<int> out;
  std::size_t line = 1;
  for (std::size_t pos = 0; pos < data.size();) {
    std::size_t nl = data.find('\n', pos);
    if (nl == std::string_view::npos) nl = data.size();
    std::string_view s = data.substr(pos, nl - pos);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    if (!s.empty()) {
      std::size_t i = 0;
      const bool neg = s[0] == '-';
      if (neg) ++i;
      if (i == s.size()) throw Error(ErrorKind::kFormat, "bad label at line " + std::to_string(line));
      long v = 0;
      for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])) || v > 100000000) {
          throw Error(ErrorKind::kFormat, "bad label at line " + std::to_string(line));
        }
        v = v * 10 + (s[i] - '0');
      }
      out.push_back(static_cast<int>(neg ? -v : v));
    }
    pos = nl + 1;
    ++line;
  }
  return out;
}

inline std::vector<int> read_labels(const std::filesystem::path& path) {
  return parse_labels(read_file(path));
}

}  // namespace pj
