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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pj/errors.hpp"
#include "pj/image.hpp"

namespace pj {

struct InpaintParams {
  double tolerance = 0.5;  // stop once no pixel moves by this much
  std::size_t max_iterations = 10000;
};

struct InpaintReport {
  std::size_t iterations = 0;
  double last_change = 0.0;
};

/// Harmonic fill: masked pixels converge to the average of their in-image
/// 4-neighbours (Jacobi sweeps from an all-zero start), with unmasked pixels
/// held fixed. An image with no unmasked pixel comes back all zero.
inline ImageMatrix inpaint(const ImageMatrix& img, const PixelMask& mask,
                           const InpaintParams& params = {}, InpaintReport* report = nullptr) {
  if (mask.size() != img.size()) {
    throw Error(ErrorKind::kShape, "mask has " + std::to_string(mask.size()) +
                                       " entries for " + std::to_string(img.size()) + " pixels");
  }
  const std::size_t W = img.width, H = img.height;
  std::vector<double> cur(img.size());
  std::vector<std::size_t> holes;
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (mask[i]) {
      holes.push_back(i);
      cur[i] = 0.0;
    } else {
      cur[i] = img.pixels[i];
    }
  }
  ImageMatrix out = img;
  if (holes.empty()) return out;

  std::vector<double> next(holes.size());
  std::size_t it = 0;
  double change = 0.0;
  while (it < params.max_iterations) {
    ++it;
    change = 0.0;
    for (std::size_t h = 0; h < holes.size(); ++h) {
      const std::size_t i = holes[h];
      const std::size_t x = i % W, y = i / W;
      double sum = 0.0;
      int n = 0;
      if (x > 0) { sum += cur[i - 1]; ++n; }
      if (x + 1 < W) { sum += cur[i + 1]; ++n; }
      if (y > 0) { sum += cur[i - W]; ++n; }
      if (y + 1 < H) { sum += cur[i + W]; ++n; }
      next[h] = n > 0 ? sum / n : 0.0;
      change = std::max(change, std::abs(next[h] - cur[i]));
    }
    for (std::size_t h = 0; h < holes.size(); ++h) cur[holes[h]] = next[h];
    if (change < params.tolerance) break;
  }
  for (std::size_t i : holes) {
    out.pixels[i] = static_cast<std::uint8_t>(std::clamp(std::lround(cur[i]), 0L, 255L));
  }
  if (report) *report = {it, change};
  return out;
}

}  // namespace pj
