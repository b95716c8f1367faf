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

// Test-only oracles and fixtures. Nothing here calls into the code paths it
// is used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "pj/image.hpp"

namespace pj::testing {

/// Every digit tuple for `radices`, in increasing mixed-radix order
/// (odometer enumeration, last slot fastest).
inline std::vector<std::vector<int>> enumerate_digit_tuples(const std::vector<int>& radices) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(radices.size(), 0);
  for (;;) {
    out.push_back(cur);
    std::size_t i = radices.size();
    while (i > 0) {
      --i;
      if (++cur[i] < radices[i]) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
  }
}

/// Direct-formula SSIM: for every valid window position the full 2-D
/// weighted sums are evaluated from scratch.
inline double brute_force_ssim(const ImageMatrix& a, const ImageMatrix& b) {
  const std::size_t k = std::min<std::size_t>({a.width, a.height, 11});
  std::vector<double> w2(k * k);
  double total_w = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      double v = 1.0;
      if (k == 11) {
        const double dx = static_cast<double>(i) - 5.0, dy = static_cast<double>(j) - 5.0;
        v = std::exp(-(dx * dx + dy * dy) / (2.0 * 1.5 * 1.5));
      }
      w2[j * k + i] = v;
      total_w += v;
    }
  }
  for (double& v : w2) v /= total_w;
  const double c1 = (0.01 * 255) * (0.01 * 255), c2 = (0.03 * 255) * (0.03 * 255);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t y = 0; y + k <= a.height; ++y) {
    for (std::size_t x = 0; x + k <= a.width; ++x) {
      double mx = 0, my = 0;
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) {
          mx += w2[j * k + i] * a.at(x + i, y + j);
          my += w2[j * k + i] * b.at(x + i, y + j);
        }
      double vx = 0, vy = 0, cxy = 0;
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) {
          const double dx = a.at(x + i, y + j) - mx, dy = b.at(x + i, y + j) - my;
          vx += w2[j * k + i] * dx * dx;
          vy += w2[j * k + i] * dy * dy;
          cxy += w2[j * k + i] * dx * dy;
        }
      sum += ((2 * mx * my + c1) * (2 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

inline ImageMatrix random_image(std::size_t w, std::size_t h, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  ImageMatrix img(w, h);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(gen() & 0xff);
  return img;
}

/// Smooth portrait-like test card: gradients, a soft blob and low-frequency
/// ripples. Deterministic, never constant.
inline ImageMatrix test_card(std::size_t w, std::size_t h) {
  ImageMatrix img(w, h);
  const double cx = 0.45 * static_cast<double>(w), cy = 0.4 * static_cast<double>(h);
  const double r = 0.3 * static_cast<double>(std::min(w, h));
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double fx = static_cast<double>(x) / static_cast<double>(w);
      const double fy = static_cast<double>(y) / static_cast<double>(h);
      const double dx = static_cast<double>(x) - cx, dy = static_cast<double>(y) - cy;
      double v = 60.0 + 80.0 * fy + 30.0 * fx;
      v += 90.0 * std::exp(-(dx * dx + dy * dy) / (2.0 * r * r));
      v += 20.0 * std::sin(fx * 12.0) * std::cos(fy * 9.0);
      img.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
  }
  return img;
}

/// Horizontal ramp: value = x * 255 / (w - 1), rounded.
inline ImageMatrix horizontal_gradient(std::size_t w, std::size_t h) {
  ImageMatrix img(w, h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x)
      img.at(x, y) = static_cast<std::uint8_t>(
          std::lround(static_cast<double>(x) * 255.0 / static_cast<double>(w - 1)));
  return img;
}

}  // namespace pj::testing
