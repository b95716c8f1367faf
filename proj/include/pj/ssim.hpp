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

// Mean structural similarity with the usual constants: 11x11 Gaussian window
// (sigma 1.5), K1 = 0.01, K2 = 0.03, L = 255. Only window positions that lie
// fully inside the image are averaged. Images narrower or shorter than 11
// pixels fall back to a uniform k x k window, k = min(width, height).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "pj/errors.hpp"
#include "pj/image.hpp"

namespace pj {

struct SsimParams {
  std::size_t window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;

  double c1() const { return (k1 * dynamic_range) * (k1 * dynamic_range); }
  double c2() const { return (k2 * dynamic_range) * (k2 * dynamic_range); }
};

/// Normalised 1-D window; the 2-D window is its outer product.
inline std::vector<double> ssim_window_1d(std::size_t k, const SsimParams& params) {
  std::vector<double> w(k, 1.0);
  if (k == params.window) {
    const double c = static_cast<double>(k - 1) / 2.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double d = static_cast<double>(i) - c;
      w[i] = std::exp(-(d * d) / (2.0 * params.sigma * params.sigma));
    }
  }
  double sum = 0.0;
  for (double v : w) sum += v;
  for (double& v : w) v /= sum;
  return w;
}

inline std::size_t ssim_window_size(const ImageMatrix& img, const SsimParams& params) {
  return std::min({img.width, img.height, params.window});
}

inline double ssim(const ImageMatrix& a, const ImageMatrix& b, const SsimParams& params = {}) {
  require_same_shape(a, b);
  if (a.width == 0 || a.height == 0) throw Error(ErrorKind::kShape, "empty image");
  const std::size_t k = ssim_window_size(a, params);
  const std::vector<double> w = ssim_window_1d(k, params);
  const std::size_t W = a.width, H = a.height;
  const std::size_t ow = W - k + 1, oh = H - k + 1;

  // Horizontal pass: five moment images of size ow x H.
  std::vector<double> hx(ow * H), hy(ow * H), hxx(ow * H), hyy(ow * H), hxy(ow * H);
  for (std::size_t y = 0; y < H; ++y) {
    const std::uint8_t* ra = &a.pixels[y * W];
    const std::uint8_t* rb = &b.pixels[y * W];
    for (std::size_t x = 0; x < ow; ++x) {
      double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const double u = ra[x + i], v = rb[x + i], wi = w[i];
        sx += wi * u;
        sy += wi * v;
        sxx += wi * u * u;
        syy += wi * v * v;
        sxy += wi * u * v;
      }
      const std::size_t o = y * ow + x;
      hx[o] = sx;
      hy[o] = sy;
      hxx[o] = sxx;
      hyy[o] = syy;
      hxy[o] = sxy;
    }
  }

  const double c1 = params.c1(), c2 = params.c2();
  double total = 0.0;
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      double mx = 0, my = 0, mxx = 0, myy = 0, mxy = 0;
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t o = (y + j) * ow + x;
        const double wj = w[j];
        mx += wj * hx[o];
        my += wj * hy[o];
        mxx += wj * hxx[o];
        myy += wj * hyy[o];
        mxy += wj * hxy[o];
      }
      const double vx = mxx - mx * mx;
      const double vy = myy - my * my;
      const double cxy = mxy - mx * my;
      total += ((2.0 * mx * my + c1) * (2.0 * cxy + c2)) /
               ((mx * mx + my * my + c1) * (vx + vy + c2));
    }
  }
  return total / static_cast<double>(ow * oh);
}

}  // namespace pj
