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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "pj/idx.hpp"
#include "pj/recovery_metrics.hpp"
#include "support/fixtures.hpp"

namespace pj {
namespace {

ImageMatrix invert(const ImageMatrix& img) {
  ImageMatrix out = img;
  for (auto& p : out.pixels) p = static_cast<std::uint8_t>(255 - p);
  return out;
}

TEST(SsimTest, IdentityIsExactlyOne) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const ImageMatrix x = testing::random_image(40, 31, s);
    EXPECT_EQ(ssim(x, x), 1.0);
  }
  const ImageMatrix flat(20, 20, 128);
  EXPECT_EQ(ssim(flat, flat), 1.0);
}

TEST(SsimTest, InversionScoresBelowIdentity) {
  const ImageMatrix x = testing::test_card(48, 40);
  EXPECT_LT(ssim(x, invert(x)), ssim(x, x));
  EXPECT_LT(ssim(x, invert(x)), 0.0);
}

TEST(SsimTest, Symmetric) {
  const ImageMatrix a = testing::random_image(25, 19, 1), b = testing::test_card(25, 19);
  EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-12);
}

TEST(SsimTest, ShapeMismatch) {
  try {
    ssim(ImageMatrix(10, 10), ImageMatrix(10, 11));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kShape);
  }
}

TEST(SsimTest, MatchesBruteForceOracle) {
  std::mt19937_64 gen(314);
  for (int i = 0; i < 100; ++i) {
    const ImageMatrix a = testing::random_image(32, 32, gen());
    ImageMatrix b = a;
    // mix of unrelated and correlated pairs
    if (i % 2 == 0) {
      b = testing::random_image(32, 32, gen());
    } else {
      for (auto& p : b.pixels) p = static_cast<std::uint8_t>(std::clamp<int>(p + static_cast<int>(gen() % 41) - 20, 0, 255));
    }
    ASSERT_NEAR(ssim(a, b), testing::brute_force_ssim(a, b), 1e-9);
  }
}

TEST(SsimTest, SmallImagesUseUniformWindow) {
  const ImageMatrix a = testing::random_image(9, 6, 1), b = testing::random_image(9, 6, 2);
  EXPECT_EQ(ssim_window_size(a, {}), 6u);
  EXPECT_NEAR(ssim(a, b), testing::brute_force_ssim(a, b), 1e-9);
  const ImageMatrix one(1, 1, 9);
  EXPECT_EQ(ssim(one, one), 1.0);
}

TEST(InpaintTest, EmptyMaskLeavesImageUnchanged) {
  const ImageMatrix img = testing::random_image(20, 10, 3);
  EXPECT_EQ(inpaint(img, PixelMask(img.size(), false)), img);
}

TEST(InpaintTest, SingleHoleTakesNeighbourValue) {
  ImageMatrix img(5, 5, 90);
  img.at(2, 2) = 0;
  PixelMask mask(25, false);
  mask[2 * 5 + 2] = true;
  EXPECT_EQ(inpaint(img, mask).at(2, 2), 90);
}

TEST(InpaintTest, FullyMaskedImageIsZero) {
  const ImageMatrix img = testing::random_image(12, 12, 4);
  EXPECT_EQ(inpaint(img, PixelMask(img.size(), true)), ImageMatrix(12, 12, 0));
}

// The default 0.5 stopping rule halts Jacobi long before a hole of this size
// converges, so the linear-field check runs the iteration to a tight tolerance.
TEST(InpaintTest, ReproducesLinearGradientInsideDisk) {
  const ImageMatrix img = testing::horizontal_gradient(64, 64);
  PixelMask mask(img.size(), false);
  ImageMatrix holed = img;
  for (std::size_t y = 0; y < 64; ++y) {
    for (std::size_t x = 0; x < 64; ++x) {
      const double dx = static_cast<double>(x) - 31.5, dy = static_cast<double>(y) - 31.5;
      if (dx * dx + dy * dy <= 6.0 * 6.0) {
        mask[y * 64 + x] = true;
        holed.at(x, y) = 0;
      }
    }
  }
  InpaintReport report;
  InpaintParams tight;
  tight.tolerance = 1e-4;
  tight.max_iterations = 100000;
  const ImageMatrix filled = inpaint(holed, mask, tight, &report);
  int worst = 0;
  for (std::size_t i = 0; i < img.size(); ++i) {
    worst = std::max(worst, std::abs(int(filled.pixels[i]) - int(img.pixels[i])));
  }
  EXPECT_LE(worst, 1) << "iterations " << report.iterations;
  EXPECT_LT(report.last_change, tight.tolerance);
}

TEST(InpaintTest, DefaultStoppingRuleOnGradientDisk) {
  const ImageMatrix img = testing::horizontal_gradient(64, 64);
  PixelMask mask(img.size(), false);
  ImageMatrix holed = img;
  for (std::size_t y = 28; y < 36; ++y) {
    for (std::size_t x = 28; x < 36; ++x) {
      mask[y * 64 + x] = true;
      holed.at(x, y) = 0;
    }
  }
  InpaintReport report;
  const ImageMatrix filled = inpaint(holed, mask, {}, &report);
  EXPECT_LT(report.last_change, 0.5);
  EXPECT_LT(report.iterations, 10000u);
  EXPECT_GT(ssim(img, filled), ssim(img, holed));
}

TEST(InpaintTest, IdempotentOnItsOutput) {
  const ImageMatrix img = testing::test_card(60, 40);
  PixelMask mask(img.size(), false);
  std::mt19937_64 gen(5);
  for (std::size_t t = 0; t < img.size() / 20; ++t) {
    if (gen() % 5 == 0) {
      for (std::size_t k = 0; k < 20; ++k) mask[t * 20 + k] = true;
    }
  }
  const ImageMatrix once = inpaint(img, mask);
  const ImageMatrix twice = inpaint(once, mask);
  for (std::size_t i = 0; i < img.size(); ++i) {
    EXPECT_LE(std::abs(int(once.pixels[i]) - int(twice.pixels[i])), 0);
  }
}

TEST(InpaintTest, ShapeMismatch) {
  EXPECT_THROW(inpaint(ImageMatrix(4, 4), PixelMask(15)), Error);
}

TEST(EmDecodeTest, AnyLossIsFailure) {
  const ImageMatrix img = testing::test_card(16, 16);
  ASSERT_TRUE(em_decode(10660, 10660, img).has_value());
  EXPECT_EQ(ssim(img, *em_decode(10660, 10660, img)), 1.0);
  EXPECT_FALSE(em_decode(10659, 10660, img).has_value());
  EXPECT_FALSE(em_decode(0, 10660, img).has_value());
  EXPECT_THROW(em_decode(11, 10, img), Error);
}

TEST(LossSweepTest, ShapeOfCurve) {
  const ImageMatrix img = testing::test_card(120, 90);  // 540 strands
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  SweepOptions opt;
  opt.inpaint = false;
  const SweepResult res = loss_sweep(img, {0.5, 0.0, 0.1, 0.9, 1.0}, seeds, opt);
  ASSERT_EQ(res.rows.size(), 5u * 3u * 2u);
  for (std::size_t i = 1; i < res.rows.size(); ++i) {
    EXPECT_LE(res.rows[i - 1].loss_rate, res.rows[i].loss_rate);
  }
  for (const SweepRow& r : res.rows) {
    if (r.loss_rate == 0.0) {
      EXPECT_EQ(r.ssim_raw, 1.0);
    } else if (r.scheme == Scheme::kEM) {
      EXPECT_EQ(r.ssim_raw, 0.0);
    } else if (r.loss_rate < 1.0) {
      EXPECT_GT(r.ssim_raw, 0.0);
    }
    EXPECT_FALSE(r.ssim_inpainted.has_value());
  }
  const auto med = median_by_rate(res, Scheme::kPM);
  ASSERT_EQ(med.size(), 5u);
  for (std::size_t i = 1; i < med.size(); ++i) EXPECT_LE(med[i].second, med[i - 1].second);
}

TEST(LossSweepTest, CsvFormat) {
  const ImageMatrix img = testing::test_card(30, 20);
  const std::vector<std::uint64_t> seeds{7};
  const SweepResult res = loss_sweep(img, {0.0, 0.25}, seeds);
  const std::string csv = format_sweep_csv(res);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "loss_rate,seed,scheme,ssim_raw,ssim_inpainted,masked_fraction");
  EXPECT_NE(csv.find("\n0,7,PM,1.000000000,1.000000000,0.000000000\n"), std::string::npos);
  EXPECT_NE(csv.find("\n0,7,EM,1.000000000,1.000000000,0.000000000\n"), std::string::npos);
  EXPECT_NE(csv.find("\n0.25,7,EM,0.000000000,0.000000000,1.000000000\n"), std::string::npos);
  EXPECT_EQ(csv, format_sweep_csv(loss_sweep(img, {0.25, 0.0}, seeds)));
}

TEST(LossSweepTest, ThreadCountDoesNotChangeResult) {
  const ImageMatrix img = testing::test_card(50, 40);
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4};
  SweepOptions serial, threaded;
  threaded.threads = 4;
  EXPECT_EQ(format_sweep_csv(loss_sweep(img, {0.0, 0.3, 0.6}, seeds, serial)),
            format_sweep_csv(loss_sweep(img, {0.0, 0.3, 0.6}, seeds, threaded)));
}

TEST(DegradeDatasetTest, ZeroRateIsIdentity) {
  std::vector<ImageMatrix> imgs;
  for (std::uint64_t i = 0; i < 20; ++i) imgs.push_back(testing::random_image(28, 28, i));
  const DegradedDataset out = degrade_dataset(imgs, 0.0, 1);
  EXPECT_EQ(out.images, imgs);
  EXPECT_EQ(out.summary.strands_per_image, 40u);
  EXPECT_EQ(out.summary.mean_masked_fraction, 0.0);
}

TEST(DegradeDatasetTest, TenPercentLossOnTenThousandImages) {
  std::vector<ImageMatrix> imgs;
  std::mt19937_64 gen(6);
  for (int i = 0; i < 10000; ++i) imgs.push_back(testing::random_image(28, 28, gen()));
  const DegradedDataset out = degrade_dataset(imgs, 0.1, 42);
  EXPECT_NEAR(out.summary.mean_masked_fraction, 0.10, 0.01);
  ASSERT_EQ(out.masks.size(), imgs.size());
  for (std::size_t i = 0; i < 50; ++i) {
    for (std::size_t p = 0; p < 784; ++p) {
      if (out.masks[i].pixels[p] == 0) {
        ASSERT_EQ(out.images[i].pixels[p], imgs[i].pixels[p]);
      } else {
        ASSERT_EQ(out.images[i].pixels[p], 0);
      }
    }
  }
}

TEST(TallyTest, Examples) {
  const std::vector<int> t1{1, 2, 3};
  EXPECT_EQ(tally_outcomes(t1, t1, t1).prediction_accuracy(), 1.0);

  const std::vector<int> t2{1, 2}, d2{1, 9};
  const OutcomeTally a = tally_outcomes(t2, t2, d2);
  EXPECT_EQ(a.prediction_accuracy(), 0.5);
  EXPECT_EQ(a.both_correct, 1u);
  EXPECT_EQ(a.orig_correct_degr_wrong, 1u);
  EXPECT_EQ(a.orig_wrong_degr_correct, 0u);
  EXPECT_EQ(a.both_wrong_same + a.both_wrong_diff, 0u);

  const std::vector<int> o3{9, 2};
  const OutcomeTally b = tally_outcomes(t2, o3, t2);
  EXPECT_EQ(b.orig_wrong_degr_correct, 1u);
  EXPECT_EQ(b.prediction_accuracy(), 1.0);
}

TEST(TallyTest, WrongWrongSplitAndNoEligibleCases) {
  const std::vector<int> t{0, 0}, o{1, 1}, d{1, 2};
  const OutcomeTally r = tally_outcomes(t, o, d);
  EXPECT_EQ(r.both_wrong_same, 1u);
  EXPECT_EQ(r.both_wrong_diff, 1u);
  EXPECT_EQ(r.total(), 2u);
  EXPECT_FALSE(r.prediction_accuracy().has_value());
  const std::vector<int> short_v{0};
  EXPECT_THROW(tally_outcomes(t, o, short_v), Error);
}

TEST(TallyTest, RandomCountsSumAndPaInRange) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = gen() % 50 + 1;
    std::vector<int> t(n), o(n), d(n);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = static_cast<int>(gen() % 4);
      o[i] = static_cast<int>(gen() % 4);
      d[i] = static_cast<int>(gen() % 4);
    }
    const OutcomeTally r = tally_outcomes(t, o, d);
    ASSERT_EQ(r.total(), n);
    if (auto pa = r.prediction_accuracy()) {
      ASSERT_GE(*pa, 0.0);
      ASSERT_LE(*pa, 1.0);
    }
  }
}

TEST(IdxTest, ImagesRoundTrip) {
  std::vector<ImageMatrix> imgs;
  for (std::uint64_t i = 0; i < 3; ++i) imgs.push_back(testing::random_image(5, 4, i));
  const std::string data = format_idx_images(imgs);
  EXPECT_EQ(data.size(), 16u + 3 * 20);
  EXPECT_EQ(data.substr(0, 4), std::string("\0\0\x08\x03", 4));
  const auto back = parse_idx_images(data);
  EXPECT_EQ(back, imgs);
  EXPECT_EQ(back[0].width, 5u);
  EXPECT_EQ(back[0].height, 4u);
}

TEST(IdxTest, FormatErrors) {
  std::string data = format_idx_images({ImageMatrix(2, 2)});
  data[3] = 0x01;
  EXPECT_THROW(parse_idx_images(data), Error);
  EXPECT_THROW(parse_idx_images(format_idx_images({ImageMatrix(2, 2)}) + "x"), Error);
  EXPECT_THROW(parse_idx_images("abc"), Error);
}

TEST(IdxTest, LabelsIdxAndText) {
  const std::vector<int> labels{3, 1, 4, 1, 5};
  EXPECT_EQ(parse_labels(format_idx_labels(labels)), labels);
  EXPECT_EQ(parse_labels("3\n1\n 4\n\n1\n5"), labels);
  EXPECT_THROW(parse_labels("3\nx\n"), Error);
}

}  // namespace
}  // namespace pj
