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

// Experiments on top of the codec: partition-mapped vs entire-mapped
// recovery under strand loss, degraded dataset export, and classifier
// outcome tallies.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pj/channel_sim.hpp"
#include "pj/errors.hpp"
#include "pj/image.hpp"
#include "pj/inpaint.hpp"
#include "pj/parallel.hpp"
#include "pj/partition_mapper.hpp"
#include "pj/rng.hpp"
#include "pj/ssim.hpp"

namespace pj {

/// Entire-mapping baseline: strands depend on each other (shared header,
/// cascaded coding), so any loss is a total failure.
inline std::optional<ImageMatrix> em_decode(std::size_t strands_present, std::size_t strands_total,
                                            const ImageMatrix& original) {
  if (strands_present > strands_total) {
    throw Error(ErrorKind::kConfig, "more strands present than exist");
  }
  if (strands_present == strands_total) return original;
  return std::nullopt;
}

/// encode -> drop -> parse survivors -> decode, for one loss draw.
inline RecoveredImage pm_roundtrip(const EncodedLibrary& lib, double loss_rate,
                                   std::uint64_t seed) {
  const StrandCodec codec = lib.manifest.codec();
  const std::vector<bool> keep = survival_flags(lib.strands.size(), loss_rate, seed);
  std::vector<std::string> reads;
  reads.reserve(lib.strands.size());
  for (std::size_t i = 0; i < lib.strands.size(); ++i) {
    if (keep[i]) reads.push_back(lib.strands[i].sequence);
  }
  const ConsensusResult cons = consensus(reads, codec);
  RecoveredImage rec = decode_image(cons.strands, lib.manifest);
  rec.stats.rejected_length = cons.rejected_length;
  rec.stats.rejected_primer = cons.rejected_primer;
  rec.stats.rejected_corrupt = cons.rejected_corrupt;
  return rec;
}

enum class Scheme { kPM, kEM };

struct SweepRow {
  double loss_rate = 0.0;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::kPM;
  double ssim_raw = 0.0;
  std::optional<double> ssim_inpainted;  // empty when inpainting was skipped
  double masked_fraction = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

struct SweepOptions {
  bool inpaint = true;
  EncodeParams encode;
  InpaintParams inpaint_params;
  unsigned threads = 1;
};

/// One PM row and one EM row per (rate, seed). Rates are emitted ascending,
/// seeds in the given order, PM before EM. The same seed reuses the same
/// per-strand draws at every rate, so losses are nested across rates.
inline SweepResult loss_sweep(const ImageMatrix& img, std::vector<double> rates,
                              std::span<const std::uint64_t> seeds, const SweepOptions& opt = {}) {
  for (double r : rates) {
    if (!(r >= 0.0 && r <= 1.0)) throw Error(ErrorKind::kConfig, "loss rate outside [0,1]");
  }
  std::sort(rates.begin(), rates.end());
  const EncodedLibrary lib = encode_image(img, opt.encode);
  const std::size_t n = lib.strands.size();

  SweepResult res;
  res.rows.resize(rates.size() * seeds.size() * 2);
  parallel_for(rates.size() * seeds.size(), opt.threads, [&](std::size_t cell) {
    const double rate = rates[cell / seeds.size()];
    const std::uint64_t seed = seeds[cell % seeds.size()];
    const RecoveredImage rec = pm_roundtrip(lib, rate, seed);

    SweepRow pm{rate, seed, Scheme::kPM, ssim(img, rec.image), std::nullopt,
                rec.masked_fraction()};
    if (opt.inpaint) pm.ssim_inpainted = ssim(img, inpaint(rec.image, rec.missing_mask, opt.inpaint_params));

    const auto em_img = em_decode(rec.stats.recovered, n, img);
    const double em_score = em_img ? ssim(img, *em_img) : 0.0;
    SweepRow em{rate, seed, Scheme::kEM, em_score, std::nullopt, em_img ? 0.0 : 1.0};
    if (opt.inpaint) em.ssim_inpainted = em_score;

    res.rows[2 * cell] = pm;
    res.rows[2 * cell + 1] = em;
  });
  return res;
}

inline std::string format_sweep_csv(const SweepResult& res) {
  std::string out = "loss_rate,seed,scheme,ssim_raw,ssim_inpainted,masked_fraction\n";
  char buf[256];
  for (const SweepRow& r : res.rows) {
    char inp[40] = "";
    if (r.ssim_inpainted) std::snprintf(inp, sizeof inp, "%.9f", *r.ssim_inpainted);
    std::snprintf(buf, sizeof buf, "%.6g,%llu,%s,%.9f,%s,%.9f\n", r.loss_rate,
                  static_cast<unsigned long long>(r.seed), r.scheme == Scheme::kPM ? "PM" : "EM",
                  r.ssim_raw, inp, r.masked_fraction);
    out += buf;
  }
  return out;
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// (rate, median ssim_raw) pairs for one scheme, rates ascending.
inline std::vector<std::pair<double, double>> median_by_rate(const SweepResult& res,
                                                             Scheme scheme) {
  std::vector<std::pair<double, double>> out;
  std::vector<double> bucket;
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    if (res.rows[i].scheme == scheme) bucket.push_back(res.rows[i].ssim_raw);
    const bool last_of_rate =
        i + 1 == res.rows.size() || res.rows[i + 1].loss_rate != res.rows[i].loss_rate;
    if (last_of_rate && !bucket.empty()) {
      out.emplace_back(res.rows[i].loss_rate, median(bucket));
      bucket.clear();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

struct DegradeSummary {
  std::size_t images = 0;
  std::size_t strands_per_image = 0;  // for the first image; all share a shape
  double mean_masked_fraction = 0.0;
  double min_masked_fraction = 0.0;
  double max_masked_fraction = 0.0;
  double stddev_masked_fraction = 0.0;
};

struct DegradedDataset {
  std::vector<ImageMatrix> images;
  std::vector<ImageMatrix> masks;  // 255 where a pixel was lost, else 0
  std::vector<double> masked_fraction;
  DegradeSummary summary;
};

/// Runs every image through its own encode -> drop(rate) -> decode pipeline.
/// Image i draws its losses from derive_seed(seed, i).
inline DegradedDataset degrade_dataset(const std::vector<ImageMatrix>& images, double rate,
                                       std::uint64_t seed, const EncodeParams& params = {}) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw Error(ErrorKind::kConfig, "loss rate outside [0,1]");
  DegradedDataset out;
  out.images.resize(images.size());
  out.masks.resize(images.size());
  out.masked_fraction.resize(images.size());
  EncodeParams per_image = params;
  per_image.threads = 1;
  parallel_for(images.size(), params.threads, [&](std::size_t i) {
    const EncodedLibrary lib = encode_image(images[i], per_image);
    const RecoveredImage rec = pm_roundtrip(lib, rate, derive_seed(seed, i));
    out.images[i] = rec.image;
    ImageMatrix mask(rec.image.width, rec.image.height);
    for (std::size_t p = 0; p < mask.size(); ++p) mask.pixels[p] = rec.missing_mask[p] ? 255 : 0;
    out.masks[i] = std::move(mask);
    out.masked_fraction[i] = rec.masked_fraction();
  });

  DegradeSummary& s = out.summary;
  s.images = images.size();
  if (!images.empty()) {
    const std::size_t tp = params.tile_pixels.value_or(params.cfg.payload_bits() / 8);
    s.strands_per_image = (images.front().size() + tp - 1) / tp;
    double sum = 0.0, sq = 0.0;
    s.min_masked_fraction = 1.0;
    for (double f : out.masked_fraction) {
      sum += f;
      sq += f * f;
      s.min_masked_fraction = std::min(s.min_masked_fraction, f);
      s.max_masked_fraction = std::max(s.max_masked_fraction, f);
    }
    const double n = static_cast<double>(images.size());
    s.mean_masked_fraction = sum / n;
    s.stddev_masked_fraction = std::sqrt(std::max(0.0, sq / n - s.mean_masked_fraction * s.mean_masked_fraction));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct OutcomeTally {
  std::size_t both_correct = 0;
  std::size_t orig_correct_degr_wrong = 0;
  std::size_t orig_wrong_degr_correct = 0;
  std::size_t both_wrong_same = 0;  // same wrong label twice
  std::size_t both_wrong_diff = 0;  // two different wrong labels

  std::size_t total() const {
    return both_correct + orig_correct_degr_wrong + orig_wrong_degr_correct + both_wrong_same +
           both_wrong_diff;
  }

  /// Share of degraded images still classified correctly among those whose
  /// original was classified correctly. Empty when no original was correct.
  std::optional<double> prediction_accuracy() const {
    const std::size_t eligible = both_correct + orig_correct_degr_wrong;
    if (eligible == 0) return std::nullopt;
    return static_cast<double>(both_correct) / static_cast<double>(eligible);
  }

  friend bool operator==(const OutcomeTally&, const OutcomeTally&) = default;
};

inline OutcomeTally tally_outcomes(std::span<const int> truth, std::span<const int> pred_orig,
                                   std::span<const int> pred_degr) {
  if (truth.size() != pred_orig.size() || truth.size() != pred_degr.size()) {
    throw Error(ErrorKind::kShape, "label vectors differ in length");
  }
  OutcomeTally t;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool o = pred_orig[i] == truth[i];
    const bool d = pred_degr[i] == truth[i];
    if (o && d) ++t.both_correct;
    else if (o) ++t.orig_correct_degr_wrong;
    else if (d) ++t.orig_wrong_degr_correct;
    else if (pred_orig[i] == pred_degr[i]) ++t.both_wrong_same;
    else ++t.both_wrong_diff;
  }
  return t;
}

}  // namespace pj
