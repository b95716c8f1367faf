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

// Partition mapping: a file is cut into fixed-size tiles and every tile is
// carried by exactly one strand whose index is the tile number. Nothing in a
// payload refers to any other strand, so a lost strand costs exactly its own
// tile. Geometry and codec parameters live in a JSON sidecar manifest.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pj/bits.hpp"
#include "pj/errors.hpp"
#include "pj/image.hpp"
#include "pj/io.hpp"
#include "pj/jr_codec.hpp"
#include "pj/parallel.hpp"
#include "pj/strand_layout.hpp"

namespace pj {

enum class MappingMode { kImage, kRaw };

struct TileManifest {
  MappingMode mode = MappingMode::kImage;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t tile_pixels = 0;    // image mode only
  std::uint64_t total_bits = 0;   // raw mode only
  JrConfig cfg = default_jr_config();
  StrandLayout layout;
  std::size_t pad_bits_per_tile = 0;
  std::size_t strand_count = 0;

  /// Checks every cross-field invariant and returns the bound strand codec.
  StrandCodec codec() const {
    StrandCodec codec(layout, cfg);
    const std::size_t capacity = codec.payload_bits();
    std::size_t expected_strands = 0;
    if (mode == MappingMode::kImage) {
      if (tile_pixels == 0 || tile_pixels * 8 > capacity) {
        throw Error(ErrorKind::kConfig, "tile_pixels " + std::to_string(tile_pixels) +
                                            " does not fit a " + std::to_string(capacity) +
                                            "-bit payload");
      }
      if (pad_bits_per_tile != capacity - 8 * tile_pixels) {
        throw Error(ErrorKind::kConfig, "pad_bits_per_tile inconsistent with tile_pixels");
      }
      if (total_bits != 0) throw Error(ErrorKind::kConfig, "total_bits is raw-mode only");
      expected_strands = (width * height + tile_pixels - 1) / tile_pixels;
    } else {
      if (tile_pixels != 0 || width != 0 || height != 0 || pad_bits_per_tile != 0) {
        throw Error(ErrorKind::kConfig, "raw manifest carries image geometry");
      }
      expected_strands = static_cast<std::size_t>((total_bits + capacity - 1) / capacity);
    }
    if (strand_count != expected_strands) {
      throw Error(ErrorKind::kConfig, "strand_count " + std::to_string(strand_count) +
                                          " != " + std::to_string(expected_strands));
    }
    if (strand_count > codec.index_capacity()) {
      throw Error(ErrorKind::kCapacity, std::to_string(strand_count) + " strands exceed the " +
                                            std::to_string(codec.index_bits()) +
                                            "-bit index space");
    }
    return codec;
  }

  friend bool operator==(const TileManifest&, const TileManifest&) = default;
};

struct EncodeParams {
  JrConfig cfg = default_jr_config();
  std::string primer5{kDefaultPrimer5};
  std::string primer3{kDefaultPrimer3};
  std::size_t index_nt = 10;
  /// Defaults to as many whole pixels as the payload holds (20 for 2-jump).
  std::optional<std::size_t> tile_pixels;
  unsigned threads = 1;

  StrandLayout layout() const {
    StrandLayout l = default_layout_for(cfg);
    l.primer5 = primer5;
    l.primer3 = primer3;
    l.index_nt = index_nt;
    return l;
  }
};

struct EncodedLibrary {
  std::vector<Strand> strands;
  TileManifest manifest;
};

struct DecodeStats {
  std::size_t expected = 0;
  std::size_t recovered = 0;
  std::size_t stray = 0;       // index >= strand_count
  std::size_t duplicates = 0;  // repeated index; the later entry wins
  std::size_t rejected_length = 0;
  std::size_t rejected_primer = 0;
  std::size_t rejected_corrupt = 0;
  std::size_t skipped_alphabet = 0;
};

struct RecoveredImage {
  ImageMatrix image;
  PixelMask missing_mask;
  DecodeStats stats;

  double masked_fraction() const {
    if (missing_mask.empty()) return 0.0;
    return static_cast<double>(std::count(missing_mask.begin(), missing_mask.end(), true)) /
           static_cast<double>(missing_mask.size());
  }
};

inline EncodedLibrary encode_image(const ImageMatrix& img, const EncodeParams& params = {}) {
  if (img.pixels.size() != img.width * img.height) {
    throw Error(ErrorKind::kShape, "pixel buffer does not match image dimensions");
  }
  EncodedLibrary lib;
  TileManifest& m = lib.manifest;
  m.mode = MappingMode::kImage;
  m.width = img.width;
  m.height = img.height;
  m.cfg = params.cfg;
  m.layout = params.layout();
  const std::size_t capacity = params.cfg.payload_bits();
  m.tile_pixels = params.tile_pixels.value_or(capacity / 8);
  if (m.tile_pixels == 0 || m.tile_pixels * 8 > capacity) {
    throw Error(ErrorKind::kConfig, "tile_pixels " + std::to_string(m.tile_pixels) +
                                        " does not fit a " + std::to_string(capacity) +
                                        "-bit payload");
  }
  m.pad_bits_per_tile = capacity - 8 * m.tile_pixels;
  m.strand_count = (img.size() + m.tile_pixels - 1) / m.tile_pixels;
  const StrandCodec codec = m.codec();

  lib.strands.resize(m.strand_count);
  parallel_for(m.strand_count, params.threads, [&](std::size_t t) {
    Bits payload;
    payload.reserve(capacity);
    for (std::size_t k = 0; k < m.tile_pixels; ++k) {
      const std::size_t p = t * m.tile_pixels + k;
      append_uint(payload, p < img.size() ? img.pixels[p] : 0, 8);
    }
    payload.resize(capacity, false);
    lib.strands[t] = codec.assemble(t, payload);
  });
  return lib;
}

/// Rebuilds the image from whatever tiles arrived. Never fails on loss:
/// absent tiles stay zero and are flagged in the mask.
inline RecoveredImage decode_image(std::span<const ParsedStrand> accepted,
                                   const TileManifest& manifest) {
  if (manifest.mode != MappingMode::kImage) {
    throw Error(ErrorKind::kConfig, "manifest is not in image mode");
  }
  const StrandCodec codec = manifest.codec();
  const std::size_t n_px = manifest.width * manifest.height;
  RecoveredImage out;
  out.image = ImageMatrix(manifest.width, manifest.height);
  out.missing_mask.assign(n_px, true);
  out.stats.expected = manifest.strand_count;

  std::vector<bool> seen(manifest.strand_count, false);
  for (const ParsedStrand& ps : accepted) {
    if (ps.index_value >= manifest.strand_count) {
      ++out.stats.stray;
      continue;
    }
    const auto t = static_cast<std::size_t>(ps.index_value);
    if (seen[t]) {
      ++out.stats.duplicates;
    } else {
      seen[t] = true;
      ++out.stats.recovered;
    }
    const Bits bits = blocks_to_bits(ps.payload_blocks, manifest.cfg.bits_per_block);
    for (std::size_t k = 0; k < manifest.tile_pixels; ++k) {
      const std::size_t p = t * manifest.tile_pixels + k;
      if (p >= n_px) break;
      out.image.pixels[p] = static_cast<std::uint8_t>(read_uint(bits, k * 8, 8));
      out.missing_mask[p] = false;
    }
  }
  return out;
}

inline EncodedLibrary encode_raw(std::span<const std::uint8_t> bytes,
                                 const EncodeParams& params = {}) {
  EncodedLibrary lib;
  TileManifest& m = lib.manifest;
  m.mode = MappingMode::kRaw;
  m.tile_pixels = 0;
  m.cfg = params.cfg;
  m.layout = params.layout();
  m.total_bits = static_cast<std::uint64_t>(bytes.size()) * 8;
  const std::size_t capacity = params.cfg.payload_bits();
  m.strand_count = static_cast<std::size_t>((m.total_bits + capacity - 1) / capacity);
  const StrandCodec codec = m.codec();

  const Bits all = bytes_to_bits(bytes);
  lib.strands.resize(m.strand_count);
  parallel_for(m.strand_count, params.threads, [&](std::size_t t) {
    Bits payload(capacity, false);
    for (std::size_t k = 0; k < capacity && t * capacity + k < all.size(); ++k) {
      payload[k] = all[t * capacity + k];
    }
    lib.strands[t] = codec.assemble(t, payload);
  });
  return lib;
}

struct RecoveredBytes {
  std::vector<std::uint8_t> bytes;
  Bits missing_bits;  // one flag per stored bit; true inside a lost block
  DecodeStats stats;
};

inline RecoveredBytes decode_raw(std::span<const ParsedStrand> accepted,
                                 const TileManifest& manifest) {
  if (manifest.mode != MappingMode::kRaw) {
    throw Error(ErrorKind::kConfig, "manifest is not in raw mode");
  }
  const StrandCodec codec = manifest.codec();
  const std::size_t capacity = codec.payload_bits();
  const auto total = static_cast<std::size_t>(manifest.total_bits);
  Bits bits(total, false);
  RecoveredBytes out;
  out.missing_bits.assign(total, true);
  out.stats.expected = manifest.strand_count;
  std::vector<bool> seen(manifest.strand_count, false);
  for (const ParsedStrand& ps : accepted) {
    if (ps.index_value >= manifest.strand_count) {
      ++out.stats.stray;
      continue;
    }
    const auto t = static_cast<std::size_t>(ps.index_value);
    if (seen[t]) {
      ++out.stats.duplicates;
    } else {
      seen[t] = true;
      ++out.stats.recovered;
    }
    const Bits payload = blocks_to_bits(ps.payload_blocks, manifest.cfg.bits_per_block);
    for (std::size_t k = 0; k < capacity && t * capacity + k < total; ++k) {
      bits[t * capacity + k] = payload[k];
      out.missing_bits[t * capacity + k] = false;
    }
  }
  out.bytes = bits_to_bytes(bits);
  return out;
}

// ---------------------------------------------------------------------------
// Manifest JSON. Keys are closed: anything unrecognised is a config error.

namespace detail {

inline void require_keys(const nlohmann::json& j, std::string_view where,
                         std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) {
    throw Error(ErrorKind::kConfig, std::string(where) + " must be a JSON object");
  }
  for (const auto& item : j.items()) {
    if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) {
      throw Error(ErrorKind::kConfig,
                  "unknown key '" + item.key() + "' in " + std::string(where));
    }
  }
  for (std::string_view k : keys) {
    if (!j.contains(std::string(k))) {
      throw Error(ErrorKind::kConfig,
                  "missing key '" + std::string(k) + "' in " + std::string(where));
    }
  }
}

}  // namespace detail

inline nlohmann::json config_to_json(const JrConfig& cfg) {
  return {{"name", cfg.name},
          {"group_radices", cfg.group_radices},
          {"bits_per_block", cfg.bits_per_block},
          {"groups_per_payload", cfg.groups_per_payload},
          {"jump_length", cfg.jump_length}};
}

inline JrConfig config_from_json(const nlohmann::json& j) {
  detail::require_keys(j, "config",
                       {"name", "group_radices", "bits_per_block", "groups_per_payload",
                        "jump_length"});
  try {
    JrConfig cfg{j.at("name").get<std::string>(), j.at("group_radices").get<std::vector<int>>(),
                 j.at("bits_per_block").get<unsigned>(),
                 j.at("groups_per_payload").get<unsigned>(), j.at("jump_length").get<unsigned>()};
    cfg.validate();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("config: ") + e.what());
  }
}

inline nlohmann::json manifest_to_json(const TileManifest& m) {
  return {{"mode", m.mode == MappingMode::kImage ? "image" : "raw"},
          {"width", m.width},
          {"height", m.height},
          {"tile_pixels", m.tile_pixels},
          {"total_bits", m.total_bits},
          {"config", config_to_json(m.cfg)},
          {"layout",
           {{"primer5", m.layout.primer5},
            {"primer3", m.layout.primer3},
            {"index_nt", m.layout.index_nt},
            {"payload_nt", m.layout.payload_nt},
            {"primer_tolerance", m.layout.primer_tolerance}}},
          {"pad_bits_per_tile", m.pad_bits_per_tile},
          {"strand_count", m.strand_count}};
}

inline TileManifest manifest_from_json(const nlohmann::json& j) {
  detail::require_keys(j, "manifest",
                       {"mode", "width", "height", "tile_pixels", "total_bits", "config", "layout",
                        "pad_bits_per_tile", "strand_count"});
  TileManifest m;
  try {
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "image") {
      m.mode = MappingMode::kImage;
    } else if (mode == "raw") {
      m.mode = MappingMode::kRaw;
    } else {
      throw Error(ErrorKind::kConfig, "unknown manifest mode '" + mode + "'");
    }
    m.width = j.at("width").get<std::size_t>();
    m.height = j.at("height").get<std::size_t>();
    m.tile_pixels = j.at("tile_pixels").get<std::size_t>();
    m.total_bits = j.at("total_bits").get<std::uint64_t>();
    m.cfg = config_from_json(j.at("config"));
    const auto& l = j.at("layout");
    detail::require_keys(l, "layout",
                         {"primer5", "primer3", "index_nt", "payload_nt", "primer_tolerance"});
    m.layout.primer5 = l.at("primer5").get<std::string>();
    m.layout.primer3 = l.at("primer3").get<std::string>();
    m.layout.index_nt = l.at("index_nt").get<std::size_t>();
    m.layout.payload_nt = l.at("payload_nt").get<std::size_t>();
    m.layout.primer_tolerance = l.at("primer_tolerance").get<unsigned>();
    m.pad_bits_per_tile = j.at("pad_bits_per_tile").get<std::size_t>();
    m.strand_count = j.at("strand_count").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("manifest: ") + e.what());
  }
  (void)m.codec();
  return m;
}

inline TileManifest read_manifest(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kFormat, "manifest '" + path.string() + "': " + e.what());
  }
  return manifest_from_json(j);
}

inline void write_manifest(const TileManifest& m, const std::filesystem::path& path) {
  write_file_atomic(path, manifest_to_json(m).dump(2) + "\n");
}

}  // namespace pj
