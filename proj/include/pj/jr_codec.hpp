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

// Hybrid-base jump-rotating code.
//
// A bit block is written as a mixed-radix number whose digit radices follow
// the config's group pattern. Radix-4 digits map straight onto a nucleotide
// (direct rule); radix-3 digits pick one of the three nucleotides that differ
// from the previously emitted one (rotating rule). With at most n consecutive
// radix-4 positions in the tiled pattern, no homopolymer exceeds n + 1.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pj/errors.hpp"
#include "pj/nucleotide.hpp"

namespace pj {

using Block = std::uint32_t;

/// Maximum run of radix-4 entries when the pattern is tiled indefinitely.
/// Returns nullopt when the pattern has no radix-3 entry (unbounded run).
inline std::optional<unsigned> tiled_jump_length(std::span<const int> radices) {
  const std::size_t n = radices.size();
  std::size_t first_rotating = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (radices[i] == 3) {
      first_rotating = i;
      break;
    }
  }
  if (first_rotating == n) return std::nullopt;
  // Walk one full period starting right after a rotating slot.
  unsigned best = 0;
  unsigned run = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (radices[(first_rotating + k) % n] == 4) {
      best = std::max(best, ++run);
    } else {
      run = 0;
    }
  }
  return best;
}

struct JrConfig {
  std::string name;
  std::vector<int> group_radices;
  unsigned bits_per_block = 0;
  unsigned groups_per_payload = 0;
  unsigned jump_length = 0;

  std::size_t group_size() const { return group_radices.size(); }

  /// Product of the group radices: number of distinct digit groups.
  std::uint64_t capacity() const {
    std::uint64_t p = 1;
    for (int r : group_radices) p *= static_cast<std::uint64_t>(r);
    return p;
  }

  std::uint64_t block_limit() const { return std::uint64_t{1} << bits_per_block; }

  std::size_t payload_nt() const { return group_size() * groups_per_payload; }
  std::size_t payload_bits() const {
    return static_cast<std::size_t>(bits_per_block) * groups_per_payload;
  }

  void validate() const {
    if (group_radices.empty() || group_radices.size() > 24) {
      throw Error(ErrorKind::kConfig, "group_radices must hold 1..24 entries");
    }
    for (int r : group_radices) {
      if (r != 3 && r != 4) {
        throw Error(ErrorKind::kConfig,
                    "radix " + std::to_string(r) + " is neither 3 nor 4");
      }
    }
    auto jump = tiled_jump_length(group_radices);
    if (!jump) {
      throw Error(ErrorKind::kConfig, "group_radices needs at least one radix-3 slot");
    }
    if (*jump != jump_length) {
      throw Error(ErrorKind::kConfig,
                  "jump_length " + std::to_string(jump_length) +
                      " does not match radix pattern (" + std::to_string(*jump) + ")");
    }
    if (bits_per_block == 0 || bits_per_block > 31 || block_limit() > capacity()) {
      throw Error(ErrorKind::kConfig,
                  "bits_per_block " + std::to_string(bits_per_block) +
                      " not representable by the radix pattern");
    }
    if (groups_per_payload == 0) {
      throw Error(ErrorKind::kConfig, "groups_per_payload must be positive");
    }
  }

  friend bool operator==(const JrConfig&, const JrConfig&) = default;
};

/// The 2-jump layout: 4x3x4x4x3 = 576 patterns carrying 9 bits per 5 nt.
inline JrConfig default_jr_config() {
  return JrConfig{"2-jump", {4, 3, 4, 4, 3}, 9, 18, 2};
}

/// Built-in schedules. All use 10-nt-compatible groups so the 10-nt index
/// region and 90-nt payload region are whole numbers of groups.
///   0-jump: ten rotating slots, 3^10 = 59049 >= 2^15
///   1-jump: (3,4) x 5,        12^5 = 248832 >= 2^17
///   2-jump: (4,3,4,4,3),      576 >= 2^9
inline JrConfig jr_preset(unsigned jump) {
  switch (jump) {
    case 0:
      return JrConfig{"0-jump", std::vector<int>(10, 3), 15, 9, 0};
    case 1:
      return JrConfig{"1-jump", {3, 4, 3, 4, 3, 4, 3, 4, 3, 4}, 17, 9, 1};
    case 2:
      return default_jr_config();
    default:
      throw Error(ErrorKind::kConfig, "no preset for jump length " + std::to_string(jump));
  }
}

struct DigitGroup {
  std::vector<std::uint8_t> digits;
  friend bool operator==(const DigitGroup&, const DigitGroup&) = default;
};

/// Most-significant-first mixed-radix digits of `value`.
inline DigitGroup block_to_digits(std::uint64_t value, const JrConfig& cfg) {
  if (value >= cfg.block_limit()) {
    throw Error(ErrorKind::kRange, "block value " + std::to_string(value) +
                                       " exceeds 2^" + std::to_string(cfg.bits_per_block));
  }
  DigitGroup g;
  g.digits.resize(cfg.group_size());
  for (std::size_t i = cfg.group_size(); i-- > 0;) {
    const auto r = static_cast<std::uint64_t>(cfg.group_radices[i]);
    g.digits[i] = static_cast<std::uint8_t>(value % r);
    value /= r;
  }
  return g;
}

struct BlockValue {
  std::uint64_t value = 0;
  bool out_of_range = false;  // value >= 2^bits_per_block
};

inline BlockValue digits_to_block(const DigitGroup& group, const JrConfig& cfg) {
  if (group.digits.size() != cfg.group_size()) {
    throw Error(ErrorKind::kShape, "digit group length " +
                                       std::to_string(group.digits.size()) + " != " +
                                       std::to_string(cfg.group_size()));
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < group.digits.size(); ++i) {
    const int r = cfg.group_radices[i];
    if (group.digits[i] >= r) {
      throw Error(ErrorKind::kRange, "malformed digit " + std::to_string(group.digits[i]) +
                                         " at slot " + std::to_string(i) + " (radix " +
                                         std::to_string(r) + ")");
    }
    v = v * static_cast<std::uint64_t>(r) + group.digits[i];
  }
  return {v, v >= cfg.block_limit()};
}

constexpr Nucleotide direct_encode(unsigned digit) {
  return static_cast<Nucleotide>(digit & 3u);
}

constexpr unsigned direct_decode(Nucleotide nt) { return static_cast<unsigned>(nt); }

/// The digit-th successor of `prev` in the cycle A->C->G->T->A.
inline Nucleotide rotate_encode(unsigned digit, Nucleotide prev) {
  if (digit > 2) {
    throw Error(ErrorKind::kRange, "rotating digit " + std::to_string(digit) + " > 2");
  }
  return static_cast<Nucleotide>((static_cast<unsigned>(prev) + 1 + digit) % 4);
}

/// nullopt when nt == prev, which the rotating rule never produces.
constexpr std::optional<unsigned> rotate_decode(Nucleotide nt, Nucleotide prev) {
  if (nt == prev) return std::nullopt;
  return (static_cast<unsigned>(nt) + 3 - static_cast<unsigned>(prev)) % 4;
}

/// Encodes blocks as one continuous stream; rotating slots always look at the
/// nucleotide emitted just before them, across group boundaries.
inline std::string jr_encode_stream(std::span<const Block> blocks, const JrConfig& cfg,
                                    Nucleotide prev_init = Nucleotide::A) {
  std::string out;
  out.reserve(blocks.size() * cfg.group_size());
  Nucleotide prev = prev_init;
  for (Block b : blocks) {
    const DigitGroup g = block_to_digits(b, cfg);
    for (std::size_t i = 0; i < g.digits.size(); ++i) {
      prev = cfg.group_radices[i] == 3 ? rotate_encode(g.digits[i], prev)
                                       : direct_encode(g.digits[i]);
      out.push_back(to_char(prev));
    }
  }
  return out;
}

struct StreamCorruption {
  enum class Kind { kRotatingViolation, kOutOfRange };
  Kind kind;
  std::size_t nt_offset;  // 0-based offset of the offending nucleotide / group start
  std::size_t block;      // index of the affected block
};

struct StreamDecodeResult {
  std::vector<Block> blocks;
  std::optional<StreamCorruption> corruption;

  bool ok() const { return !corruption.has_value(); }
};

/// Inverse of jr_encode_stream. Stops at the first corruption; `blocks` then
/// holds the blocks decoded before it.
inline StreamDecodeResult jr_decode_stream(std::string_view seq, const JrConfig& cfg,
                                           Nucleotide prev_init = Nucleotide::A) {
  const std::size_t gs = cfg.group_size();
  if (seq.size() % gs != 0) {
    throw Error(ErrorKind::kFormat, "framing: stream length " + std::to_string(seq.size()) +
                                        " is not a multiple of group size " +
                                        std::to_string(gs));
  }
  StreamDecodeResult res;
  res.blocks.reserve(seq.size() / gs);
  Nucleotide prev = prev_init;
  const std::uint64_t limit = cfg.block_limit();
  for (std::size_t b = 0; b * gs < seq.size(); ++b) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < gs; ++i) {
      const std::size_t pos = b * gs + i;
      const Nucleotide nt = nucleotide_at(seq, pos);
      const int r = cfg.group_radices[i];
      unsigned digit;
      if (r == 3) {
        auto d = rotate_decode(nt, prev);
        if (!d) {
          res.corruption = StreamCorruption{StreamCorruption::Kind::kRotatingViolation, pos, b};
          return res;
        }
        digit = *d;
      } else {
        digit = direct_decode(nt);
      }
      v = v * static_cast<std::uint64_t>(r) + digit;
      prev = nt;
    }
    if (v >= limit) {
      res.corruption = StreamCorruption{StreamCorruption::Kind::kOutOfRange, b * gs, b};
      return res;
    }
    res.blocks.push_back(static_cast<Block>(v));
  }
  return res;
}

}  // namespace pj
