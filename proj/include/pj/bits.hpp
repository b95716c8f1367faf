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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pj/errors.hpp"
#include "pj/jr_codec.hpp"

namespace pj {

/// Bit strings are MSB-first everywhere: bytes, blocks and index values.
using Bits = std::vector<bool>;

inline void append_uint(Bits& out, std::uint64_t value, unsigned width) {
  for (unsigned i = width; i-- > 0;) out.push_back(((value >> i) & 1u) != 0);
}

inline std::uint64_t read_uint(const Bits& bits, std::size_t offset, unsigned width) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i) v = (v << 1) | (bits[offset + i] ? 1u : 0u);
  return v;
}

inline Bits bytes_to_bits(std::span<const std::uint8_t> bytes) {
  Bits out;
  out.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes) append_uint(out, b, 8);
  return out;
}

/// Trailing bits that do not fill a byte are dropped.
inline std::vector<std::uint8_t> bits_to_bytes(const Bits& bits) {
  std::vector<std::uint8_t> out(bits.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(read_uint(bits, i * 8, 8));
  }
  return out;
}

inline std::vector<Block> bits_to_blocks(const Bits& bits, unsigned bits_per_block) {
  if (bits.size() % bits_per_block != 0) {
    throw Error(ErrorKind::kShape, std::to_string(bits.size()) +
                                       " bits do not split into blocks of " +
                                       std::to_string(bits_per_block));
  }
  std::vector<Block> blocks(bits.size() / bits_per_block);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    blocks[i] = static_cast<Block>(read_uint(bits, i * bits_per_block, bits_per_block));
  }
  return blocks;
}

inline Bits blocks_to_bits(std::span<const Block> blocks, unsigned bits_per_block) {
  Bits out;
  out.reserve(blocks.size() * bits_per_block);
  for (Block b : blocks) append_uint(out, b, bits_per_block);
  return out;
}

}  // namespace pj
