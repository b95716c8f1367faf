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

// Full strand layout:
//
//   5' primer | index region | payload region | [linker] | 3' primer
//
// Index and payload form one jump-rotating stream whose first rotating slot
// looks back at the last 5' primer base. The one-base linker is only present
// for schedules whose data region can end in a run that would merge with the
// 3' primer into an over-long homopolymer; it never carries data.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pj/bits.hpp"
#include "pj/errors.hpp"
#include "pj/jr_codec.hpp"
#include "pj/nucleotide.hpp"

namespace pj {

// Repeat-free, roughly 50% GC, no reverse-complementary 6-mers within a primer.
inline constexpr std::string_view kDefaultPrimer5 = "ATCAGAGAGACTAGCTGTAC";
inline constexpr std::string_view kDefaultPrimer3 = "AGACGAGATCACGTAGATCGA";

struct StrandLayout {
  std::string primer5{kDefaultPrimer5};
  std::string primer3{kDefaultPrimer3};
  std::size_t index_nt = 10;
  std::size_t payload_nt = 90;
  /// Maximum Hamming distance accepted over both primers (and the linker).
  unsigned primer_tolerance = 0;

  friend bool operator==(const StrandLayout&, const StrandLayout&) = default;
};

/// Layout that matches a config's payload size, with default primers.
inline StrandLayout default_layout_for(const JrConfig& cfg) {
  StrandLayout l;
  l.payload_nt = cfg.payload_nt();
  return l;
}

struct Strand {
  std::uint64_t index_value = 0;
  Bits payload_bits;
  std::string sequence;
};

enum class RejectReason { kLength, kPrimer, kCorrupt };

inline std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::kLength: return "length";
    case RejectReason::kPrimer: return "primer";
    case RejectReason::kCorrupt: return "corrupt";
  }
  return "unknown";
}

struct ParsedStrand {
  std::uint64_t index_value = 0;
  std::vector<Block> payload_blocks;
};

struct ParseOutcome {
  std::optional<ParsedStrand> strand;
  RejectReason reason = RejectReason::kCorrupt;  // meaningful only when !strand
  std::string detail;

  bool accepted() const { return strand.has_value(); }
};

/// A validated (layout, config) pair. Construction checks every layout
/// invariant so assemble/parse can stay branch-light.
class StrandCodec {
 public:
  StrandCodec(StrandLayout layout, JrConfig cfg)
      : layout_(std::move(layout)), cfg_(std::move(cfg)) {
    cfg_.validate();
    const std::size_t gs = cfg_.group_size();
    if (layout_.index_nt == 0 || layout_.index_nt % gs != 0) {
      throw Error(ErrorKind::kLayout, "index_nt " + std::to_string(layout_.index_nt) +
                                          " is not a positive multiple of group size " +
                                          std::to_string(gs));
    }
    if (layout_.payload_nt != cfg_.payload_nt()) {
      throw Error(ErrorKind::kLayout,
                  "payload_nt " + std::to_string(layout_.payload_nt) + " != " +
                      std::to_string(cfg_.groups_per_payload) + " groups of " +
                      std::to_string(gs));
    }
    index_blocks_ = layout_.index_nt / gs;
    if (index_blocks_ * cfg_.bits_per_block > 62) {
      throw Error(ErrorKind::kLayout, "index region wider than 62 bits");
    }
    const std::size_t bound = cfg_.jump_length + 1;
    for (const std::string* p : {&layout_.primer5, &layout_.primer3}) {
      if (!is_acgt(*p)) throw Error(ErrorKind::kLayout, "primer '" + *p + "' is not ACGT");
      if (max_homopolymer_run(*p) > bound) {
        throw Error(ErrorKind::kLayout, "primer '" + *p + "' has a homopolymer run over " +
                                            std::to_string(bound));
      }
    }
    std::size_t lead_direct = 0;
    while (cfg_.group_radices[lead_direct] == 4) ++lead_direct;
    std::size_t trail_direct = 0;
    while (cfg_.group_radices[gs - 1 - trail_direct] == 4) ++trail_direct;
    if (trailing_run(layout_.primer5) + lead_direct > bound) {
      throw Error(ErrorKind::kLayout,
                  "5' primer junction can form a homopolymer run over " + std::to_string(bound));
    }
    linker_ = !layout_.primer3.empty() &&
              trail_direct + 1 + leading_run(layout_.primer3) > bound;
    prev_init_ = layout_.primer5.empty() ? Nucleotide::A
                                         : *from_char(layout_.primer5.back());
  }

  const StrandLayout& layout() const { return layout_; }
  const JrConfig& config() const { return cfg_; }

  std::size_t index_blocks() const { return index_blocks_; }
  std::size_t payload_blocks() const { return cfg_.groups_per_payload; }
  unsigned index_bits() const {
    return static_cast<unsigned>(index_blocks_ * cfg_.bits_per_block);
  }
  std::size_t payload_bits() const { return cfg_.payload_bits(); }
  std::uint64_t index_capacity() const { return std::uint64_t{1} << index_bits(); }
  bool has_linker() const { return linker_; }
  std::size_t data_nt() const { return layout_.index_nt + layout_.payload_nt; }
  std::size_t strand_length() const {
    return layout_.primer5.size() + data_nt() + (linker_ ? 1 : 0) + layout_.primer3.size();
  }

  Strand assemble(std::uint64_t index_value, const Bits& payload) const {
    if (payload.size() != payload_bits()) {
      throw Error(ErrorKind::kShape, "payload has " + std::to_string(payload.size()) +
                                         " bits, layout carries " +
                                         std::to_string(payload_bits()));
    }
    Strand s;
    s.index_value = index_value;
    s.payload_bits = payload;
    s.sequence = assemble_blocks(index_value, bits_to_blocks(payload, cfg_.bits_per_block));
    return s;
  }

  std::string assemble_blocks(std::uint64_t index_value,
                              const std::vector<Block>& payload) const {
    if (index_value >= index_capacity()) {
      throw Error(ErrorKind::kCapacity, "index " + std::to_string(index_value) +
                                            " exceeds " + std::to_string(index_bits()) +
                                            "-bit index space");
    }
    if (payload.size() != payload_blocks()) {
      throw Error(ErrorKind::kShape, "expected " + std::to_string(payload_blocks()) +
                                         " payload blocks, got " +
                                         std::to_string(payload.size()));
    }
    std::vector<Block> blocks;
    blocks.reserve(index_blocks_ + payload.size());
    const Block mask = static_cast<Block>(cfg_.block_limit() - 1);
    for (std::size_t i = index_blocks_; i-- > 0;) {
      blocks.push_back(static_cast<Block>(index_value >> (i * cfg_.bits_per_block)) & mask);
    }
    blocks.insert(blocks.end(), payload.begin(), payload.end());

    std::string seq;
    seq.reserve(strand_length());
    seq += layout_.primer5;
    seq += jr_encode_stream(blocks, cfg_, prev_init_);
    if (linker_) seq.push_back(linker_for(seq.back()));
    seq += layout_.primer3;
    return seq;
  }

  ParseOutcome parse(std::string_view seq) const {
    ParseOutcome out;
    if (seq.size() != strand_length()) {
      out.reason = RejectReason::kLength;
      out.detail = "length " + std::to_string(seq.size()) + " != " +
                   std::to_string(strand_length());
      return out;
    }
    const std::size_t p5 = layout_.primer5.size();
    const std::size_t data_end = p5 + data_nt();
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < p5; ++i) mismatches += seq[i] != layout_.primer5[i];
    std::size_t tail = data_end;
    if (linker_) {
      mismatches += seq[tail] != linker_for(seq[data_end - 1]);
      ++tail;
    }
    for (std::size_t i = 0; i < layout_.primer3.size(); ++i) {
      mismatches += seq[tail + i] != layout_.primer3[i];
    }
    if (mismatches > layout_.primer_tolerance) {
      out.reason = RejectReason::kPrimer;
      out.detail = std::to_string(mismatches) + " primer mismatches";
      return out;
    }
    const std::string_view data = seq.substr(p5, data_nt());
    if (!is_acgt(data)) {
      out.reason = RejectReason::kCorrupt;
      out.detail = "non-ACGT base in data region";
      return out;
    }
    StreamDecodeResult dec = jr_decode_stream(data, cfg_, prev_init_);
    if (!dec.ok()) {
      out.reason = RejectReason::kCorrupt;
      const auto& c = *dec.corruption;
      out.detail = (c.kind == StreamCorruption::Kind::kRotatingViolation
                        ? "rotating violation at data offset "
                        : "out-of-range block at data offset ") +
                   std::to_string(c.nt_offset);
      return out;
    }
    ParsedStrand ps;
    for (std::size_t i = 0; i < index_blocks_; ++i) {
      ps.index_value = (ps.index_value << cfg_.bits_per_block) | dec.blocks[i];
    }
    ps.payload_blocks.assign(dec.blocks.begin() + static_cast<std::ptrdiff_t>(index_blocks_),
                             dec.blocks.end());
    out.strand = std::move(ps);
    return out;
  }

 private:
  char linker_for(char last_data) const {
    for (char c : kNucleotideChars) {
      if (c != last_data && c != layout_.primer3.front()) return c;
    }
    return 'A';  // unreachable: four symbols, two exclusions
  }

  StrandLayout layout_;
  JrConfig cfg_;
  std::size_t index_blocks_ = 0;
  bool linker_ = false;
  Nucleotide prev_init_ = Nucleotide::A;
};

inline Strand assemble_strand(std::uint64_t index_value, const Bits& payload,
                              const StrandLayout& layout, const JrConfig& cfg) {
  return StrandCodec(layout, cfg).assemble(index_value, payload);
}

inline ParseOutcome parse_strand(std::string_view seq, const StrandLayout& layout,
                                 const JrConfig& cfg) {
  return StrandCodec(layout, cfg).parse(seq);
}

}  // namespace pj
