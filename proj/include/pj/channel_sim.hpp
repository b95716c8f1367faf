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

// Storage channel model: whole-strand dropout, per-base substitution /
// insertion / deletion, read replication, and block-level consensus.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pj/errors.hpp"
#include "pj/jr_codec.hpp"
#include "pj/nucleotide.hpp"
#include "pj/rng.hpp"
#include "pj/strand_layout.hpp"

namespace pj {

enum class CoverageModel { kFixed, kPoisson };

struct ChannelProfile {
  std::string name = "custom";
  double dropout_p = 0.0;
  double sub_p = 0.0;
  double ins_p = 0.0;
  double del_p = 0.0;
  double coverage_mean = 1.0;
  CoverageModel coverage_model = CoverageModel::kFixed;
  std::uint64_t seed = 0;
  /// "nominal" for rates that are defined exactly, "artifact-estimate" for
  /// stand-in rates that were not measured.
  std::string provenance = "nominal";

  void validate() const {
    for (double p : {dropout_p, sub_p, ins_p, del_p}) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorKind::kConfig, "channel probability outside [0,1]");
      }
    }
    if (!(coverage_mean >= 0.0) || !std::isfinite(coverage_mean)) {
      throw Error(ErrorKind::kConfig, "coverage_mean must be finite and >= 0");
    }
  }

  friend bool operator==(const ChannelProfile&, const ChannelProfile&) = default;
};

inline ChannelProfile preset(std::string_view name) {
  ChannelProfile p;
  p.name = std::string(name);
  p.coverage_mean = 10.0;
  if (name == "clean") {
  } else if (name == "loss10") {
    p.dropout_p = 0.10;
  } else if (name == "aging95C") {
    p.dropout_p = 0.15;
    p.sub_p = 0.005;
    p.provenance = "artifact-estimate";
  } else if (name == "xray") {
    p.dropout_p = 0.05;
    p.sub_p = 0.02;
    p.provenance = "artifact-estimate";
  } else {
    throw Error(ErrorKind::kConfig, "unknown channel preset '" + std::string(name) + "'");
  }
  return p;
}

inline nlohmann::json profile_to_json(const ChannelProfile& p) {
  return {{"name", p.name},
          {"dropout_p", p.dropout_p},
          {"sub_p", p.sub_p},
          {"ins_p", p.ins_p},
          {"del_p", p.del_p},
          {"coverage_mean", p.coverage_mean},
          {"coverage_model", p.coverage_model == CoverageModel::kFixed ? "fixed" : "poisson"},
          {"seed", p.seed},
          {"provenance", p.provenance}};
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline ChannelProfile profile_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::kConfig, "channel profile must be a JSON object");
  ChannelProfile p;
  try {
    for (const auto& item : j.items()) {
      const std::string& k = item.key();
      const auto& v = item.value();
      if (k == "name") p.name = v.get<std::string>();
      else if (k == "dropout_p") p.dropout_p = v.get<double>();
      else if (k == "sub_p") p.sub_p = v.get<double>();
      else if (k == "ins_p") p.ins_p = v.get<double>();
      else if (k == "del_p") p.del_p = v.get<double>();
      else if (k == "coverage_mean") p.coverage_mean = v.get<double>();
      else if (k == "seed") p.seed = v.get<std::uint64_t>();
      else if (k == "provenance") p.provenance = v.get<std::string>();
      else if (k == "coverage_model") {
        const auto m = v.get<std::string>();
        if (m == "fixed") p.coverage_model = CoverageModel::kFixed;
        else if (m == "poisson") p.coverage_model = CoverageModel::kPoisson;
        else throw Error(ErrorKind::kConfig, "unknown coverage_model '" + m + "'");
      } else {
        throw Error(ErrorKind::kConfig, "unknown key '" + k + "' in channel profile");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("channel profile: ") + e.what());
  }
  p.validate();
  return p;
}

/// Survival flag per strand. Strand i is dropped iff its keyed uniform falls
/// below p, so for a fixed seed the dropped sets are nested in p.
inline std::vector<bool> survival_flags(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::kConfig, "dropout outside [0,1]");
  std::vector<bool> keep(n);
  for (std::size_t i = 0; i < n; ++i) keep[i] = !(to_unit(derive_seed(seed, i, kSlotDrop)) < p);
  return keep;
}

template <typename T>
std::vector<T> drop_strands(std::span<const T> strands, double p, std::uint64_t seed) {
  const std::vector<bool> keep = survival_flags(strands.size(), p, seed);
  std::vector<T> out;
  out.reserve(strands.size());
  for (std::size_t i = 0; i < strands.size(); ++i) {
    if (keep[i]) out.push_back(strands[i]);
  }
  return out;
}

template <typename T>
std::vector<T> drop_strands(const std::vector<T>& strands, double p, std::uint64_t seed) {
  return drop_strands(std::span<const T>(strands), p, seed);
}

struct ReadSet {
  std::vector<std::string> reads;
  /// Source strand id per read. Diagnostics only; decoding never reads it.
  std::vector<std::size_t> origin;
};

/// One noisy copy of `seq`: single left-to-right pass, deletion takes
/// priority over insertion, which takes priority over substitution.
inline std::string corrupt_sequence(std::string_view seq, const ChannelProfile& profile,
                                    Rng& rng) {
  std::string out;
  out.reserve(seq.size() + 8);
  for (char c : seq) {
    const bool del = rng.bernoulli(profile.del_p);
    const bool ins = rng.bernoulli(profile.ins_p);
    const bool sub = rng.bernoulli(profile.sub_p);
    if (del) continue;
    if (ins) {
      out.push_back(c);
      out.push_back(kNucleotideChars[rng.below(4)]);
      continue;
    }
    if (sub) {
      const auto nt = from_char(c);
      const unsigned base = nt ? static_cast<unsigned>(*nt) : 0;
      out.push_back(kNucleotideChars[(base + 1 + rng.below(3)) % 4]);
      continue;
    }
    out.push_back(c);
  }
  return out;
}

/// Reads for every input sequence (dropout is not applied here). The id of
/// sequence i is `ids[i]` when given, else i.
inline ReadSet corrupt_reads(std::span<const std::string> sequences, const ChannelProfile& profile,
                             std::span<const std::size_t> ids = {}) {
  profile.validate();
  ReadSet out;
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    const std::size_t id = i < ids.size() ? ids[i] : i;
    unsigned k;
    if (profile.coverage_model == CoverageModel::kFixed) {
      k = static_cast<unsigned>(std::llround(profile.coverage_mean));
    } else {
      Rng cov(derive_seed(profile.seed, id, kSlotCoverage));
      k = cov.poisson(profile.coverage_mean);
    }
    for (unsigned r = 0; r < k; ++r) {
      Rng rng(derive_seed(derive_seed(profile.seed, id, kSlotRead), r));
      out.reads.push_back(corrupt_sequence(sequences[i], profile, rng));
      out.origin.push_back(id);
    }
  }
  return out;
}

struct ChannelStats {
  std::size_t strands_in = 0;
  std::size_t strands_surviving = 0;
  std::size_t reads = 0;
};

/// Dropout followed by read generation; ids are positions in `sequences`.
inline ReadSet simulate_channel(std::span<const std::string> sequences,
                                const ChannelProfile& profile, ChannelStats* stats = nullptr) {
  profile.validate();
  const std::vector<bool> keep = survival_flags(sequences.size(), profile.dropout_p, profile.seed);
  std::vector<std::string> kept;
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    if (keep[i]) {
      kept.push_back(sequences[i]);
      ids.push_back(i);
    }
  }
  ReadSet reads = corrupt_reads(kept, profile, ids);
  if (stats) {
    stats->strands_in = sequences.size();
    stats->strands_surviving = kept.size();
    stats->reads = reads.reads.size();
  }
  return reads;
}

struct ConsensusResult {
  std::vector<ParsedStrand> strands;  // sorted by index, one per observed index
  std::size_t reads = 0;
  std::size_t accepted = 0;
  std::size_t rejected_length = 0;
  std::size_t rejected_primer = 0;
  std::size_t rejected_corrupt = 0;
};

/// Parses every read and merges reads that share an index by per-block
/// plurality (ties go to the smaller block value). Takes bare sequences.
inline ConsensusResult consensus(std::span<const std::string> reads, const StrandCodec& codec) {
  ConsensusResult res;
  res.reads = reads.size();
  std::map<std::uint64_t, std::vector<std::vector<Block>>> groups;
  for (const std::string& r : reads) {
    ParseOutcome po = codec.parse(r);
    if (!po.accepted()) {
      switch (po.reason) {
        case RejectReason::kLength: ++res.rejected_length; break;
        case RejectReason::kPrimer: ++res.rejected_primer; break;
        case RejectReason::kCorrupt: ++res.rejected_corrupt; break;
      }
      continue;
    }
    ++res.accepted;
    groups[po.strand->index_value].push_back(std::move(po.strand->payload_blocks));
  }
  res.strands.reserve(groups.size());
  std::vector<Block> column;
  for (auto& [index, payloads] : groups) {
    ParsedStrand ps;
    ps.index_value = index;
    const std::size_t n_blocks = payloads.front().size();
    ps.payload_blocks.resize(n_blocks);
    for (std::size_t b = 0; b < n_blocks; ++b) {
      column.clear();
      for (const auto& p : payloads) column.push_back(p[b]);
      std::sort(column.begin(), column.end());
      Block best = column.front();
      std::size_t best_count = 0;
      for (std::size_t i = 0; i < column.size();) {
        std::size_t j = i;
        while (j < column.size() && column[j] == column[i]) ++j;
        if (j - i > best_count) {
          best_count = j - i;
          best = column[i];
        }
        i = j;
      }
      ps.payload_blocks[b] = best;
    }
    res.strands.push_back(std::move(ps));
  }
  return res;
}

inline ConsensusResult consensus(std::span<const std::string> reads, const StrandLayout& layout,
                                 const JrConfig& cfg) {
  return consensus(reads, StrandCodec(layout, cfg));
}

}  // namespace pj
