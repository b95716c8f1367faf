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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pj/errors.hpp"

namespace pj {

/// One base. The numeric value is the position in the cyclic order A->C->G->T.
enum class Nucleotide : std::uint8_t { A = 0, C = 1, G = 2, T = 3 };

inline constexpr std::array<char, 4> kNucleotideChars = {'A', 'C', 'G', 'T'};

constexpr char to_char(Nucleotide nt) {
  return kNucleotideChars[static_cast<std::size_t>(nt)];
}

constexpr std::optional<Nucleotide> from_char(char c) {
  switch (c) {
    case 'A': case 'a': return Nucleotide::A;
    case 'C': case 'c': return Nucleotide::C;
    case 'G': case 'g': return Nucleotide::G;
    case 'T': case 't': return Nucleotide::T;
    default: return std::nullopt;
  }
}

inline Nucleotide nucleotide_at(std::string_view seq, std::size_t pos) {
  auto nt = from_char(seq[pos]);
  if (!nt) {
    throw Error(ErrorKind::kFormat,
                std::string("non-ACGT character '") + seq[pos] + "' at position " +
                    std::to_string(pos));
  }
  return *nt;
}

inline bool is_acgt(std::string_view seq) {
  for (char c : seq) {
    if (c != 'A' && c != 'C' && c != 'G' && c != 'T') return false;
  }
  return true;
}

/// Longest run of identical consecutive characters; 0 for an empty string.
inline std::size_t max_homopolymer_run(std::string_view seq) {
  std::size_t best = 0;
  std::size_t run = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    run = (i > 0 && seq[i] == seq[i - 1]) ? run + 1 : 1;
    if (run > best) best = run;
  }
  return best;
}

inline std::size_t leading_run(std::string_view seq) {
  std::size_t n = seq.empty() ? 0 : 1;
  while (n < seq.size() && seq[n] == seq[0]) ++n;
  return n;
}

inline std::size_t trailing_run(std::string_view seq) {
  if (seq.empty()) return 0;
  std::size_t n = 1;
  while (n < seq.size() && seq[seq.size() - 1 - n] == seq.back()) ++n;
  return n;
}

}  // namespace pj
