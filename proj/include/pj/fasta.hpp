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

// FASTA library output and FASTA/FASTQ input.

#pragma once

#include <cctype>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pj/errors.hpp"
#include "pj/io.hpp"
#include "pj/nucleotide.hpp"
#include "pj/strand_layout.hpp"

namespace pj {

/// Library FASTA text: one record per strand, header ">pj|<index>".
inline std::string format_library(std::span<const Strand> strands) {
  std::string out;
  for (const Strand& s : strands) {
    out += ">pj|";
    out += std::to_string(s.index_value);
    out += '\n';
    out += s.sequence;
    out += '\n';
  }
  return out;
}

inline void write_library(std::span<const Strand> strands, const std::filesystem::path& path) {
  write_file_atomic(path, format_library(strands));
}

/// FASTQ text with a constant quality string; `names` may be empty.
inline std::string format_fastq(std::span<const std::string> seqs,
                                std::span<const std::string> names = {}, char quality = 'I') {
  std::string out;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    out += '@';
    out += i < names.size() ? names[i] : "read" + std::to_string(i);
    out += '\n';
    out += seqs[i];
    out += "\n+\n";
    out.append(seqs[i].size(), quality);
    out += '\n';
  }
  return out;
}

struct SequenceFile {
  std::vector<std::string> names;
  std::vector<std::string> sequences;
  std::size_t skipped_alphabet = 0;  // records dropped for non-ACGT content
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  return s;
}

inline void finish_record(SequenceFile& file, std::string_view name, std::string& seq) {
  for (char& c : seq) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (!is_acgt(seq)) {
    ++file.skipped_alphabet;
  } else {
    file.names.emplace_back(name);
    file.sequences.push_back(std::move(seq));
  }
  seq.clear();
}

}  // namespace detail

/// Parses FASTA or FASTQ text (chosen by the first record marker).
inline SequenceFile parse_sequences(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos < text.size();) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(detail::trim(text.substr(pos, nl - pos)));
    pos = nl + 1;
  }
  SequenceFile file;
  std::size_t i = 0;
  while (i < lines.size() && lines[i].empty()) ++i;
  if (i == lines.size()) return file;

  if (lines[i].front() == '>') {
    std::string_view name;
    std::string seq;
    bool open = false;
    for (; i < lines.size(); ++i) {
      std::string_view line = lines[i];
      if (line.empty()) continue;
      if (line.front() == '>') {
        if (open) detail::finish_record(file, name, seq);
        name = line.substr(1);
        open = true;
      } else if (open) {
        seq += line;
      } else {
        throw Error(ErrorKind::kFormat, "sequence data before first FASTA header");
      }
    }
    if (open) detail::finish_record(file, name, seq);
  } else if (lines[i].front() == '@') {
    while (i < lines.size()) {
      if (lines[i].empty()) {
        ++i;
        continue;
      }
      if (lines[i].front() != '@') {
        throw Error(ErrorKind::kFormat, "expected FASTQ header at line " + std::to_string(i + 1));
      }
      std::string_view name = lines[i].substr(1);
      std::string seq;
      ++i;
      while (i < lines.size() && (lines[i].empty() || lines[i].front() != '+')) seq += lines[i++];
      if (i == lines.size()) throw Error(ErrorKind::kFormat, "truncated FASTQ record");
      ++i;  // '+' separator
      std::size_t qual = 0;
      while (qual < seq.size() && i < lines.size()) qual += lines[i++].size();
      if (qual != seq.size()) {
        throw Error(ErrorKind::kFormat, "FASTQ quality length mismatch for '" +
                                            std::string(name) + "'");
      }
      detail::finish_record(file, name, seq);
    }
  } else {
    throw Error(ErrorKind::kFormat, "neither FASTA nor FASTQ");
  }
  return file;
}

/// Reads a FASTA/FASTQ file. Throws kEmpty when no record survives.
inline SequenceFile read_sequences(const std::filesystem::path& path) {
  SequenceFile file = parse_sequences(read_file(path));
  if (file.sequences.empty()) {
    throw Error(ErrorKind::kEmpty, "no parseable records in '" + path.string() + "'");
  }
  return file;
}

}  // namespace pj
