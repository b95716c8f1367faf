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
#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "pj/fasta.hpp"
#include "pj/strand_layout.hpp"

namespace pj {
namespace {

const JrConfig kCfg = default_jr_config();
const StrandLayout kLayout;

Bits random_payload(std::mt19937_64& gen, std::size_t n = 162) {
  Bits b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = (gen() & 1) != 0;
  return b;
}

TEST(StrandLayoutTest, DefaultGeometry) {
  const StrandCodec codec(kLayout, kCfg);
  EXPECT_EQ(kLayout.primer5.size(), 20u);
  EXPECT_EQ(kLayout.primer3.size(), 21u);
  EXPECT_EQ(codec.data_nt(), 100u);
  EXPECT_EQ(codec.strand_length(), 141u);
  EXPECT_FALSE(codec.has_linker());
  EXPECT_EQ(codec.index_bits(), 18u);
  EXPECT_EQ(codec.index_capacity(), 262144u);
  EXPECT_EQ(codec.payload_bits(), 162u);
}

TEST(StrandLayoutTest, DefaultPrimersAreRepeatFree) {
  EXPECT_EQ(max_homopolymer_run(kDefaultPrimer5), 1u);
  EXPECT_EQ(max_homopolymer_run(kDefaultPrimer3), 1u);
}

TEST(StrandLayoutTest, ZeroStrandIsRepeatedGroupPattern) {
  // Every default group opens with a direct slot, so each all-zero group is
  // A, rotate(0, A) = C, A, A, rotate(0, A) = C regardless of what precedes it.
  const Strand s = assemble_strand(0, Bits(162, false), kLayout, kCfg);
  std::string expected_data;
  for (int g = 0; g < 20; ++g) expected_data += "ACAAC";
  EXPECT_EQ(s.sequence, kLayout.primer5 + expected_data + kLayout.primer3);
}

TEST(StrandLayoutTest, IndexOccupiesFirstTwoGroups) {
  const Strand s = assemble_strand((511u << 9) | 511u, Bits(162, false), kLayout, kCfg);
  EXPECT_EQ(s.sequence.substr(20, 10), "TCGGATCGGA");
}

TEST(StrandLayoutTest, IndexCapacity) {
  EXPECT_NO_THROW(assemble_strand(262143, Bits(162, false), kLayout, kCfg));
  try {
    assemble_strand(262144, Bits(162, false), kLayout, kCfg);
    FAIL() << "expected capacity error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapacity);
  }
  EXPECT_THROW(assemble_strand(0, Bits(161, false), kLayout, kCfg), Error);
}

TEST(StrandLayoutTest, RoundTripRandomStrands) {
  std::mt19937_64 gen(1);
  const StrandCodec codec(kLayout, kCfg);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t index = gen() % codec.index_capacity();
    const Bits payload = random_payload(gen);
    const Strand s = codec.assemble(index, payload);
    ASSERT_EQ(s.sequence.size(), 141u);
    ASSERT_LE(max_homopolymer_run(s.sequence), 3u);
    const ParseOutcome po = codec.parse(s.sequence);
    ASSERT_TRUE(po.accepted()) << po.detail;
    ASSERT_EQ(po.strand->index_value, index);
    ASSERT_EQ(blocks_to_bits(po.strand->payload_blocks, 9), payload);
  }
}

TEST(StrandLayoutTest, OtherJumpPresetsKeepBoundAcrossJunctions) {
  std::mt19937_64 gen(5);
  for (unsigned j : {0u, 1u}) {
    const JrConfig cfg = jr_preset(j);
    const StrandCodec codec(default_layout_for(cfg), cfg);
    EXPECT_TRUE(codec.has_linker()) << cfg.name;
    EXPECT_EQ(codec.strand_length(), 142u);
    for (int i = 0; i < 3000; ++i) {
      const std::uint64_t index = gen() % codec.index_capacity();
      const Bits payload = random_payload(gen, codec.payload_bits());
      const Strand s = codec.assemble(index, payload);
      ASSERT_LE(max_homopolymer_run(s.sequence), j + 1) << s.sequence;
      const ParseOutcome po = codec.parse(s.sequence);
      ASSERT_TRUE(po.accepted()) << po.detail;
      ASSERT_EQ(po.strand->index_value, index);
      ASSERT_EQ(blocks_to_bits(po.strand->payload_blocks, cfg.bits_per_block), payload);
    }
  }
}

TEST(StrandParseTest, DeletionIsLengthReject) {
  std::mt19937_64 gen(2);
  const Strand s = assemble_strand(77, random_payload(gen), kLayout, kCfg);
  std::string seq = s.sequence;
  seq.erase(80, 1);
  const ParseOutcome po = parse_strand(seq, kLayout, kCfg);
  ASSERT_FALSE(po.accepted());
  EXPECT_EQ(po.reason, RejectReason::kLength);
  EXPECT_EQ(parse_strand(s.sequence + "A", kLayout, kCfg).reason, RejectReason::kLength);
}

TEST(StrandParseTest, RotatingCollisionIsCorruptReject) {
  std::mt19937_64 gen(3);
  const Strand s = assemble_strand(1234, random_payload(gen), kLayout, kCfg);
  // Brute force: find every single substitution in the payload region that
  // copies the predecessor base into a rotating slot.
  int found = 0;
  for (std::size_t pos = 30; pos < 120; ++pos) {
    const std::size_t slot = (pos - 20) % 5;
    if (kCfg.group_radices[slot] != 3) continue;
    std::string seq = s.sequence;
    seq[pos] = seq[pos - 1];
    const ParseOutcome po = parse_strand(seq, kLayout, kCfg);
    ASSERT_FALSE(po.accepted());
    EXPECT_EQ(po.reason, RejectReason::kCorrupt);
    ++found;
  }
  EXPECT_EQ(found, 36);
}

TEST(StrandParseTest, PrimerMismatchAndTolerance) {
  const Strand s = assemble_strand(5, Bits(162, false), kLayout, kCfg);
  std::string seq = s.sequence;
  seq[3] = seq[3] == 'A' ? 'C' : 'A';
  EXPECT_EQ(parse_strand(seq, kLayout, kCfg).reason, RejectReason::kPrimer);
  StrandLayout lenient = kLayout;
  lenient.primer_tolerance = 1;
  const ParseOutcome po = parse_strand(seq, lenient, kCfg);
  ASSERT_TRUE(po.accepted());
  EXPECT_EQ(po.strand->index_value, 5u);
  seq[140] = seq[140] == 'A' ? 'C' : 'A';
  EXPECT_EQ(parse_strand(seq, lenient, kCfg).reason, RejectReason::kPrimer);
}

TEST(StrandParseTest, NonAcgtDataIsCorrupt) {
  std::string seq = assemble_strand(5, Bits(162, false), kLayout, kCfg).sequence;
  seq[60] = 'N';
  EXPECT_EQ(parse_strand(seq, kLayout, kCfg).reason, RejectReason::kCorrupt);
}

TEST(StrandLayoutTest, LayoutErrors) {
  StrandLayout l = kLayout;
  l.primer5 = "ACGTAAAACGTACGTACGTA";  // run of 4
  EXPECT_THROW(StrandCodec(l, kCfg), Error);
  l = kLayout;
  l.primer5 = "ACGTACGTACGTACGTACAA";  // trailing AA + leading direct slot = 3, fine
  EXPECT_NO_THROW(StrandCodec(l, kCfg));
  l.primer5 = "ACGTACGTACGTACGTAAAC";
  EXPECT_NO_THROW(StrandCodec(l, kCfg));
  l.primer5 = "ACGTACGTACGTACGTCAAA";  // AAA + direct slot could reach 4
  try {
    StrandCodec codec(l, kCfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLayout);
  }
  l = kLayout;
  l.index_nt = 12;
  EXPECT_THROW(StrandCodec(l, kCfg), Error);
  l = kLayout;
  l.payload_nt = 85;
  EXPECT_THROW(StrandCodec(l, kCfg), Error);
  l = kLayout;
  l.primer3 = "ACGTNACGT";
  EXPECT_THROW(StrandCodec(l, kCfg), Error);
}

TEST(StrandLayoutTest, BarePrimersUseConstantPredecessor) {
  StrandLayout bare = kLayout;
  bare.primer5.clear();
  bare.primer3.clear();
  const StrandCodec codec(bare, kCfg);
  EXPECT_EQ(codec.strand_length(), 100u);
  EXPECT_EQ(codec.assemble_blocks(511, std::vector<Block>(18, 0)),
            jr_encode_stream(std::vector<Block>{0, 511}, kCfg, Nucleotide::A) +
                jr_encode_stream(std::vector<Block>(18, 0), kCfg, Nucleotide::A));
}

class FastaTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("pj_fasta_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(FastaTest, WriteThenReadLibrary) {
  std::mt19937_64 gen(9);
  const StrandCodec codec(kLayout, kCfg);
  std::vector<Strand> strands;
  for (std::uint64_t i = 0; i < 100; ++i) strands.push_back(codec.assemble(i, random_payload(gen)));
  write_library(strands, dir_ / "lib.fasta");
  const SequenceFile f = read_sequences(dir_ / "lib.fasta");
  ASSERT_EQ(f.sequences.size(), 100u);
  for (std::size_t i = 0; i < 100; ++i) {
    EXPECT_EQ(f.sequences[i], strands[i].sequence);
    EXPECT_EQ(f.names[i], "pj|" + std::to_string(i));
  }
  EXPECT_EQ(f.skipped_alphabet, 0u);
}

TEST_F(FastaTest, HeaderGrammar) {
  const std::vector<Strand> one{Strand{42, {}, "ACGT"}};
  EXPECT_EQ(format_library(one), ">pj|42\nACGT\n");
}

TEST_F(FastaTest, WrappedLowercaseFasta) {
  const SequenceFile f = parse_sequences(">pj|0|note\nacg\nTAC\n\n>pj|1\nGG\nTT\n");
  ASSERT_EQ(f.sequences.size(), 2u);
  EXPECT_EQ(f.sequences[0], "ACGTAC");
  EXPECT_EQ(f.sequences[1], "GGTT");
  EXPECT_EQ(f.names[0], "pj|0|note");
}

TEST_F(FastaTest, FastqSkipsNonAcgtRecord) {
  const std::string text =
      "@r0\nACGT\n+\nIIII\n"
      "@r1\nACNT\n+\nIIII\n"
      "@r2\nAC\nGT\n+r2\nII\nII\n";
  const SequenceFile f = parse_sequences(text);
  ASSERT_EQ(f.sequences.size(), 2u);
  EXPECT_EQ(f.skipped_alphabet, 1u);
  EXPECT_EQ(f.sequences[1], "ACGT");
}

TEST_F(FastaTest, FastqRoundTrip) {
  const std::vector<std::string> seqs{"ACGT", "TTGCA"};
  const SequenceFile f = parse_sequences(format_fastq(seqs));
  EXPECT_EQ(f.sequences, seqs);
}

TEST_F(FastaTest, EmptyFileIsEmptyLibraryError) {
  write_file_atomic(dir_ / "empty.fasta", "");
  try {
    read_sequences(dir_ / "empty.fasta");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmpty);
  }
}

TEST_F(FastaTest, MissingFileIsIoError) {
  try {
    read_sequences(dir_ / "nope.fasta");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

TEST_F(FastaTest, MalformedInput) {
  EXPECT_THROW(parse_sequences("hello\n"), Error);
  EXPECT_THROW(parse_sequences("@r0\nACGT\n"), Error);
  EXPECT_THROW(parse_sequences("@r0\nACGT\n+\nII\n"), Error);
}

}  // namespace
}  // namespace pj
