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

// pj: command-line front end for the codec, channel simulator and metrics.
//
// Every subcommand that writes a file also writes <file>.meta.json with the
// parameters, seed, content digests and counters of the run.
//
// Exit codes: 0 ok, 2 usage or configuration, 3 I/O, 4 malformed input.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pj/pj.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitFormat = 4;

int exit_code(pj::ErrorKind kind) {
  switch (kind) {
    case pj::ErrorKind::kIo: return kExitIo;
    case pj::ErrorKind::kFormat:
    case pj::ErrorKind::kEmpty: return kExitFormat;
    default: return kExitUsage;
  }
}

// Collects the run record and writes it next to the primary output.
class RunMeta {
 public:
  explicit RunMeta(std::string subcommand) {
    j_["tool"] = "pj";
    j_["version"] = std::string(pj::kVersion);
    j_["subcommand"] = std::move(subcommand);
    j_["params"] = json::object();
    j_["inputs"] = json::array();
    j_["outputs"] = json::array();
    j_["counters"] = json::object();
  }

  json& params() { return j_["params"]; }
  json& counters() { return j_["counters"]; }
  void set(const std::string& key, json value) { j_[key] = std::move(value); }

  void input(const fs::path& path, std::string_view data) { record("inputs", path, data); }
  void output(const fs::path& path, std::string_view data) { record("outputs", path, data); }

  /// Writes an output file atomically and records its digest.
  void write(const fs::path& path, std::string_view data) {
    pj::write_file_atomic(path, data);
    output(path, data);
  }

  void save(const fs::path& primary) const {
    fs::path p = primary;
    p += ".meta.json";
    pj::write_file_atomic(p, j_.dump(2) + "\n");
  }

 private:
  void record(const char* key, const fs::path& path, std::string_view data) {
    j_[key].push_back({{"path", path.string()},
                       {"bytes", data.size()},
                       {"fnv1a64", pj::hex64(pj::fnv1a64(data))}});
  }

  json j_;
};

std::string read_input(RunMeta& meta, const fs::path& path) {
  std::string data = pj::read_file(path);
  meta.input(path, data);
  return data;
}

json tally_to_json(const pj::OutcomeTally& t) {
  json j = {{"both_correct", t.both_correct},
            {"orig_correct_degr_wrong", t.orig_correct_degr_wrong},
            {"orig_wrong_degr_correct", t.orig_wrong_degr_correct},
            {"both_wrong_same", t.both_wrong_same},
            {"both_wrong_diff", t.both_wrong_diff},
            {"total", t.total()}};
  const auto pa = t.prediction_accuracy();
  j["prediction_accuracy"] = pa ? json(*pa) : json(nullptr);
  return j;
}

json stats_to_json(const pj::DecodeStats& s) {
  return {{"expected", s.expected},
          {"recovered", s.recovered},
          {"stray", s.stray},
          {"duplicates", s.duplicates},
          {"rejected_length", s.rejected_length},
          {"rejected_primer", s.rejected_primer},
          {"rejected_corrupt", s.rejected_corrupt},
          {"skipped_alphabet", s.skipped_alphabet}};
}

// Shared codec flags for subcommands that encode.
struct CodecFlags {
  unsigned jump = 2;
  std::size_t tile_pixels = 0;  // 0 = payload default
  std::string primer5{pj::kDefaultPrimer5};
  std::string primer3{pj::kDefaultPrimer3};

  void add(CLI::App* app, bool with_primers) {
    app->add_option("--jump", jump, "jump length of the code")
        ->check(CLI::IsMember({0u, 1u, 2u}))
        ->capture_default_str();
    app->add_option("--tile-pixels", tile_pixels, "pixels per strand (default: payload bits / 8)");
    if (with_primers) {
      app->add_option("--primer5", primer5, "5' primer")->capture_default_str();
      app->add_option("--primer3", primer3, "3' primer")->capture_default_str();
    }
  }

  pj::EncodeParams params(unsigned threads) const {
    pj::EncodeParams p;
    p.cfg = pj::jr_preset(jump);
    p.primer5 = primer5;
    p.primer3 = primer3;
    if (tile_pixels != 0) p.tile_pixels = tile_pixels;
    p.threads = threads;
    return p;
  }

  void echo(json& j) const {
    j["jump"] = jump;
    j["tile_pixels"] = tile_pixels == 0 ? json(nullptr) : json(tile_pixels);
    j["primer5"] = primer5;
    j["primer3"] = primer3;
  }
};

// ---------------------------------------------------------------------------

struct EncodeCmd {
  std::string in, raw, out, manifest;
  CodecFlags codec;
  unsigned threads = 1;

  int run() const {
    if (in.empty() == raw.empty()) {
      throw pj::Error(pj::ErrorKind::kConfig, "give exactly one of --in or --raw");
    }
    RunMeta meta("encode");
    codec.echo(meta.params());
    meta.params()["mode"] = in.empty() ? "raw" : "image";
    meta.params()["threads"] = threads;

    const pj::EncodeParams params = codec.params(threads);
    pj::EncodedLibrary lib;
    if (!in.empty()) {
      lib = pj::encode_image(pj::parse_pgm(read_input(meta, in)), params);
    } else {
      const std::string data = read_input(meta, raw);
      lib = pj::encode_raw(std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()),
                           params);
    }

    std::size_t max_run = 0;
    for (const pj::Strand& s : lib.strands) {
      max_run = std::max(max_run, pj::max_homopolymer_run(s.sequence));
    }
    meta.write(out, pj::format_library(lib.strands));
    meta.write(manifest, pj::manifest_to_json(lib.manifest).dump(2) + "\n");
    meta.set("manifest", pj::manifest_to_json(lib.manifest));
    meta.counters() = {{"strands", lib.strands.size()},
                       {"strand_length", lib.manifest.codec().strand_length()},
                       {"max_homopolymer_run", max_run}};
    meta.save(out);
    std::printf("encoded %zu strands -> %s\n", lib.strands.size(), out.c_str());
    return kExitOk;
  }
};

struct SimulateCmd {
  std::string lib, profile_path, preset_name, out;
  std::uint64_t seed = 0;
  const CLI::Option* seed_opt = nullptr;
  double coverage = -1.0;

  int run() const {
    if (profile_path.empty() == preset_name.empty()) {
      throw pj::Error(pj::ErrorKind::kConfig, "give exactly one of --profile or --preset");
    }
    RunMeta meta("simulate");
    pj::ChannelProfile profile;
    if (!preset_name.empty()) {
      profile = pj::preset(preset_name);
    } else {
      const std::string text = read_input(meta, profile_path);
      json j;
      try {
        j = json::parse(text);
      } catch (const json::exception& e) {
        throw pj::Error(pj::ErrorKind::kFormat, "profile '" + profile_path + "': " + e.what());
      }
      profile = pj::profile_from_json(j);
    }
    if (seed_opt->count() > 0) profile.seed = seed;
    if (coverage >= 0.0) profile.coverage_mean = coverage;
    profile.validate();

    const pj::SequenceFile library = pj::parse_sequences(read_input(meta, lib));
    if (library.sequences.empty()) {
      throw pj::Error(pj::ErrorKind::kEmpty, "no sequences in '" + lib + "'");
    }
    pj::ChannelStats stats;
    const pj::ReadSet reads = pj::simulate_channel(library.sequences, profile, &stats);

    meta.params() = {{"profile", pj::profile_to_json(profile)}};
    meta.set("seed", profile.seed);
    meta.set("provenance", profile.provenance);
    meta.write(out, pj::format_fastq(reads.reads));
    meta.counters() = {{"strands_in", stats.strands_in},
                       {"strands_surviving", stats.strands_surviving},
                       {"reads", stats.reads},
                       {"skipped_alphabet", library.skipped_alphabet}};
    meta.save(out);
    std::printf("%zu of %zu strands survived, %zu reads -> %s\n", stats.strands_surviving,
                stats.strands_in, stats.reads, out.c_str());
    return kExitOk;
  }
};

enum class ReadFormat { kAuto, kFasta, kFastq };

// FASTQ input goes through consensus; FASTA input is taken as clean strands.
ReadFormat detect_format(const fs::path& path, std::string_view data) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".fastq" || ext == ".fq") return ReadFormat::kFastq;
  if (ext == ".fasta" || ext == ".fa" || ext == ".fna") return ReadFormat::kFasta;
  const std::size_t first = data.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && data[first] == '@') return ReadFormat::kFastq;
  return ReadFormat::kFasta;
}

struct DecodeCmd {
  std::string reads, lib, manifest, out, mask;
  ReadFormat format = ReadFormat::kAuto;
  bool inpaint = false;
  int primer_tolerance = -1;

  int run() const {
    if (reads.empty() == lib.empty()) {
      throw pj::Error(pj::ErrorKind::kConfig, "give exactly one of --reads or --lib");
    }
    RunMeta meta("decode");
    const fs::path in_path = reads.empty() ? lib : reads;
    const std::string manifest_text = read_input(meta, manifest);
    json mj;
    try {
      mj = json::parse(manifest_text);
    } catch (const json::exception& e) {
      throw pj::Error(pj::ErrorKind::kFormat, "manifest '" + manifest + "': " + e.what());
    }
    pj::TileManifest m = pj::manifest_from_json(mj);
    if (primer_tolerance >= 0) m.layout.primer_tolerance = static_cast<std::size_t>(primer_tolerance);
    const pj::StrandCodec codec = m.codec();

    const std::string data = read_input(meta, in_path);
    const ReadFormat fmt = format == ReadFormat::kAuto ? detect_format(in_path, data) : format;
    const pj::SequenceFile seqs = pj::parse_sequences(data);

    std::vector<pj::ParsedStrand> accepted;
    pj::DecodeStats rejects;
    if (fmt == ReadFormat::kFastq) {
      pj::ConsensusResult cons = pj::consensus(seqs.sequences, codec);
      accepted = std::move(cons.strands);
      rejects.rejected_length = cons.rejected_length;
      rejects.rejected_primer = cons.rejected_primer;
      rejects.rejected_corrupt = cons.rejected_corrupt;
    } else {
      for (const std::string& s : seqs.sequences) {
        pj::ParseOutcome po = codec.parse(s);
        if (po.accepted()) {
          accepted.push_back(std::move(*po.strand));
          continue;
        }
        switch (po.reason) {
          case pj::RejectReason::kLength: ++rejects.rejected_length; break;
          case pj::RejectReason::kPrimer: ++rejects.rejected_primer; break;
          case pj::RejectReason::kCorrupt: ++rejects.rejected_corrupt; break;
        }
      }
    }

    meta.params() = {{"input_format", fmt == ReadFormat::kFastq ? "fastq" : "fasta"},
                     {"inpaint", inpaint},
                     {"primer_tolerance", m.layout.primer_tolerance},
                     {"mask", mask.empty() ? json(nullptr) : json(mask)}};

    pj::DecodeStats stats;
    double masked = 0.0;
    if (m.mode == pj::MappingMode::kImage) {
      pj::RecoveredImage rec = pj::decode_image(accepted, m);
      stats = rec.stats;
      masked = rec.masked_fraction();
      pj::ImageMatrix img = inpaint ? pj::inpaint(rec.image, rec.missing_mask) : rec.image;
      meta.write(out, pj::format_pgm(img));
      if (!mask.empty()) meta.write(mask, pj::format_pbm(rec.missing_mask, img.width, img.height));
    } else {
      if (inpaint || !mask.empty()) {
        throw pj::Error(pj::ErrorKind::kConfig, "--mask and --inpaint need an image manifest");
      }
      pj::RecoveredBytes rec = pj::decode_raw(accepted, m);
      stats = rec.stats;
      if (!rec.missing_bits.empty()) {
        masked = static_cast<double>(std::count(rec.missing_bits.begin(), rec.missing_bits.end(), true)) /
                 static_cast<double>(rec.missing_bits.size());
      }
      meta.write(out, std::string_view(reinterpret_cast<const char*>(rec.bytes.data()), rec.bytes.size()));
    }
    stats.rejected_length = rejects.rejected_length;
    stats.rejected_primer = rejects.rejected_primer;
    stats.rejected_corrupt = rejects.rejected_corrupt;
    stats.skipped_alphabet = seqs.skipped_alphabet;

    meta.counters() = stats_to_json(stats);
    meta.counters()["records"] = seqs.sequences.size();
    meta.counters()["masked_fraction"] = masked;
    meta.save(out);
    std::printf("recovered %zu of %zu strands, masked fraction %.6f -> %s\n", stats.recovered,
                stats.expected, masked, out.c_str());
    return kExitOk;
  }
};

struct SweepCmd {
  std::string in, out;
  std::vector<double> rates{0, 0.001, 0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9};
  std::size_t seeds = 10;
  std::uint64_t seed = 0;
  bool no_inpaint = false;
  CodecFlags codec;
  unsigned threads = 1;

  int run() const {
    RunMeta meta("sweep");
    const pj::ImageMatrix img = pj::parse_pgm(read_input(meta, in));
    std::vector<std::uint64_t> seed_list(seeds);
    for (std::size_t i = 0; i < seeds; ++i) seed_list[i] = seed + i;

    pj::SweepOptions opt;
    opt.inpaint = !no_inpaint;
    opt.encode = codec.params(1);
    opt.threads = threads;
    const pj::SweepResult res = pj::loss_sweep(img, rates, seed_list, opt);

    codec.echo(meta.params());
    meta.params()["rates"] = rates;
    meta.params()["seeds"] = seed_list;
    meta.params()["inpaint"] = opt.inpaint;
    meta.params()["threads"] = threads;
    meta.set("seed", seed);
    meta.write(out, pj::format_sweep_csv(res));
    meta.counters() = {{"rows", res.rows.size()}};
    meta.save(out);

    const auto pm = pj::median_by_rate(res, pj::Scheme::kPM);
    const auto em = pj::median_by_rate(res, pj::Scheme::kEM);
    std::printf("rate       PM_median  EM_median\n");
    for (std::size_t i = 0; i < pm.size(); ++i) {
      std::printf("%-10.6g %-10.6f %.6f\n", pm[i].first, pm[i].second, em[i].second);
    }
    return kExitOk;
  }
};

struct InpaintCmd {
  std::string in, mask, out;
  pj::InpaintParams params;

  int run() const {
    RunMeta meta("inpaint");
    const pj::ImageMatrix img = pj::parse_pgm(read_input(meta, in));
    std::size_t mw = 0, mh = 0;
    const pj::PixelMask m = pj::parse_pbm(read_input(meta, mask), &mw, &mh);
    if (mw != img.width || mh != img.height) {
      throw pj::Error(pj::ErrorKind::kShape, "mask is " + std::to_string(mw) + "x" +
                                                 std::to_string(mh) + ", image is " +
                                                 std::to_string(img.width) + "x" +
                                                 std::to_string(img.height));
    }
    pj::InpaintReport report;
    const pj::ImageMatrix filled = pj::inpaint(img, m, params, &report);
    meta.params() = {{"tolerance", params.tolerance}, {"max_iterations", params.max_iterations}};
    meta.write(out, pj::format_pgm(filled));
    meta.counters() = {{"masked_pixels", std::count(m.begin(), m.end(), true)},
                       {"iterations", report.iterations},
                       {"last_change", report.last_change}};
    meta.save(out);
    std::printf("filled %td pixels in %zu iterations -> %s\n", std::count(m.begin(), m.end(), true),
                report.iterations, out.c_str());
    return kExitOk;
  }
};

struct SsimCmd {
  std::string a, b;

  int run() const {
    const double s = pj::ssim(pj::read_pgm(a), pj::read_pgm(b));
    std::printf("%.6f\n", s);
    return kExitOk;
  }
};

struct DegradeCmd {
  std::string in, out, masks;
  double rate = 0.1;
  std::uint64_t seed = 0;
  CodecFlags codec;
  unsigned threads = 1;

  int run() const {
    RunMeta meta("degrade-dataset");
    const std::vector<pj::ImageMatrix> images = pj::parse_idx_images(read_input(meta, in));
    const pj::DegradedDataset res = pj::degrade_dataset(images, rate, seed, codec.params(threads));

    codec.echo(meta.params());
    meta.params()["rate"] = rate;
    meta.params()["threads"] = threads;
    meta.set("seed", seed);
    meta.write(out, pj::format_idx_images(res.images));
    if (!masks.empty()) meta.write(masks, pj::format_idx_images(res.masks));
    const pj::DegradeSummary& s = res.summary;
    meta.counters() = {{"images", s.images},
                       {"strands_per_image", s.strands_per_image},
                       {"mean_masked_fraction", s.mean_masked_fraction},
                       {"min_masked_fraction", s.min_masked_fraction},
                       {"max_masked_fraction", s.max_masked_fraction},
                       {"stddev_masked_fraction", s.stddev_masked_fraction}};
    meta.save(out);
    std::printf("%s\n", meta.counters().dump().c_str());
    return kExitOk;
  }
};

struct TallyCmd {
  std::string truth, orig, degr, out;

  int run() const {
    RunMeta meta("tally");
    const std::vector<int> t = pj::parse_labels(read_input(meta, truth));
    const std::vector<int> o = pj::parse_labels(read_input(meta, orig));
    const std::vector<int> d = pj::parse_labels(read_input(meta, degr));
    const json result = tally_to_json(pj::tally_outcomes(t, o, d));
    std::printf("%s\n", result.dump(2).c_str());
    if (!out.empty()) {
      meta.write(out, result.dump(2) + "\n");
      meta.counters() = result;
      meta.save(out);
    }
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pj: partition-mapped DNA storage codec and channel simulator"};
  app.set_version_flag("--version", std::string(pj::kVersion));
  app.require_subcommand(1);

  // Seeds default to $PJ_SEED, then 0.
  auto add_seed = [](CLI::App* sub, std::uint64_t& seed) {
    return sub->add_option("--seed", seed, "RNG seed")->envname("PJ_SEED");
  };

  EncodeCmd enc;
  CLI::App* c_enc = app.add_subcommand("encode", "image or file -> FASTA library + manifest");
  auto* enc_in = c_enc->add_option("--in", enc.in, "8-bit binary PGM image")->check(CLI::ExistingFile);
  c_enc->add_option("--raw", enc.raw, "arbitrary file, bit-packed")
      ->check(CLI::ExistingFile)
      ->excludes(enc_in);
  c_enc->add_option("--out", enc.out, "output FASTA")->required();
  c_enc->add_option("--manifest", enc.manifest, "output manifest JSON")->required();
  enc.codec.add(c_enc, true);
  c_enc->add_option("--threads", enc.threads)->check(CLI::PositiveNumber);

  SimulateCmd sim;
  CLI::App* c_sim = app.add_subcommand("simulate", "library -> noisy FASTQ reads");
  c_sim->add_option("--lib", sim.lib, "library FASTA")->required()->check(CLI::ExistingFile);
  auto* sim_prof = c_sim->add_option("--profile", sim.profile_path, "channel profile JSON")
                       ->check(CLI::ExistingFile);
  c_sim->add_option("--preset", sim.preset_name, "clean, loss10, aging95C or xray")
      ->excludes(sim_prof);
  c_sim->add_option("--coverage", sim.coverage, "override the profile's mean coverage")
      ->check(CLI::NonNegativeNumber);
  c_sim->add_option("--out", sim.out, "output FASTQ")->required();
  sim.seed_opt = add_seed(c_sim, sim.seed);

  DecodeCmd dec;
  CLI::App* c_dec = app.add_subcommand("decode", "reads or library -> image (or file)");
  auto* dec_reads = c_dec->add_option("--reads", dec.reads, "reads (consensus applied to FASTQ)")
                        ->check(CLI::ExistingFile);
  c_dec->add_option("--lib", dec.lib, "library FASTA")->check(CLI::ExistingFile)->excludes(dec_reads);
  c_dec->add_option("--manifest", dec.manifest)->required()->check(CLI::ExistingFile);
  c_dec->add_option("--out", dec.out, "output PGM, or bytes for a raw manifest")->required();
  c_dec->add_option("--mask", dec.mask, "write the missing-pixel mask as PBM");
  c_dec->add_flag("--inpaint", dec.inpaint, "fill missing pixels");
  c_dec->add_option("--format", dec.format, "input format (default: by extension)")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, ReadFormat>{{"auto", ReadFormat::kAuto},
                                            {"fasta", ReadFormat::kFasta},
                                            {"fastq", ReadFormat::kFastq}},
          CLI::ignore_case));
  c_dec->add_option("--primer-tolerance", dec.primer_tolerance,
                    "Hamming tolerance on primers (default: from manifest)")
      ->check(CLI::NonNegativeNumber);

  SweepCmd swp;
  CLI::App* c_swp = app.add_subcommand("sweep", "PM vs EM SSIM over loss rates");
  c_swp->add_option("--in", swp.in, "PGM image")->required()->check(CLI::ExistingFile);
  c_swp->add_option("--rates", swp.rates, "comma-separated loss rates")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  c_swp->add_option("--seeds", swp.seeds, "number of seeds per rate")->capture_default_str();
  add_seed(c_swp, swp.seed)->description("first seed; seeds run seed, seed+1, ...");
  c_swp->add_option("--out", swp.out, "output CSV")->required();
  c_swp->add_flag("--no-inpaint", swp.no_inpaint, "leave ssim_inpainted empty");
  swp.codec.add(c_swp, false);
  c_swp->add_option("--threads", swp.threads)->check(CLI::PositiveNumber);

  InpaintCmd inp;
  CLI::App* c_inp = app.add_subcommand("inpaint", "harmonic fill of masked pixels");
  c_inp->add_option("--in", inp.in, "PGM image")->required()->check(CLI::ExistingFile);
  c_inp->add_option("--mask", inp.mask, "PBM mask, set = missing")->required()->check(CLI::ExistingFile);
  c_inp->add_option("--out", inp.out, "output PGM")->required();
  c_inp->add_option("--tolerance", inp.params.tolerance)->capture_default_str()->check(CLI::PositiveNumber);
  c_inp->add_option("--max-iterations", inp.params.max_iterations)->capture_default_str();

  SsimCmd sim2;
  CLI::App* c_ssim = app.add_subcommand("ssim", "SSIM between two PGM images");
  c_ssim->add_option("a", sim2.a)->required()->check(CLI::ExistingFile);
  c_ssim->add_option("b", sim2.b)->required()->check(CLI::ExistingFile);

  DegradeCmd deg;
  CLI::App* c_deg = app.add_subcommand("degrade-dataset", "IDX images through encode/drop/decode");
  c_deg->add_option("--in", deg.in, "IDX image file")->required()->check(CLI::ExistingFile);
  c_deg->add_option("--rate", deg.rate, "strand loss rate")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  add_seed(c_deg, deg.seed);
  c_deg->add_option("--out", deg.out, "output IDX images")->required();
  c_deg->add_option("--masks", deg.masks, "output IDX masks (255 = lost)");
  deg.codec.add(c_deg, false);
  c_deg->add_option("--threads", deg.threads)->check(CLI::PositiveNumber);

  TallyCmd tal;
  CLI::App* c_tal = app.add_subcommand("tally", "outcome categories and prediction accuracy");
  c_tal->add_option("--truth", tal.truth)->required()->check(CLI::ExistingFile);
  c_tal->add_option("--orig", tal.orig, "predictions on original images")->required()->check(CLI::ExistingFile);
  c_tal->add_option("--degr", tal.degr, "predictions on degraded images")->required()->check(CLI::ExistingFile);
  c_tal->add_option("--out", tal.out, "also write the result as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_enc->parsed()) return enc.run();
    if (c_sim->parsed()) return sim.run();
    if (c_dec->parsed()) return dec.run();
    if (c_swp->parsed()) return swp.run();
    if (c_inp->parsed()) return inp.run();
    if (c_ssim->parsed()) return sim2.run();
    if (c_deg->parsed()) return deg.run();
    if (c_tal->parsed()) return tal.run();
  } catch (const pj::Error& e) {
    std::fprintf(stderr, "pj: %s\n", e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "pj: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
