// Copyright 2026 The lrtdvc Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lrtdvc/frame.hpp"
#include "lrtdvc/parallel.hpp"
#include "lrtdvc/pipeline.hpp"

namespace fs = std::filesystem;
using namespace lrtdvc;

namespace {

struct InputSpec {
  std::string path;
  int width = 0, height = 0;
  bool raw_gray = false;
  int frames = -1;
};

std::vector<Frame> load_frames(const InputSpec& spec) {
  std::vector<Frame> frames;
  const fs::path p(spec.path);
  const std::string ext = p.extension().string();

  if (spec.path.find('%') != std::string::npos) {
    for (int i = 0;; ++i) {
      char buf[1024];
      std::snprintf(buf, sizeof(buf), spec.path.c_str(), i);
      if (!fs::exists(buf)) break;
      frames.push_back(load_pgm(buf));
    }
    if (frames.empty())
      throw std::runtime_error(spec.path + ": pattern matched no files");
  } else if (fs::is_directory(p)) {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(p))
      if (e.path().extension() == ".pgm") names.push_back(e.path().string());
    std::sort(names.begin(), names.end());
    if (names.empty()) throw std::runtime_error(spec.path + ": no PGM files");
    for (const auto& n : names) frames.push_back(load_pgm(n));
  } else if (ext == ".y4m") {
    frames = load_y4m(spec.path);
  } else if (ext == ".yuv" || ext == ".raw") {
    frames = load_raw_yuv(spec.path, spec.width, spec.height, !spec.raw_gray);
  } else if (ext == ".pgm") {
    frames.push_back(load_pgm(spec.path));
  } else {
    throw std::runtime_error(spec.path + ": unrecognized input format");
  }

  if (spec.frames > 0 && size_t(spec.frames) < frames.size())
    frames.resize(size_t(spec.frames));
  return frames;
}

void add_input_flags(CLI::App* cmd, InputSpec* spec) {
  cmd->add_option("--width", spec->width, "raw YUV width");
  cmd->add_option("--height", spec->height, "raw YUV height");
  cmd->add_flag("--raw-gray", spec->raw_gray,
                "raw input has no chroma planes");
  cmd->add_option("--frames", spec->frames, "limit number of input frames");
}

void print_summary(const SummaryStats& sum) {
  std::printf("WZ frames: %d\n", sum.wz_frames);
  if (sum.wz_frames == 0) return;
  std::printf("avg bits/frame: %.1f (%.1f kbps at 15 fps)\n", sum.avg_bits,
              sum.kbps);
  if (sum.avg_si_psnr >= 0)
    std::printf("avg PSNR (dB): SI %.2f, recon %.2f, post %.2f\n",
                sum.avg_si_psnr, sum.avg_recon_psnr, sum.avg_post_psnr);
  std::printf("avg power (model units): %.3e\n", sum.avg_power);
}

void save_stats(const std::string& path, const std::vector<FrameStats>& stats) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open");
  write_stats_csv(out, stats);
}

int run(int argc, char** argv) {
  CLI::App app{"Feedback-channel-free distributed video codec based on the "
               "local rank transform"};
  app.require_subcommand(1);

  // --- encode ---
  auto* enc = app.add_subcommand("encode", "encode a sequence to .lrtd");
  InputSpec enc_in;
  CodecConfig enc_cfg;
  std::string enc_out, enc_keys = "keys", enc_stats;
  std::string enc_variant = "auto", enc_sampling = "full";
  bool no_merge = false;
  enc->add_option("--in", enc_in.path, "input sequence")->required();
  add_input_flags(enc, &enc_in);
  enc->add_option("--out", enc_out, "output bitstream")->required();
  enc->add_option("--keys", enc_keys, "directory for lossless key frames");
  enc->add_option("--n", enc_cfg.lrt.n, "neighborhood size 1..4")
      ->check(CLI::Range(1, 4));
  enc->add_option("--delta", enc_cfg.lrt.delta, "rank tolerance delta");
  enc->add_option("--variant", enc_variant,
                  "neighborhood variant: auto|odd|even|full");
  enc->add_option("--sampling", enc_sampling, "rank sampling: full|half");
  enc->add_option("--gop", enc_cfg.gop, "key frame period")->check(CLI::Range(2, 64));
  enc->add_flag("--no-merge", no_merge, "disable rank merging (ablation)");
  enc->add_flag("--include-key-bits", enc_cfg.include_key_bits,
                "charge lossless key frames to the reported rate");
  enc->add_option("--stats", enc_stats, "write per-frame stats CSV");

  // --- decode ---
  auto* dec = app.add_subcommand("decode", "decode an .lrtd stream");
  InputSpec dec_orig;
  CodecConfig dec_cfg;
  std::string dec_in, dec_keys = "keys", dec_out, dec_stats;
  std::string trace_csv, mv_csv;
  bool no_mean_assist = false, no_postprocess = false;
  dec->add_option("--in", dec_in, "input bitstream")->required();
  dec->add_option("--keys", dec_keys, "key frame directory");
  dec->add_option("--gop", dec_cfg.gop, "key frame period")->check(CLI::Range(2, 64));
  dec->add_option("--step", dec_cfg.step, "reconstruction update step")
      ->check(CLI::Range(1, 64));
  dec->add_option("--t3", dec_cfg.t3,
                  "unknown-pixel gate (default 0.05*|S|*neighbors)");
  dec->add_option("--search-range", dec_cfg.search_range,
                  "motion search range in pixels");
  dec->add_flag("--no-mean-assist", no_mean_assist,
                "plain rank-SAD motion search (ablation)");
  dec->add_flag("--no-postprocess", no_postprocess,
                "skip mean correction pass (ablation)");
  dec->add_option("--out", dec_out, "directory for reconstructed PGM frames");
  dec->add_option("--stats", dec_stats, "write per-frame stats CSV");
  dec->add_option("--orig", dec_orig.path,
                  "original sequence, enables PSNR columns");
  add_input_flags(dec, &dec_orig);
  dec->add_option("--trace-csv", trace_csv, "dump reconstruction traces");
  dec->add_option("--mv-csv", mv_csv, "dump per-block motion decisions");
  bool dump_ranks = false;
  dec->add_flag("--dump-ranks", dump_ranks,
                "write decoded rank images as scaled PGMs (needs --out)");
  dec->add_flag("--include-key-bits", dec_cfg.include_key_bits,
                "charge lossless key frames to the reported rate");

  // --- cost ---
  auto* cost = app.add_subcommand("cost", "cost/power report from stats CSV");
  std::string cost_in, cost_out;
  cost->add_option("--in", cost_in, "stats CSV from encode/decode")
      ->required();
  cost->add_option("--out", cost_out, "output CSV (default stdout)");

  // --- sweep ---
  auto* sweep = app.add_subcommand(
      "sweep", "rate/PSNR sweep over n=1..4, sampled and full");
  InputSpec sweep_in;
  CodecConfig sweep_cfg;
  std::string sweep_out;
  sweep->add_option("--in", sweep_in.path, "input sequence")->required();
  add_input_flags(sweep, &sweep_in);
  sweep->add_option("--out", sweep_out, "sweep CSV (default stdout)");
  sweep->add_option("--gop", sweep_cfg.gop, "key frame period")
      ->check(CLI::Range(2, 64));
  sweep->add_option("--delta", sweep_cfg.lrt.delta, "rank tolerance delta");
  sweep->add_option("--step", sweep_cfg.step, "reconstruction update step");
  sweep->add_flag("--include-key-bits", sweep_cfg.include_key_bits,
                  "charge lossless key frames to the reported rate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  apply_thread_cap_from_env();

  if (enc->parsed()) {
    if (enc_variant == "odd" || enc_variant == "even" ||
        enc_variant == "full") {
      enc_cfg.variant_explicit = true;
      enc_cfg.lrt.variant = enc_variant == "odd"
                                ? Variant::kOdd
                                : (enc_variant == "even" ? Variant::kEven
                                                         : Variant::kFull);
    } else if (enc_variant != "auto") {
      throw CLI::ValidationError("--variant", "must be auto|odd|even|full");
    }
    if (enc_sampling == "half")
      enc_cfg.lrt.sampling = Sampling::kHalf;
    else if (enc_sampling != "full")
      throw CLI::ValidationError("--sampling", "must be full|half");
    enc_cfg.merge = !no_merge;

    const std::vector<Frame> frames = load_frames(enc_in);
    const EncodeResult res = encode_sequence(frames, enc_cfg, enc_out, enc_keys);
    save_stats(enc_stats, res.stats);
    std::printf("encoded %d WZ + %d key frames, payload %llu bytes\n",
                res.wz_frames, res.key_frames,
                (unsigned long long)res.payload_bytes);
    print_summary(
        summarize(res.stats, enc_cfg.f_wz, enc_cfg.include_key_bits));
    return 0;
  }

  if (dec->parsed()) {
    dec_cfg.mean_assist = !no_mean_assist;
    dec_cfg.postprocess = !no_postprocess;

    std::vector<Frame> originals;
    const bool have_orig = !dec_orig.path.empty();
    if (have_orig) originals = load_frames(dec_orig);

    std::vector<IterationTrace> traces;
    std::vector<MotionField> motion;
    const DecodeResult res = decode_sequence(
        dec_in, dec_keys, dec_cfg, have_orig ? &originals : nullptr,
        trace_csv.empty() ? nullptr : &traces,
        mv_csv.empty() ? nullptr : &motion);

    if (!dec_out.empty()) {
      fs::create_directories(dec_out);
      for (size_t i = 0; i < res.frames.size(); ++i) {
        if (res.frames[i].pixel_count() == 0) continue;
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%06zu.pgm", i);
        store_pgm(res.frames[i], (fs::path(dec_out) / name).string());
      }
      if (dump_ranks) {
        for (size_t j = 0; j < res.wz_ranks.size(); ++j) {
          char name[32];
          std::snprintf(name, sizeof(name), "ranks_%06zu.pgm", j);
          store_pgm(rank_debug_frame(res.wz_ranks[j]),
                    (fs::path(dec_out) / name).string());
        }
      }
    }
    save_stats(dec_stats, res.stats);

    if (!trace_csv.empty()) {
      std::ofstream out(trace_csv);
      out << "wz_record,iteration,rank_psnr,changed_pixels\n";
      for (size_t j = 0; j < traces.size(); ++j)
        for (const IterationRecord& r : traces[j])
          out << j << ',' << r.iteration << ',' << r.rank_psnr << ','
              << r.changed_pixels << '\n';
    }
    if (!mv_csv.empty()) {
      std::ofstream out(mv_csv);
      out << "wz_record,by,bx,mv1_dy,mv1_dx,ref1,lsad1,mv2_valid,mv2_dy,"
             "mv2_dx,ref2,lsad2,used_mv2\n";
      for (size_t j = 0; j < motion.size(); ++j)
        for (const BlockMatch& m : motion[j].blocks)
          out << j << ',' << m.by << ',' << m.bx << ',' << m.mv1.dy << ','
              << m.mv1.dx << ',' << m.ref1 << ',' << m.lsad1 << ','
              << int(m.mv2_valid) << ',' << m.mv2.dy << ',' << m.mv2.dx
              << ',' << m.ref2 << ',' << m.lsad2 << ',' << int(m.used_mv2)
              << '\n';
    }
    print_summary(
        summarize(res.stats, dec_cfg.f_wz, dec_cfg.include_key_bits));
    return 0;
  }

  if (sweep->parsed()) {
    const std::vector<Frame> frames = load_frames(sweep_in);
    const std::vector<SweepPoint> points = rate_psnr_sweep(frames, sweep_cfg);
    if (sweep_out.empty()) {
      write_sweep_csv(std::cout, points);
    } else {
      std::ofstream out(sweep_out);
      if (!out) throw std::runtime_error(sweep_out + ": cannot open");
      write_sweep_csv(out, points);
    }
    return 0;
  }

  // cost
  std::ifstream in(cost_in);
  if (!in) throw std::runtime_error(cost_in + ": cannot open");
  const std::vector<FrameStats> stats = read_stats_csv(in);
  if (cost_out.empty()) {
    write_cost_report(std::cout, stats);
  } else {
    std::ofstream out(cost_out);
    if (!out) throw std::runtime_error(cost_out + ": cannot open");
    write_cost_report(out, stats);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
