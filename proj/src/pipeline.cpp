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

#include "lrtdvc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lrtdvc/complexity.hpp"
#include "lrtdvc/merge.hpp"
#include "lrtdvc/mq_coder.hpp"
#include "lrtdvc/position_coder.hpp"

namespace lrtdvc {

namespace {

namespace fs = std::filesystem;

LrtParams resolve_params(const CodecConfig& cfg) {
  LrtParams p = cfg.lrt;
  if (!cfg.variant_explicit)
    p.variant =
        p.sampling == Sampling::kHalf ? Variant::kEven : Variant::kOdd;
  return p;
}

char variant_char(Variant v) {
  switch (v) {
    case Variant::kFull: return 'f';
    case Variant::kOdd: return 'o';
    case Variant::kEven: return 'e';
  }
  return '?';
}

std::string key_path(const std::string& dir, int display_index) {
  char name[32];
  std::snprintf(name, sizeof(name), "key_%06d.pgm", display_index);
  return (fs::path(dir) / name).string();
}

int wz_display_index(int record, int gop) {
  const int block = record / (gop - 1);
  const int off = record % (gop - 1);
  return block * gop + off + 1;
}

FrameStats base_stats(int index, char role, const Frame& f,
                      const LrtParams& p, const CodecConfig& cfg) {
  FrameStats s;
  s.index = index;
  s.role = role;
  s.width = f.width;
  s.height = f.height;
  s.n = p.n;
  s.delta = p.delta;
  s.variant = variant_char(p.variant);
  s.sampling = p.sampling == Sampling::kHalf ? 'h' : 'f';
  s.merged = cfg.merge;
  s.mean_assist = cfg.mean_assist;
  s.postprocess = cfg.postprocess;
  return s;
}

void fill_cost_model(FrameStats* s, double f_wz) {
  const uint64_t frame_pixels = uint64_t(s->width) * uint64_t(s->height);
  OpCounts ops = lrt_cost(frame_pixels, s->n);
  s->cycles_lrt = weighted_cycles(ops);
  s->cycles_cx = weighted_cycles(context_cost(s->coded_positions, s->beta));
  s->cycles_mq = weighted_cycles(mq_cost(s->beta));
  s->cycles_total = s->cycles_lrt + s->cycles_cx + s->cycles_mq;
  s->power = power(s->cycles_total, double(s->bits_total) * f_wz, 1.0, 50.0,
                   f_wz).power;
}

}  // namespace

EncodeResult encode_sequence_stream(const std::vector<Frame>& frames,
                                    const CodecConfig& cfg, std::ostream& out,
                                    std::vector<Frame>* keys_out) {
  if (frames.empty()) throw std::invalid_argument("no frames to encode");
  if (cfg.gop < 2) throw std::invalid_argument("gop must be >= 2");
  const LrtParams params = resolve_params(cfg);

  EncodeResult res;
  uint64_t payload = 0;
  for (size_t i = 0; i < frames.size(); ++i) {
    const Frame& f = frames[i];
    if (!f.same_geometry(frames[0]))
      throw std::invalid_argument("frame geometry changes mid-sequence");

    if (i % size_t(cfg.gop) == 0) {
      if (keys_out) keys_out->push_back(f);
      ++res.key_frames;
      FrameStats ks = base_stats(int(i), 'K', f, params, cfg);
      if (cfg.include_key_bits) ks.bits_total = uint64_t(f.pixel_count()) * 8;
      res.stats.push_back(ks);
      continue;
    }

    RankImage ranks = transform(f, params);
    const MergeMap map = cfg.merge ? build_merge_map(ranks.max_rank)
                                   : identity_merge_map(ranks.max_rank);
    const RankImage merged = merge_ranks(ranks, map);
    const std::vector<SymbolCtx> stream = encode_positions(merged, map);

    WzFrameRecord rec;
    rec.header.width = f.width;
    rec.header.height = f.height;
    rec.header.params = params;
    rec.header.merged = cfg.merge;
    rec.header.block_size = cfg.block_size;
    rec.means = block_means(f, cfg.block_size);
    rec.mq = mq_encode(stream);
    write_wz_frame(out, rec);
    ++res.wz_frames;
    payload += kWzHeaderBytes + rec.means.means.size() + rec.mq.size();

    FrameStats s = base_stats(int(i), 'W', f, params, cfg);
    s.coded_positions = merged.present_count();
    s.beta = stream.size();
    s.bits_header = rec.bits_header();
    s.bits_means = rec.bits_means();
    s.bits_mq = rec.bits_mq();
    s.bits_total = rec.bits_total();
    fill_cost_model(&s, cfg.f_wz);
    res.stats.push_back(s);
  }
  res.payload_bytes = payload;
  return res;
}

EncodeResult encode_sequence(const std::vector<Frame>& frames,
                             const CodecConfig& cfg,
                             const std::string& stream_path,
                             const std::string& keys_dir) {
  fs::create_directories(fs::path(stream_path).parent_path().empty()
                             ? "."
                             : fs::path(stream_path).parent_path().string());
  fs::create_directories(keys_dir);
  std::ofstream out(stream_path, std::ios::binary);
  if (!out) throw std::runtime_error(stream_path + ": cannot open");

  std::vector<Frame> keys;
  EncodeResult res = encode_sequence_stream(frames, cfg, out, &keys);
  for (size_t k = 0; k < keys.size(); ++k)
    store_pgm(keys[k], key_path(keys_dir, int(k) * cfg.gop));
  return res;
}

DecodeResult decode_sequence_stream(std::istream& in,
                                    const std::vector<Frame>& keys,
                                    const CodecConfig& cfg,
                                    const std::vector<Frame>* originals,
                                    std::vector<IterationTrace>* traces,
                                    std::vector<MotionField>* motion) {
  if (cfg.gop < 2) throw std::invalid_argument("gop must be >= 2");
  if (keys.empty()) throw std::invalid_argument("no key frames");

  std::vector<WzFrameRecord> records;
  WzFrameRecord rec;
  while (read_wz_frame(in, &rec)) records.push_back(std::move(rec));

  DecodeResult res;
  const int total = std::max(int(keys.size() - 1) * cfg.gop + 1,
                             records.empty()
                                 ? 1
                                 : wz_display_index(int(records.size()) - 1,
                                                    cfg.gop) + 1);
  res.frames.resize(size_t(total));
  for (size_t k = 0; k < keys.size(); ++k) {
    const int d = int(k) * cfg.gop;
    res.frames[size_t(d)] = keys[k];
    FrameStats s;
    s.index = d;
    s.role = 'K';
    s.width = keys[k].width;
    s.height = keys[k].height;
    if (cfg.include_key_bits)
      s.bits_total = uint64_t(keys[k].pixel_count()) * 8;
    res.stats.push_back(s);
  }

  for (size_t j = 0; j < records.size(); ++j) {
    const WzFrameRecord& r = records[j];
    const WzFrameHeader& h = r.header;
    const int display = wz_display_index(int(j), cfg.gop);
    const int prev_key = display / cfg.gop;
    if (size_t(prev_key) >= keys.size())
      throw std::runtime_error("missing key frame for WZ frame " +
                               std::to_string(display));

    const int max_rank = max_rank_for(h.params.n, h.params.variant);
    const MergeMap map = h.merged ? build_merge_map(max_rank)
                                  : identity_merge_map(max_rank);

    std::vector<SymbolCtx> decoded_stream;
    RankImage wz_ranks =
        decode_positions(r.mq, h.width, h.height, h.params.sampling, map,
                         &decoded_stream);

    // References: both adjacent keys when the next one exists.
    LrtParams ref_params = h.params;
    ref_params.sampling = Sampling::kFull;
    std::vector<RankImage> ref_ranks;
    std::vector<const Frame*> ref_frames;
    ref_frames.push_back(&keys[size_t(prev_key)]);
    if (size_t(prev_key + 1) < keys.size())
      ref_frames.push_back(&keys[size_t(prev_key + 1)]);
    for (const Frame* rf : ref_frames)
      ref_ranks.push_back(merge_ranks(transform(*rf, ref_params), map));
    std::vector<RefPlane> refs;
    for (size_t k = 0; k < ref_frames.size(); ++k)
      refs.push_back({ref_frames[k], &ref_ranks[k]});

    const MatchThresholds th =
        make_thresholds(max_rank, h.params.sampling, h.block_size);
    MotionField mf = motion_search(wz_ranks, r.means, refs, th,
                                   cfg.search_range, cfg.mean_assist);
    Frame si = compensate(mf, refs, h.width, h.height);
    if (motion) motion->push_back(mf);

    ReconParams rp;
    rp.lrt = h.params;
    rp.step = cfg.step;
    rp.t3 = cfg.t3;

    Frame recon;
    IterationTrace trace;
    if (h.params.sampling == Sampling::kHalf) {
      const RankImage si_ranks =
          merge_ranks(transform(si, ref_params), map);
      recon = reconstruct_sampled(wz_ranks, si, si_ranks, rp, &map, &trace);
    } else {
      DlrtexResult d = dlrtex(wz_ranks, si, rp, &map);
      recon = std::move(d.frame);
      trace = std::move(d.trace);
    }

    Frame final_frame =
        cfg.postprocess ? post_process(recon, r.means, wz_ranks, rp, &map)
                        : recon;

    FrameStats s;
    s.index = display;
    s.role = 'W';
    s.width = h.width;
    s.height = h.height;
    s.n = h.params.n;
    s.delta = h.params.delta;
    s.variant = variant_char(h.params.variant);
    s.sampling = h.params.sampling == Sampling::kHalf ? 'h' : 'f';
    s.merged = h.merged;
    s.mean_assist = cfg.mean_assist;
    s.postprocess = cfg.postprocess;
    s.coded_positions = wz_ranks.present_count();
    s.beta = decoded_stream.size();
    s.bits_header = kWzHeaderBytes * 8;
    s.bits_means = uint64_t(r.means.count()) * 8;
    s.bits_mq = uint64_t(r.mq.size()) * 8;
    s.bits_total = s.bits_header + s.bits_means + s.bits_mq;
    s.iterations = int(trace.size()) - 1;
    s.t3 = cfg.t3;
    fill_cost_model(&s, cfg.f_wz);
    if (originals) {
      if (size_t(display) >= originals->size())
        throw std::invalid_argument("original sequence shorter than stream");
      const Frame& truth = (*originals)[size_t(display)];
      s.si_psnr = psnr(truth, si);
      s.recon_psnr = psnr(truth, recon);
      s.post_psnr = psnr(truth, final_frame);
    }
    res.stats.push_back(s);
    if (traces) traces->push_back(std::move(trace));

    if (size_t(display) >= res.frames.size())
      res.frames.resize(size_t(display) + 1);
    res.frames[size_t(display)] = std::move(final_frame);
    res.wz_ranks.push_back(std::move(wz_ranks));
  }

  std::sort(res.stats.begin(), res.stats.end(),
            [](const FrameStats& a, const FrameStats& b) {
              return a.index < b.index;
            });
  return res;
}

DecodeResult decode_sequence(const std::string& stream_path,
                             const std::string& keys_dir,
                             const CodecConfig& cfg,
                             const std::vector<Frame>* originals,
                             std::vector<IterationTrace>* traces,
                             std::vector<MotionField>* motion) {
  std::ifstream in(stream_path, std::ios::binary);
  if (!in) throw std::runtime_error(stream_path + ": cannot open");

  std::vector<Frame> keys;
  for (int d = 0;; d += cfg.gop) {
    const std::string path = key_path(keys_dir, d);
    if (!fs::exists(path)) break;
    keys.push_back(load_pgm(path));
  }
  if (keys.empty())
    throw std::runtime_error(keys_dir + ": no key frames found");
  return decode_sequence_stream(in, keys, cfg, originals, traces, motion);
}

namespace {

std::string psnr_cell(double v) {
  if (v < 0) return "";
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

void write_stats_csv(std::ostream& out, const std::vector<FrameStats>& stats) {
  out << "frame,role,width,height,n,delta,variant,sampling,merged,"
         "mean_assist,postprocess,coded_positions,beta,bits_header,"
         "bits_means,bits_mq,bits_total,si_psnr,recon_psnr,post_psnr,"
         "iterations,cycles_lrt,cycles_cx,cycles_mq,cycles_total,power,"
         "t3\n";
  for (const FrameStats& s : stats) {
    out << s.index << ',' << s.role << ',' << s.width << ',' << s.height
        << ',' << s.n << ',' << s.delta << ',' << s.variant << ','
        << s.sampling << ',' << int(s.merged) << ',' << int(s.mean_assist)
        << ',' << int(s.postprocess) << ',' << s.coded_positions << ','
        << s.beta << ',' << s.bits_header << ',' << s.bits_means << ','
        << s.bits_mq << ',' << s.bits_total << ',' << psnr_cell(s.si_psnr)
        << ',' << psnr_cell(s.recon_psnr) << ',' << psnr_cell(s.post_psnr)
        << ',' << s.iterations << ',' << s.cycles_lrt << ',' << s.cycles_cx
        << ',' << s.cycles_mq << ',' << s.cycles_total << ',' << s.power
        << ',';
    if (s.t3 < 0)
      out << "auto";
    else
      out << s.t3;
    out << '\n';
  }
}

std::vector<FrameStats> read_stats_csv(std::istream& in) {
  std::vector<FrameStats> stats;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty stats CSV");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    cells.resize(27);
    FrameStats s;
    auto num = [&](size_t i) { return cells[i].empty() ? 0.0 : std::stod(cells[i]); };
    auto psnr_val = [&](size_t i) {
      if (cells[i].empty()) return -1.0;
      if (cells[i] == "inf") return std::numeric_limits<double>::infinity();
      return std::stod(cells[i]);
    };
    s.index = int(num(0));
    s.role = cells[1].empty() ? '?' : cells[1][0];
    s.width = int(num(2));
    s.height = int(num(3));
    s.n = int(num(4));
    s.delta = int(num(5));
    s.variant = cells[6].empty() ? '?' : cells[6][0];
    s.sampling = cells[7].empty() ? '?' : cells[7][0];
    s.merged = num(8) != 0;
    s.mean_assist = num(9) != 0;
    s.postprocess = num(10) != 0;
    s.coded_positions = uint64_t(num(11));
    s.beta = uint64_t(num(12));
    s.bits_header = uint64_t(num(13));
    s.bits_means = uint64_t(num(14));
    s.bits_mq = uint64_t(num(15));
    s.bits_total = uint64_t(num(16));
    s.si_psnr = psnr_val(17);
    s.recon_psnr = psnr_val(18);
    s.post_psnr = psnr_val(19);
    s.iterations = int(num(20));
    s.cycles_lrt = num(21);
    s.cycles_cx = num(22);
    s.cycles_mq = num(23);
    s.cycles_total = num(24);
    s.power = num(25);
    s.t3 = cells[26].empty() || cells[26] == "auto" ? -1.0 : num(26);
    stats.push_back(s);
  }
  return stats;
}

void write_cost_report(std::ostream& out,
                       const std::vector<FrameStats>& stats) {
  static constexpr int kLdpcCodes[4] = {8, 11, 15, 23};
  out << "# beta counts the coded planes only; the lowest surviving rank "
         "is implied and costs no symbols\n";
  out << "frame,n,beta,pi_lrt,pi_cx,pi_mq,pi_total";
  for (int n : kLdpcCodes) out << ",pi_ldpc_" << n;
  out << ",power_lrt";
  for (int n : kLdpcCodes) out << ",power_ldpc_" << n;
  out << '\n';

  double sum_total = 0, sum_ldpc[4] = {0, 0, 0, 0};
  int rows = 0;
  for (const FrameStats& s : stats) {
    if (s.role != 'W') continue;
    const uint64_t pixels = uint64_t(s.width) * uint64_t(s.height);
    const double rate = double(s.bits_total) * 15.0;
    out << s.index << ',' << s.n << ',' << s.beta << ',' << s.cycles_lrt
        << ',' << s.cycles_cx << ',' << s.cycles_mq << ',' << s.cycles_total;
    double ldpc[4];
    for (int i = 0; i < 4; ++i) {
      ldpc[i] = ldpc_cost(pixels, kLdpcCodes[i]);
      out << ',' << ldpc[i];
      sum_ldpc[i] += ldpc[i];
    }
    out << ',' << power(s.cycles_total, rate).power;
    for (double l : ldpc) out << ',' << power(l, rate).power;
    out << '\n';
    sum_total += s.cycles_total;
    ++rows;
  }
  if (rows > 0) {
    out << "# avg pi_total " << sum_total / rows;
    for (int i = 0; i < 4; ++i)
      out << ", avg pi_ldpc_" << kLdpcCodes[i] << ' ' << sum_ldpc[i] / rows;
    out << '\n';
  }
}

SummaryStats summarize(const std::vector<FrameStats>& stats, double f_wz,
                       bool include_keys) {
  SummaryStats sum;
  double bits = 0, si = 0, rec = 0, post = 0, pw = 0;
  int si_n = 0, rec_n = 0, post_n = 0, rate_rows = 0;
  for (const FrameStats& s : stats) {
    if (s.role == 'W') {
      ++sum.wz_frames;
      bits += double(s.bits_total);
      ++rate_rows;
      pw += s.power;
      if (s.si_psnr >= 0) { si += s.si_psnr; ++si_n; }
      if (s.recon_psnr >= 0) { rec += s.recon_psnr; ++rec_n; }
      if (s.post_psnr >= 0) { post += s.post_psnr; ++post_n; }
    } else if (include_keys) {
      bits += double(s.bits_total);
      ++rate_rows;
    }
  }
  if (sum.wz_frames == 0) return sum;
  sum.avg_bits = bits / rate_rows;
  sum.kbps = sum.avg_bits * f_wz / 1000.0;
  sum.avg_power = pw / sum.wz_frames;
  if (si_n) sum.avg_si_psnr = si / si_n;
  if (rec_n) sum.avg_recon_psnr = rec / rec_n;
  if (post_n) sum.avg_post_psnr = post / post_n;
  return sum;
}

std::vector<SweepPoint> rate_psnr_sweep(const std::vector<Frame>& frames,
                                        const CodecConfig& base) {
  std::vector<SweepPoint> sweep;
  for (Sampling s : {Sampling::kHalf, Sampling::kFull}) {
    for (int n = 1; n <= 4; ++n) {
      CodecConfig cfg = base;
      cfg.lrt.n = n;
      cfg.lrt.sampling = s;
      cfg.variant_explicit = false;

      std::stringstream stream;
      std::vector<Frame> keys;
      encode_sequence_stream(frames, cfg, stream, &keys);
      const DecodeResult dec = decode_sequence_stream(
          stream, keys, cfg, &frames, nullptr, nullptr);

      SweepPoint point;
      point.n = n;
      point.sampling = s;
      point.summary =
          summarize(dec.stats, cfg.f_wz, cfg.include_key_bits);
      sweep.push_back(point);
    }
  }
  return sweep;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& sweep) {
  out << "n,sampling,kbps,si_psnr,recon_psnr,post_psnr,avg_power\n";
  for (const SweepPoint& p : sweep) {
    out << p.n << ',' << (p.sampling == Sampling::kHalf ? "half" : "full")
        << ',' << p.summary.kbps << ',' << psnr_cell(p.summary.avg_si_psnr)
        << ',' << psnr_cell(p.summary.avg_recon_psnr) << ','
        << psnr_cell(p.summary.avg_post_psnr) << ',' << p.summary.avg_power
        << '\n';
  }
}

}  // namespace lrtdvc
