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

#ifndef LRTDVC_PIPELINE_HPP_
#define LRTDVC_PIPELINE_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lrtdvc/bitstream.hpp"
#include "lrtdvc/frame.hpp"
#include "lrtdvc/lrt.hpp"
#include "lrtdvc/reconstruction.hpp"
#include "lrtdvc/side_info.hpp"

namespace lrtdvc {

// The encoder is a pure function of the input frames and this config; it
// never sees decoder state, so the output bytes are reproducible bit for
// bit. Key frames are written losslessly as PGM sidecars.
struct CodecConfig {
  int gop = 2;  // every gop-th frame is a key frame
  LrtParams lrt;
  // When unset, the variant follows the sampling mode: odd neighborhoods
  // for full sampling, even for half (even neighbors of a present
  // checkerboard pixel are themselves present).
  bool variant_explicit = false;
  int block_size = 16;
  bool merge = true;
  bool mean_assist = true;
  bool postprocess = true;
  int search_range = 16;
  int step = 2;
  double t3 = -1.0;
  double f_wz = 15.0;  // WZ frame rate used for rate and power figures
  // Key frames ride along losslessly; charge their raw bits to the stats
  // when set (reported rates cover WZ frames only by default).
  bool include_key_bits = false;
};

// One row of the experiment report. Encode fills the rate and cost fields;
// decode fills the quality fields when it has the original frames.
struct FrameStats {
  int index = -1;  // display index
  char role = 'W';
  int width = 0, height = 0;
  int n = 0, delta = 0;
  char variant = 'o';   // f / o / e
  char sampling = 'f';  // f / h
  bool merged = true;
  bool mean_assist = true;
  bool postprocess = true;
  uint64_t coded_positions = 0;  // P in the cost formulas
  uint64_t beta = 0;
  uint64_t bits_header = 0, bits_means = 0, bits_mq = 0, bits_total = 0;
  double si_psnr = -1.0, recon_psnr = -1.0, post_psnr = -1.0;  // <0: unknown
  int iterations = 0;
  double cycles_lrt = 0, cycles_cx = 0, cycles_mq = 0, cycles_total = 0;
  double power = 0;
  double t3 = -1.0;  // unknown-pixel gate in force; <0 is the auto default
};

struct EncodeResult {
  std::vector<FrameStats> stats;
  uint64_t payload_bytes = 0;  // size of the .lrtd stream
  int key_frames = 0;
  int wz_frames = 0;
};

struct DecodeResult {
  // Full display-order sequence: keys passed through, WZ reconstructed.
  std::vector<Frame> frames;
  std::vector<FrameStats> stats;
  // Decoded merged rank image per WZ frame, in record order.
  std::vector<RankImage> wz_ranks;
};

// Encode frames to an .lrtd stream; key frames go to keys_dir as
// keys_dir/key_NNNNNN.pgm (display index).
EncodeResult encode_sequence(const std::vector<Frame>& frames,
                             const CodecConfig& cfg,
                             const std::string& stream_path,
                             const std::string& keys_dir);

// Decode an .lrtd stream with its key sidecars. originals, when given,
// must be the full display-order source sequence and enables the PSNR
// columns. traces/motion capture the per-frame debug dumps.
DecodeResult decode_sequence(const std::string& stream_path,
                             const std::string& keys_dir,
                             const CodecConfig& cfg,
                             const std::vector<Frame>* originals = nullptr,
                             std::vector<IterationTrace>* traces = nullptr,
                             std::vector<MotionField>* motion = nullptr);

// In-memory variants, used by the file-based ones and by the tests.
EncodeResult encode_sequence_stream(const std::vector<Frame>& frames,
                                    const CodecConfig& cfg, std::ostream& out,
                                    std::vector<Frame>* keys_out);
DecodeResult decode_sequence_stream(std::istream& in,
                                    const std::vector<Frame>& keys,
                                    const CodecConfig& cfg,
                                    const std::vector<Frame>* originals,
                                    std::vector<IterationTrace>* traces,
                                    std::vector<MotionField>* motion);

void write_stats_csv(std::ostream& out, const std::vector<FrameStats>& stats);
std::vector<FrameStats> read_stats_csv(std::istream& in);

// Per-frame cost table (LRT vs LDPC columns) plus an averages footer.
void write_cost_report(std::ostream& out,
                       const std::vector<FrameStats>& stats);

// Averages over the WZ rows: kbps at f_wz, PSNRs, power. include_keys
// folds the key-frame bits into the rate figures (sequence-level rate).
struct SummaryStats {
  int wz_frames = 0;
  double avg_bits = 0, kbps = 0;
  double avg_si_psnr = -1, avg_recon_psnr = -1, avg_post_psnr = -1;
  double avg_power = 0;
};
SummaryStats summarize(const std::vector<FrameStats>& stats, double f_wz,
                       bool include_keys = false);

// Rate/PSNR sweep over the standard operating points: sampled transforms
// of every neighborhood size for the low rates, full transforms for the
// high ones.
struct SweepPoint {
  int n = 0;
  Sampling sampling = Sampling::kFull;
  SummaryStats summary;
};
std::vector<SweepPoint> rate_psnr_sweep(const std::vector<Frame>& frames,
                                        const CodecConfig& base);
void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& sweep);

}  // namespace lrtdvc

#endif  // LRTDVC_PIPELINE_HPP_
