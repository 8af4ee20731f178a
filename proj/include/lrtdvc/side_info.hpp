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

#ifndef LRTDVC_SIDE_INFO_HPP_
#define LRTDVC_SIDE_INFO_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "lrtdvc/frame.hpp"
#include "lrtdvc/lrt.hpp"

namespace lrtdvc {

struct MotionVector {
  int dy = 0;
  int dx = 0;
  bool operator==(const MotionVector&) const = default;
};

// Per-block outcome of the two-candidate search. mv1 is the unconstrained
// rank-SAD minimum; mv2 the minimum among candidates whose mean passes the
// T1 gate. lsad1 <= lsad2 whenever mv2 is valid.
struct BlockMatch {
  int by = 0;
  int bx = 0;
  MotionVector mv1, mv2, chosen;
  int ref1 = 0, ref2 = 0, chosen_ref = 0;
  int64_t lsad1 = 0, lsad2 = 0;
  bool mv2_valid = false;
  bool used_mv2 = false;
};

struct MotionField {
  int block_size = 16;
  int cols = 0;
  int rows = 0;
  std::vector<BlockMatch> blocks;

  const BlockMatch& at(int by, int bx) const {
    return blocks[size_t(by) * cols + bx];
  }
};

// T1 gates the block-mean difference (intensity units); T2 gates the
// rank-SAD gap: 0.05 * |S| * 256, halved in sampled mode since only half
// the positions contribute to the SAD. |S| is the unmerged max rank.
struct MatchThresholds {
  double t1 = 5.0;
  double t2 = 0.0;
};

MatchThresholds make_thresholds(int max_rank, Sampling sampling,
                                int block_size = 16);

// Reference picture plus its rank image under the WZ frame's parameters.
struct RefPlane {
  const Frame* frame = nullptr;
  const RankImage* ranks = nullptr;
};

// Sum of absolute rank differences over positions present in both images.
int64_t rank_sad(const RankImage& a, const RankImage& b);

// Full search over +/-range per 16x16 block in every reference; candidate
// windows that stick out of the frame are skipped. Candidate means come
// from reference intensities at full precision; the WZ-side means are the
// transmitted 8-bit values. Ties break to the first candidate in
// (reference, dy, dx) scan order, so results are deterministic.
// mean_assist=false forces mv1 (the --no-mean-assist ablation).
MotionField motion_search(const RankImage& wz_ranks, const MeanGrid& wz_means,
                          std::span<const RefPlane> refs,
                          const MatchThresholds& th, int search_range,
                          bool mean_assist = true);

// Reference path without the OpenMP block loop; identical output.
MotionField motion_search_serial(const RankImage& wz_ranks,
                                 const MeanGrid& wz_means,
                                 std::span<const RefPlane> refs,
                                 const MatchThresholds& th, int search_range,
                                 bool mean_assist = true);

// Stitch the side-information frame from the chosen blocks.
Frame compensate(const MotionField& mf, std::span<const RefPlane> refs,
                 int width, int height);

}  // namespace lrtdvc

#endif  // LRTDVC_SIDE_INFO_HPP_
