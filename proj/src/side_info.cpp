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

#include "lrtdvc/side_info.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lrtdvc {

MatchThresholds make_thresholds(int max_rank, Sampling sampling,
                                int block_size) {
  MatchThresholds th;
  th.t1 = 5.0;
  th.t2 = 0.05 * double(max_rank) * double(block_size) * double(block_size);
  if (sampling == Sampling::kHalf) th.t2 *= 0.5;
  return th;
}

int64_t rank_sad(const RankImage& a, const RankImage& b) {
  if (!a.same_geometry(b))
    throw std::invalid_argument("rank_sad: shape mismatch");
  int64_t sad = 0;
  for (size_t i = 0; i < a.ranks.size(); ++i) {
    const uint8_t ra = a.ranks[i], rb = b.ranks[i];
    if (ra == RankImage::kAbsent || rb == RankImage::kAbsent) continue;
    sad += std::abs(int(ra) - int(rb));
  }
  return sad;
}

namespace {

// Rank SAD of one candidate window; WZ-absent positions are skipped so the
// sampled mode compares only what was transmitted.
int64_t window_rank_sad(const RankImage& wz, int y0, int x0,
                        const RankImage& ref, int cy, int cx, int bh, int bw) {
  int64_t sad = 0;
  for (int i = 0; i < bh; ++i) {
    for (int j = 0; j < bw; ++j) {
      const uint8_t rw = wz.at(y0 + i, x0 + j);
      if (rw == RankImage::kAbsent) continue;
      sad += std::abs(int(rw) - int(ref.at(cy + i, cx + j)));
    }
  }
  return sad;
}

double window_mean(const Frame& f, int y0, int x0, int bh, int bw) {
  uint32_t sum = 0;
  for (int i = 0; i < bh; ++i)
    for (int j = 0; j < bw; ++j) sum += f.at(y0 + i, x0 + j);
  return double(sum) / double(bh * bw);
}

BlockMatch search_block(int by, int bx, const RankImage& wz_ranks,
                        const MeanGrid& wz_means,
                        std::span<const RefPlane> refs,
                        const MatchThresholds& th, int range, int block_size,
                        bool mean_assist) {
  BlockMatch m;
  m.by = by;
  m.bx = bx;
  const int y0 = by * block_size, x0 = bx * block_size;
  const int bh = std::min(block_size, wz_ranks.height - y0);
  const int bw = std::min(block_size, wz_ranks.width - x0);
  const double wz_mean = double(wz_means.at(by, bx));

  int64_t best1 = -1, best2 = -1;
  for (size_t r = 0; r < refs.size(); ++r) {
    const RankImage& rr = *refs[r].ranks;
    const Frame& rf = *refs[r].frame;
    for (int dy = -range; dy <= range; ++dy) {
      const int cy = y0 + dy;
      if (cy < 0 || cy + bh > rr.height) continue;
      for (int dx = -range; dx <= range; ++dx) {
        const int cx = x0 + dx;
        if (cx < 0 || cx + bw > rr.width) continue;
        const int64_t sad = window_rank_sad(wz_ranks, y0, x0, rr, cy, cx,
                                            bh, bw);
        if (best1 < 0 || sad < best1) {
          best1 = sad;
          m.mv1 = {dy, dx};
          m.ref1 = int(r);
        }
        if (mean_assist &&
            std::abs(window_mean(rf, cy, cx, bh, bw) - wz_mean) < th.t1) {
          if (best2 < 0 || sad < best2) {
            best2 = sad;
            m.mv2 = {dy, dx};
            m.ref2 = int(r);
          }
        }
      }
    }
  }
  if (best1 < 0)
    throw std::runtime_error("motion search: no candidate window fits");

  m.lsad1 = best1;
  m.mv2_valid = best2 >= 0;
  m.lsad2 = m.mv2_valid ? best2 : 0;
  // Large LSAD gap means the mean gate only left poor matches; fall back
  // to the unconstrained minimum then.
  m.used_mv2 =
      m.mv2_valid && double(std::abs(m.lsad2 - m.lsad1)) <= th.t2;
  m.chosen = m.used_mv2 ? m.mv2 : m.mv1;
  m.chosen_ref = m.used_mv2 ? m.ref2 : m.ref1;
  return m;
}

MotionField run_search(const RankImage& wz_ranks, const MeanGrid& wz_means,
                       std::span<const RefPlane> refs,
                       const MatchThresholds& th, int range, bool mean_assist,
                       bool parallel) {
  if (refs.empty()) throw std::invalid_argument("no reference frames");
  for (const auto& r : refs)
    if (!r.ranks->same_geometry(wz_ranks))
      throw std::invalid_argument("reference geometry mismatch");

  MotionField mf;
  mf.block_size = wz_means.block_size;
  mf.cols = wz_means.cols;
  mf.rows = wz_means.rows;
  mf.blocks.resize(size_t(mf.cols) * mf.rows);

  const int nblocks = mf.cols * mf.rows;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int b = 0; b < nblocks; ++b) {
    const int by = b / mf.cols, bx = b % mf.cols;
    mf.blocks[size_t(b)] = search_block(by, bx, wz_ranks, wz_means, refs, th,
                                        range, mf.block_size, mean_assist);
  }
  (void)parallel;
  return mf;
}

}  // namespace

MotionField motion_search(const RankImage& wz_ranks, const MeanGrid& wz_means,
                          std::span<const RefPlane> refs,
                          const MatchThresholds& th, int search_range,
                          bool mean_assist) {
  return run_search(wz_ranks, wz_means, refs, th, search_range, mean_assist,
                    true);
}

MotionField motion_search_serial(const RankImage& wz_ranks,
                                 const MeanGrid& wz_means,
                                 std::span<const RefPlane> refs,
                                 const MatchThresholds& th, int search_range,
                                 bool mean_assist) {
  return run_search(wz_ranks, wz_means, refs, th, search_range, mean_assist,
                    false);
}

Frame compensate(const MotionField& mf, std::span<const RefPlane> refs,
                 int width, int height) {
  Frame si(width, height);
  for (const BlockMatch& m : mf.blocks) {
    const int y0 = m.by * mf.block_size, x0 = m.bx * mf.block_size;
    const int bh = std::min(mf.block_size, height - y0);
    const int bw = std::min(mf.block_size, width - x0);
    const Frame& ref = *refs[size_t(m.chosen_ref)].frame;
    for (int i = 0; i < bh; ++i)
      for (int j = 0; j < bw; ++j)
        si.at(y0 + i, x0 + j) =
            ref.at(y0 + m.chosen.dy + i, x0 + m.chosen.dx + j);
  }
  return si;
}

}  // namespace lrtdvc
