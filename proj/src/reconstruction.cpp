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

#include "lrtdvc/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lrtdvc {

namespace {

// Squared rank error over positions present in both images; the stopping
// rule compares these integers directly so it cannot wobble on floating
// point, and the dB figure is derived from the same sum.
struct RankSse {
  uint64_t sse = 0;
  uint64_t compared = 0;
};

RankSse rank_sse(const RankImage& ref, const RankImage& est) {
  if (!ref.same_geometry(est) || ref.max_rank != est.max_rank)
    throw std::invalid_argument("rank images disagree on geometry");
  RankSse r;
  for (size_t i = 0; i < ref.ranks.size(); ++i) {
    const uint8_t a = ref.ranks[i], b = est.ranks[i];
    if (a == RankImage::kAbsent || b == RankImage::kAbsent) continue;
    const int d = int(a) - int(b);
    r.sse += uint64_t(d * d);
    ++r.compared;
  }
  return r;
}

double sse_to_db(const RankSse& r, int max_rank) {
  if (r.sse == 0) return std::numeric_limits<double>::infinity();
  const double mse = double(r.sse) / double(r.compared);
  return 10.0 * std::log10(double(max_rank) * double(max_rank) / mse);
}

RankImage iterate_ranks(const Frame& est, const LrtParams& lrt,
                        const MergeMap* map) {
  LrtParams full = lrt;
  full.sampling = Sampling::kFull;
  RankImage r = transform(est, full);
  return map ? merge_ranks(r, *map) : r;
}

// One Jacobi sweep: every present-reference pixel moves by +/-step toward
// rank agreement, reading only the previous iterate. Returns the number of
// pixels that actually moved (clamping can pin a pixel in place).
int update_pixels(const Frame& prev, const RankImage& rank_ref,
                  const RankImage& est_ranks, int step, Frame* next) {
  const int h = prev.height, w = prev.width;
  int changed = 0;
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) reduction(+ : changed)
#endif
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const uint8_t ref = rank_ref.at(y, x);
      int v = prev.at(y, x);
      if (ref != RankImage::kAbsent) {
        const uint8_t cur = est_ranks.at(y, x);
        if (ref > cur)
          v = std::min(255, v + step);
        else if (ref < cur)
          v = std::max(0, v - step);
      }
      next->at(y, x) = uint8_t(v);
      changed += (v != prev.at(y, x));
    }
  }
  return changed;
}

}  // namespace

double rank_fidelity(const RankImage& ref, const RankImage& est) {
  return sse_to_db(rank_sse(ref, est), ref.max_rank);
}

DlrtexResult dlrtex(const RankImage& rank_ref, const Frame& si,
                    const ReconParams& p, const MergeMap* map) {
  if (si.width != rank_ref.width || si.height != rank_ref.height)
    throw std::invalid_argument("SI and reference geometry differ");

  DlrtexResult res;
  Frame est = si;
  RankImage est_ranks = iterate_ranks(est, p.lrt, map);
  RankSse prev_sse = rank_sse(rank_ref, est_ranks);
  res.trace.push_back({0, sse_to_db(prev_sse, rank_ref.max_rank), 0});

  Frame next(si.width, si.height);
  for (int iter = 1; iter <= p.max_iterations; ++iter) {
    const int changed = update_pixels(est, rank_ref, est_ranks, p.step, &next);
    if (changed == 0) break;  // fixed point

    RankImage next_ranks = iterate_ranks(next, p.lrt, map);
    const RankSse sse = rank_sse(rank_ref, next_ranks);
    res.trace.push_back({iter, sse_to_db(sse, rank_ref.max_rank), changed});
    if (sse.sse > prev_sse.sse) break;  // fidelity dropped: keep the previous

    std::swap(est, next);
    est_ranks = std::move(next_ranks);
    prev_sse = sse;
  }
  res.frame = std::move(est);
  return res;
}

Frame reconstruct_sampled(const RankImage& sampled_ref, const Frame& si,
                          const RankImage& si_ranks, const ReconParams& p,
                          const MergeMap* map, IterationTrace* trace) {
  if (sampled_ref.sampling != Sampling::kHalf)
    throw std::invalid_argument("reference is not half-sampled");

  // (b) known-rank pixels: restricted DLRTex; absent pixels ride along at
  // their SI values and are not compared.
  DlrtexResult known = dlrtex(sampled_ref, si, p, map);
  if (trace) *trace = known.trace;

  // (c) unknown-rank pixels, classified by how well the reference ranks
  // around them agree with the SI ranks there.
  Frame out = known.frame;
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      if (sampled_ref.present(y, x)) continue;
      int64_t sad = 0;
      int count = 0;
      uint32_t intensity_sum = 0;
      const int ys[4] = {y - 1, y + 1, y, y};
      const int xs[4] = {x, x, x - 1, x + 1};
      for (int k = 0; k < 4; ++k) {
        const int ny = ys[k], nx = xs[k];
        if (ny < 0 || ny >= out.height || nx < 0 || nx >= out.width) continue;
        // Axial neighbors of an absent pixel are present by parity.
        sad += std::abs(int(sampled_ref.at(ny, nx)) - int(si_ranks.at(ny, nx)));
        intensity_sum += known.frame.at(ny, nx);
        ++count;
      }
      const double t3 =
          p.t3 >= 0 ? p.t3 : 0.05 * double(sampled_ref.max_rank) * count;
      if (double(sad) < t3)
        out.at(y, x) = si.at(y, x);  // background / low motion
      else
        out.at(y, x) = uint8_t((intensity_sum + count / 2) / count);
    }
  }
  return out;
}

Frame post_process(const Frame& decoded, const MeanGrid& wz_means,
                   const RankImage& rank_ref, const ReconParams& p,
                   const MergeMap* map, IterationTrace* trace) {
  const MeanGrid decoded_means = block_means(decoded, wz_means.block_size);
  Frame shifted = decoded;
  for (int by = 0; by < wz_means.rows; ++by) {
    for (int bx = 0; bx < wz_means.cols; ++bx) {
      const int corr = int(wz_means.at(by, bx)) - int(decoded_means.at(by, bx));
      if (corr == 0) continue;
      const int y0 = by * wz_means.block_size, x0 = bx * wz_means.block_size;
      const int y1 = std::min(decoded.height, y0 + wz_means.block_size);
      const int x1 = std::min(decoded.width, x0 + wz_means.block_size);
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
          const int v = int(shifted.at(y, x)) + corr;
          shifted.at(y, x) = uint8_t(std::clamp(v, 0, 255));
        }
      }
    }
  }

  // A final DLRTex run irons out the block seams the shift introduced.
  DlrtexResult res = dlrtex(rank_ref, shifted, p, map);
  if (trace) *trace = std::move(res.trace);
  return std::move(res.frame);
}

}  // namespace lrtdvc
