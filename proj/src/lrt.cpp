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

#include "lrtdvc/lrt.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace lrtdvc {

size_t RankImage::present_count() const {
  size_t n = 0;
  for (uint8_t r : ranks) n += (r != kAbsent);
  return n;
}

NeighborhoodSpec neighborhood_offsets(int n, Variant variant) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("neighborhood size must be in 1..4");
  NeighborhoodSpec spec;
  for (int dy = -n; dy <= n; ++dy) {
    for (int dx = -n; dx <= n; ++dx) {
      if (dy == 0 && dx == 0) continue;
      const int cityblock = std::abs(dy) + std::abs(dx);
      if (variant == Variant::kOdd && cityblock % 2 == 0) continue;
      if (variant == Variant::kEven && cityblock % 2 != 0) continue;
      spec.offsets.emplace_back(dy, dx);
    }
  }
  return spec;
}

int max_rank_for(int n, Variant variant) {
  return variant == Variant::kFull ? 4 * n * (n + 1) : 2 * n * (n + 1);
}

int delta_rank(int center, std::span<const uint8_t> neighbors, int delta) {
  const int threshold = center - delta;
  int rank = 0;
  for (uint8_t y : neighbors) rank += (int(y) < threshold);
  return rank;
}

namespace {

// Offsets with (dy, dx) lexicographically positive; the mirror offset of
// each is applied to the same pixel, so one pass covers the whole
// neighborhood. Every supported neighborhood is symmetric under negation.
std::vector<std::pair<int, int>> positive_half(const NeighborhoodSpec& spec) {
  std::vector<std::pair<int, int>> half;
  for (auto [dy, dx] : spec.offsets)
    if (dy > 0 || (dy == 0 && dx > 0)) half.emplace_back(dy, dx);
  return half;
}

inline int clamp_coord(int v, int hi) {
  return v < 0 ? 0 : (v >= hi ? hi - 1 : v);
}

// Rank of one pixel over the mirrored offset pair list. The +o/-o
// comparisons share the center's threshold; the instrumented path counts
// them as one comparison unit and two rank increments, matching the
// shared-comparison accounting of the cost model.
inline int pixel_rank(const Frame& f, int y, int x, int delta,
                      const std::vector<std::pair<int, int>>& half) {
  const int threshold = int(f.at(y, x)) - delta;
  int rank = 0;
  for (auto [dy, dx] : half) {
    const int fy = clamp_coord(y + dy, f.height);
    const int fx = clamp_coord(x + dx, f.width);
    const int by = clamp_coord(y - dy, f.height);
    const int bx = clamp_coord(x - dx, f.width);
    rank += (int(f.at(fy, fx)) < threshold);
    rank += (int(f.at(by, bx)) < threshold);
  }
  return rank;
}

}  // namespace

RankImage transform_serial(const Frame& f, const LrtParams& p,
                           TransformCounters* counters) {
  if (f.pixel_count() == 0) throw std::invalid_argument("empty frame");
  const auto spec = neighborhood_offsets(p.n, p.variant);
  const auto half = positive_half(spec);
  RankImage r(f.width, f.height, int(spec.offsets.size()), Sampling::kFull);

  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      r.at(y, x) = uint8_t(pixel_rank(f, y, x, p.delta, half));
      if (counters) {
        counters->comparisons += half.size();
        counters->increments += 2 * half.size();
      }
    }
  }
  if (p.sampling == Sampling::kHalf) return sample_half(r);
  return r;
}

RankImage transform(const Frame& f, const LrtParams& p) {
  if (f.pixel_count() == 0) throw std::invalid_argument("empty frame");
  const auto spec = neighborhood_offsets(p.n, p.variant);
  const auto half = positive_half(spec);
  RankImage r(f.width, f.height, int(spec.offsets.size()), Sampling::kFull);

#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (int y = 0; y < f.height; ++y)
    for (int x = 0; x < f.width; ++x)
      r.at(y, x) = uint8_t(pixel_rank(f, y, x, p.delta, half));

  if (p.sampling == Sampling::kHalf) return sample_half(r);
  return r;
}

RankImage sample_half(const RankImage& full) {
  RankImage r = full;
  r.sampling = Sampling::kHalf;
  for (int y = 0; y < r.height; ++y)
    for (int x = 0; x < r.width; ++x)
      if ((y + x) % 2 != 0) r.at(y, x) = RankImage::kAbsent;
  return r;
}

RankImage interpolate_missing(const RankImage& r) {
  if (r.sampling == Sampling::kFull) return r;
  RankImage out = r;
  out.sampling = Sampling::kFull;
  for (int y = 0; y < r.height; ++y) {
    for (int x = 0; x < r.width; ++x) {
      if (r.present(y, x)) continue;
      // Axial neighbors, clamped at the borders; under checkerboard
      // sampling the in-frame ones are always present.
      uint8_t vals[4];
      int count = 0;
      const int ys[4] = {y - 1, y + 1, y, y};
      const int xs[4] = {x, x, x - 1, x + 1};
      for (int k = 0; k < 4; ++k) {
        const int ny = clamp_coord(ys[k], r.height);
        const int nx = clamp_coord(xs[k], r.width);
        if (r.present(ny, nx)) vals[count++] = r.at(ny, nx);
      }
      std::sort(vals, vals + count);
      out.at(y, x) = vals[(count - 1) / 2];  // lower median
    }
  }
  return out;
}

Frame rank_debug_frame(const RankImage& r) {
  Frame f(r.width, r.height);
  for (size_t i = 0; i < r.ranks.size(); ++i) {
    const uint8_t v = r.ranks[i];
    f.samples[i] =
        v == RankImage::kAbsent
            ? 0
            : uint8_t((int(v) * 255 + r.max_rank / 2) / r.max_rank);
  }
  return f;
}

}  // namespace lrtdvc
