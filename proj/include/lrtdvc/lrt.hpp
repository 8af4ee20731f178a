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

#ifndef LRTDVC_LRT_HPP_
#define LRTDVC_LRT_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lrtdvc/frame.hpp"

namespace lrtdvc {

// Which subset of the (2N+1)^2-1 square neighborhood feeds the rank:
// all of it, or only the pixels at odd / even city-block distance.
enum class Variant : uint8_t { kFull = 0, kOdd = 1, kEven = 2 };
enum class Sampling : uint8_t { kFull = 0, kHalf = 1 };

struct LrtParams {
  int n = 2;          // neighborhood size, 1..4
  int delta = -10;    // rank tolerance; negative pulls smooth regions to max
  Variant variant = Variant::kOdd;
  Sampling sampling = Sampling::kFull;

  bool operator==(const LrtParams&) const = default;
};

// Per-pixel delta-rank raster. kAbsent marks positions dropped by sampling.
struct RankImage {
  static constexpr uint8_t kAbsent = 0xFF;

  int width = 0;
  int height = 0;
  int max_rank = 0;
  Sampling sampling = Sampling::kFull;
  std::vector<uint8_t> ranks;

  RankImage() = default;
  RankImage(int w, int h, int maxr, Sampling s = Sampling::kFull)
      : width(w), height(h), max_rank(maxr), sampling(s),
        ranks(size_t(w) * size_t(h), 0) {}

  size_t pixel_count() const { return size_t(width) * size_t(height); }
  uint8_t at(int y, int x) const { return ranks[size_t(y) * width + x]; }
  uint8_t& at(int y, int x) { return ranks[size_t(y) * width + x]; }
  bool present(int y, int x) const { return at(y, x) != kAbsent; }
  size_t present_count() const;
  bool same_geometry(const RankImage& o) const {
    return width == o.width && height == o.height;
  }
  bool operator==(const RankImage&) const = default;
};

struct NeighborhoodSpec {
  std::vector<std::pair<int, int>> offsets;  // (dy, dx), center excluded
};

// Live tallies for the instrumented transform path. The counting convention
// treats the +o/-o neighbor pair of one pixel as a single comparison unit
// with two rank updates, which is the shared-comparison accounting the
// cycle model uses.
struct TransformCounters {
  uint64_t comparisons = 0;
  uint64_t increments = 0;
};

// Offsets for (n, variant); sizes are 2n(n+1) for odd/even, 4n(n+1) for full.
NeighborhoodSpec neighborhood_offsets(int n, Variant variant);
int max_rank_for(int n, Variant variant);

// Number of neighbors strictly below center - delta.
int delta_rank(int center, std::span<const uint8_t> neighbors, int delta);

// Full-raster transform with replicate padding at the borders.
// transform_serial is the reference path and the only instrumented one;
// transform parallelizes over rows and produces identical output.
RankImage transform_serial(const Frame& f, const LrtParams& p,
                           TransformCounters* counters = nullptr);
RankImage transform(const Frame& f, const LrtParams& p);

// Keep the (y+x)-even checkerboard half, drop the rest.
RankImage sample_half(const RankImage& full);

// Fill absent positions with the lower median of the present axial
// neighbors. Full-sampled input comes back unchanged.
RankImage interpolate_missing(const RankImage& r);

// Ranks scaled to 0..255 for PGM inspection dumps; absent positions -> 0.
Frame rank_debug_frame(const RankImage& r);

}  // namespace lrtdvc

#endif  // LRTDVC_LRT_HPP_
