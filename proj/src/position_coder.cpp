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

#include "lrtdvc/position_coder.hpp"

#include <cassert>
#include <stdexcept>

namespace lrtdvc {

namespace {

// Coded-status raster shared by both directions of the scan. A pixel's
// context is how many of its 8 neighbors are already claimed; borders and
// absent positions count as unclaimed forever.
struct StatusGrid {
  int width, height;
  std::vector<uint8_t> coded;

  StatusGrid(int w, int h) : width(w), height(h), coded(size_t(w) * h, 0) {}

  int context(int y, int x) const {
    int cx = 0;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dy == 0 && dx == 0) continue;
        const int ny = y + dy, nx = x + dx;
        if (ny < 0 || ny >= height || nx < 0 || nx >= width) continue;
        cx += coded[size_t(ny) * width + nx];
      }
    }
    return cx;
  }

  void claim(int y, int x) { coded[size_t(y) * width + x] = 1; }
  bool claimed(int y, int x) const { return coded[size_t(y) * width + x]; }
};

// One scan drives encoder and decoder alike: Emit is called with the
// position, plane value and context, and answers whether the pixel carries
// the plane's rank. Claim order is therefore identical on both sides.
template <typename Present, typename Emit>
void scan_planes(int width, int height, const MergeMap& map, Present present,
                 Emit emit) {
  StatusGrid status(width, height);
  for (size_t plane = 0; plane + 1 < map.survivors.size(); ++plane) {
    const uint8_t value = map.survivors[plane];
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        if (!present(y, x) || status.claimed(y, x)) continue;
        const int cx = status.context(y, x);
        assert(cx <= 8);
        if (emit(y, x, value, cx)) status.claim(y, x);
      }
    }
  }
}

}  // namespace

std::vector<SymbolCtx> encode_positions(const RankImage& merged,
                                        const MergeMap& map) {
  if (merged.max_rank != map.max_rank)
    throw std::invalid_argument("rank image and merge map disagree on |S|");
  // The scan only terminates correctly on a fully merged image.
  for (uint8_t v : merged.ranks)
    if (v != RankImage::kAbsent && !map.is_survivor(v))
      throw std::invalid_argument("rank image contains non-surviving ranks");

  std::vector<SymbolCtx> stream;
  scan_planes(
      merged.width, merged.height, map,
      [&](int y, int x) { return merged.present(y, x); },
      [&](int y, int x, uint8_t value, int cx) {
        const uint8_t bit = merged.at(y, x) == value ? 1 : 0;
        stream.push_back({bit, uint8_t(cx)});
        return bit == 1;
      });
  return stream;
}

RankImage decode_positions(std::span<const uint8_t> mq_bytes, int width,
                           int height, Sampling sampling, const MergeMap& map,
                           std::vector<SymbolCtx>* decoded_stream) {
  RankImage out(width, height, map.max_rank, sampling);
  std::vector<uint8_t> assigned(size_t(width) * height, 0);

  const bool half = sampling == Sampling::kHalf;
  MqDecoder dec(mq_bytes);
  scan_planes(
      width, height, map,
      [&](int y, int x) { return !half || (y + x) % 2 == 0; },
      [&](int y, int x, uint8_t value, int cx) {
        const int bit = dec.decode(cx);
        if (decoded_stream)
          decoded_stream->push_back({uint8_t(bit), uint8_t(cx)});
        if (bit) {
          out.at(y, x) = value;
          assigned[size_t(y) * width + x] = 1;
        }
        return bit == 1;
      });

  // Whatever no plane claimed carries the implied lowest rank.
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const size_t i = size_t(y) * width + x;
      if (half && (y + x) % 2 != 0)
        out.ranks[i] = RankImage::kAbsent;
      else if (!assigned[i])
        out.ranks[i] = map.lowest();
    }
  }
  return out;
}

}  // namespace lrtdvc
