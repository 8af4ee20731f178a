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

#ifndef LRTDVC_FRAME_HPP_
#define LRTDVC_FRAME_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lrtdvc {

// 8-bit grayscale raster. Luma is the only channel the codec touches;
// chroma from container formats is discarded on load.
struct Frame {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> samples;  // row-major, width * height

  Frame() = default;
  Frame(int w, int h, uint8_t fill = 0)
      : width(w), height(h), samples(size_t(w) * size_t(h), fill) {}

  size_t pixel_count() const { return size_t(width) * size_t(height); }
  uint8_t at(int y, int x) const { return samples[size_t(y) * width + x]; }
  uint8_t& at(int y, int x) { return samples[size_t(y) * width + x]; }

  // Replicate padding: out-of-range coordinates clamp to the nearest edge.
  uint8_t at_clamped(int y, int x) const {
    if (y < 0) y = 0;
    if (y >= height) y = height - 1;
    if (x < 0) x = 0;
    if (x >= width) x = width - 1;
    return at(y, x);
  }

  bool same_geometry(const Frame& o) const {
    return width == o.width && height == o.height;
  }
  bool operator==(const Frame&) const = default;
};

// Quantized per-block mean intensities, one byte per block in raster order.
// Edge blocks may be partial; the mean is taken over the pixels present.
struct MeanGrid {
  int block_size = 16;
  int cols = 0;
  int rows = 0;
  std::vector<uint8_t> means;

  int count() const { return cols * rows; }
  uint8_t at(int by, int bx) const { return means[size_t(by) * cols + bx]; }
};

// PGM, P5 or P2, maxval 255 required.
Frame read_pgm(std::istream& in, const std::string& name = "<stream>");
Frame load_pgm(const std::string& path);
void write_pgm(const Frame& f, std::ostream& out);
void store_pgm(const Frame& f, const std::string& path);

// YUV4MPEG2, 4:2:0 or mono; returns the luma plane of every picture.
std::vector<Frame> load_y4m(const std::string& path);

// Headerless planar YUV of known geometry. chroma420 selects between
// I420 (w*h*3/2 per frame) and plain gray (w*h per frame).
std::vector<Frame> load_raw_yuv(const std::string& path, int width, int height,
                                bool chroma420);

// Peak 255 over the full raster. Returns +infinity when the frames match.
double psnr(const Frame& a, const Frame& b);

// floor(sum / count) per block; full 16x16 blocks reduce to a shift.
MeanGrid block_means(const Frame& f, int block_size = 16);

}  // namespace lrtdvc

#endif  // LRTDVC_FRAME_HPP_
