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

#ifndef LRTDVC_TESTS_HELPERS_HPP_
#define LRTDVC_TESTS_HELPERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "lrtdvc/frame.hpp"
#include "lrtdvc/lrt.hpp"
#include "lrtdvc/merge.hpp"

namespace lrtdvc::testing {

// splitmix64: portable across standard libraries, unlike the <random>
// distributions, so frozen expected values stay valid everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n)
  uint32_t below(uint32_t n) { return uint32_t(next() % n); }
  // Uniform in [lo, hi]
  int range(int lo, int hi) { return lo + int(below(uint32_t(hi - lo + 1))); }

 private:
  uint64_t state_;
};

inline Frame noise_frame(int w, int h, uint64_t seed) {
  Frame f(w, h);
  Rng rng(seed);
  for (auto& s : f.samples) s = uint8_t(rng.below(256));
  return f;
}

// Smooth low-frequency content plus soft discs: the histogram shape of
// easy natural footage.
inline Frame smooth_frame(int w, int h, uint64_t seed) {
  Rng rng(seed);
  const double fy = 1.0 + rng.below(3), fx = 1.0 + rng.below(3);
  const double py = rng.below(628) / 100.0, px = rng.below(628) / 100.0;
  const int cy = rng.range(h / 4, 3 * h / 4), cx = rng.range(w / 4, 3 * w / 4);
  const double r = double(std::min(w, h)) / (3 + rng.below(3));
  Frame f(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double v = 128.0 + 50.0 * std::sin(fy * 6.2832 * y / h + py) *
                             std::cos(fx * 6.2832 * x / w + px);
      const double d = std::hypot(y - cy, x - cx);
      if (d < r) v += 40.0 * (1.0 - d / r);
      f.at(y, x) = uint8_t(std::clamp(int(v), 0, 255));
    }
  }
  return f;
}

// Natural-like still: smooth regions dominate, with texture patches and a
// few hard edges thrown in.
inline Frame textured_frame(int w, int h, uint64_t seed) {
  Frame f = smooth_frame(w, h, seed);
  Rng rng(seed ^ 0xABCDEF);
  // texture patch
  const int ty = rng.range(0, h / 2), tx = rng.range(0, w / 2);
  for (int y = ty; y < std::min(h, ty + h / 3); ++y)
    for (int x = tx; x < std::min(w, tx + w / 3); ++x)
      f.at(y, x) = uint8_t(std::clamp(
          int(f.at(y, x)) + int((x * 7 + y * 11) % 23) - 11 +
              int(rng.below(7)) - 3,
          0, 255));
  // hard-edged rectangle
  const int ry = rng.range(h / 8, h / 2), rx = rng.range(w / 8, w / 2);
  for (int y = ry; y < std::min(h, ry + h / 4); ++y)
    for (int x = rx; x < std::min(w, rx + w / 4); ++x)
      f.at(y, x) = uint8_t(std::clamp(int(f.at(y, x)) + 70, 0, 255));
  return f;
}

// Textured foreground sliding over a static background by (dy, dx) per
// frame; honest work for the motion search.
inline std::vector<Frame> moving_sequence(int w, int h, int count,
                                          uint64_t seed, int dy = 1,
                                          int dx = 2) {
  const Frame background = textured_frame(w, h, seed);
  std::vector<Frame> seq;
  Rng rng(seed ^ 0x5EED);
  const int ow = w / 4, oh = h / 4;
  const int oy0 = rng.range(h / 8, h / 4), ox0 = rng.range(w / 8, w / 4);
  for (int t = 0; t < count; ++t) {
    Frame f = background;
    const int oy = (oy0 + t * dy) % (h - oh);
    const int ox = (ox0 + t * dx) % (w - ow);
    for (int y = 0; y < oh; ++y)
      for (int x = 0; x < ow; ++x) {
        const int v = 60 + ((x / 3 + y / 3) % 2) * 90 + ((x + y + t) % 5);
        f.at(oy + y, ox + x) = uint8_t(v);
      }
    seq.push_back(std::move(f));
  }
  return seq;
}

// Natural-like still: smooth low-frequency base with oriented striped
// texture over ~60% of the area, like fences, walls and water ripple in
// standard test footage. The texture contrast sits well above the delta
// tolerance, which is what spreads rank mass into the merged zone.
inline Frame natural_frame(int w, int h, uint64_t seed) {
  auto smoothstep = [](double t) { return t * t * (3 - 2 * t); };
  auto lattice = [&](int gw, int gh, uint64_t s) {
    std::vector<double> g(size_t(gw) * gh);
    Rng r(s);
    for (auto& v : g) v = double(r.below(1000)) / 1000.0 - 0.5;
    return g;
  };
  const int g0w = w / 32 + 2, g0h = h / 32 + 2;
  const auto l0 = lattice(g0w, g0h, seed * 3 + 1);
  auto sample = [&](const std::vector<double>& g, int gw, int gh, double y,
                    double x) {
    int yi = int(y), xi = int(x);
    if (yi >= gh - 1) yi = gh - 2;
    if (xi >= gw - 1) xi = gw - 2;
    const double fy = smoothstep(y - yi), fx = smoothstep(x - xi);
    return (g[size_t(yi) * gw + xi] * (1 - fx) +
            g[size_t(yi) * gw + xi + 1] * fx) *
               (1 - fy) +
           (g[size_t(yi + 1) * gw + xi] * (1 - fx) +
            g[size_t(yi + 1) * gw + xi + 1] * fx) *
               fy;
  };

  Frame f(w, h);
  Rng pn(seed ^ 0xFACE);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double v = 128 + 80 * sample(l0, g0w, g0h, y / 32.0, x / 32.0) +
                       4 * (double(pn.below(200)) / 100.0 - 1.0);
      f.at(y, x) = uint8_t(std::clamp(int(v), 0, 255));
    }

  Rng er(seed ^ 0xBEEF);
  double covered = 0;
  while (covered < 0.6) {
    const int ph = h / 5 + int(er.below(uint32_t(h / 4)));
    const int pw = w / 5 + int(er.below(uint32_t(w / 4)));
    const int ry = er.range(0, h - ph - 1), rx = er.range(0, w - pw - 1);
    const double period = 4.0 + double(er.below(50)) / 10.0;
    const double contrast = 20 + er.below(25);
    const double ang = double(er.below(314)) / 100.0;
    const double cy = std::cos(ang), cx = std::sin(ang);
    for (int y = ry; y < ry + ph; ++y)
      for (int x = rx; x < rx + pw; ++x) {
        const double s = std::sin(6.2832 * (y * cy + x * cx) / period);
        f.at(y, x) = uint8_t(std::clamp(int(f.at(y, x) + contrast * s), 0,
                                        255));
      }
    covered += double(ph * pw) / double(w * h);
  }
  return f;
}

inline Frame add_noise(const Frame& f, int amplitude, uint64_t seed) {
  Frame out = f;
  Rng rng(seed);
  for (auto& s : out.samples) {
    const int noise = rng.range(-amplitude, amplitude);
    s = uint8_t(std::clamp(int(s) + noise, 0, 255));
  }
  return out;
}

// Random merged rank image: every present value drawn from the survivor
// set, biased toward the top like real transforms are.
inline RankImage random_merged_ranks(int w, int h, const MergeMap& map,
                                     Sampling sampling, uint64_t seed) {
  RankImage r(w, h, map.max_rank, sampling);
  Rng rng(seed);
  const auto& sv = map.survivors;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (sampling == Sampling::kHalf && (y + x) % 2 != 0) {
        r.at(y, x) = RankImage::kAbsent;
        continue;
      }
      // ~60% top value, the rest spread over the alphabet
      if (rng.below(10) < 6)
        r.at(y, x) = sv.front();
      else
        r.at(y, x) = sv[rng.below(uint32_t(sv.size()))];
    }
  }
  return r;
}

}  // namespace lrtdvc::testing

#endif  // LRTDVC_TESTS_HELPERS_HPP_
