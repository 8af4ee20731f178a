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

#include <algorithm>
#include <array>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "lrtdvc/lrt.hpp"

using namespace lrtdvc;

namespace {

// Independent per-pixel oracle: gather the clamped neighborhood values and
// count the below-threshold ones, no sharing tricks.
int oracle_rank(const Frame& f, int y, int x, int n, Variant variant,
                int delta) {
  int rank = 0;
  for (int dy = -n; dy <= n; ++dy) {
    for (int dx = -n; dx <= n; ++dx) {
      if (dy == 0 && dx == 0) continue;
      const int d = std::abs(dy) + std::abs(dx);
      if (variant == Variant::kOdd && d % 2 == 0) continue;
      if (variant == Variant::kEven && d % 2 != 0) continue;
      if (int(f.at_clamped(y + dy, x + dx)) < int(f.at(y, x)) - delta) ++rank;
    }
  }
  return rank;
}

}  // namespace

TEST_CASE("neighborhood sizes reproduce the |S| table") {
  // (full, odd/even) per N
  const std::array<std::pair<int, int>, 4> expected{
      {{8, 4}, {24, 12}, {48, 24}, {80, 40}}};
  for (int n = 1; n <= 4; ++n) {
    CHECK(neighborhood_offsets(n, Variant::kFull).offsets.size() ==
          size_t(expected[n - 1].first));
    CHECK(neighborhood_offsets(n, Variant::kOdd).offsets.size() ==
          size_t(expected[n - 1].second));
    CHECK(neighborhood_offsets(n, Variant::kEven).offsets.size() ==
          size_t(expected[n - 1].second));
    CHECK(max_rank_for(n, Variant::kFull) == expected[n - 1].first);
    CHECK(max_rank_for(n, Variant::kOdd) == expected[n - 1].second);
  }
  CHECK_THROWS(neighborhood_offsets(0, Variant::kOdd));
  CHECK_THROWS(neighborhood_offsets(5, Variant::kOdd));
}

TEST_CASE("odd neighborhood for n=1 is the axial cross") {
  const auto spec = neighborhood_offsets(1, Variant::kOdd);
  std::vector<std::pair<int, int>> offs = spec.offsets;
  std::sort(offs.begin(), offs.end());
  CHECK(offs == std::vector<std::pair<int, int>>{
                    {-1, 0}, {0, -1}, {0, 1}, {1, 0}});
}

TEST_CASE("odd and even sets partition the full neighborhood") {
  for (int n = 1; n <= 4; ++n) {
    auto odd = neighborhood_offsets(n, Variant::kOdd).offsets;
    auto even = neighborhood_offsets(n, Variant::kEven).offsets;
    auto full = neighborhood_offsets(n, Variant::kFull).offsets;
    std::vector<std::pair<int, int>> joined = odd;
    joined.insert(joined.end(), even.begin(), even.end());
    std::sort(joined.begin(), joined.end());
    std::sort(full.begin(), full.end());
    CHECK(joined == full);
  }
}

TEST_CASE("delta_rank spot values") {
  const std::vector<uint8_t> s1 = {20, 25, 39, 9};
  CHECK(delta_rank(18, s1, 0) == 1);  // only 9 is below 18

  const std::vector<uint8_t> constant(12, 77);
  CHECK(delta_rank(77, constant, -10) == 12);  // smooth region at max

  const std::vector<uint8_t> any = {0, 3, 200};
  CHECK(delta_rank(0, any, 0) == 0);  // nothing below the minimum
}

TEST_CASE("delta_rank is monotone in the center intensity") {
  const std::vector<uint8_t> neighbors = {5, 80, 80, 130, 250};
  int prev = -1;
  for (int c = 0; c <= 255; ++c) {
    const int r = delta_rank(c, neighbors, -10);
    CHECK(r >= prev);
    prev = r;
  }
}

TEST_CASE("constant frame transforms to max rank everywhere") {
  const Frame f(9, 7, 123);
  for (Variant v : {Variant::kFull, Variant::kOdd, Variant::kEven}) {
    const RankImage r = transform(f, {2, -10, v, Sampling::kFull});
    for (uint8_t rank : r.ranks) CHECK(int(rank) == r.max_rank);
  }
}

TEST_CASE("transform matches the per-pixel brute-force oracle") {
  for (uint64_t seed = 0; seed < 4; ++seed) {
    const Frame f = testing::noise_frame(13, 9, seed);
    for (int n : {1, 2, 3}) {
      for (Variant v : {Variant::kFull, Variant::kOdd, Variant::kEven}) {
        const LrtParams p{n, -10, v, Sampling::kFull};
        const RankImage got = transform(f, p);
        const RankImage ser = transform_serial(f, p);
        CHECK(got == ser);
        for (int y = 0; y < f.height; ++y)
          for (int x = 0; x < f.width; ++x)
            CHECK(int(got.at(y, x)) == oracle_rank(f, y, x, n, v, -10));
      }
    }
  }
}

TEST_CASE("rank_odd + rank_even == rank_full pixelwise") {
  const Frame f = testing::textured_frame(24, 18, 5);
  for (int n : {1, 2, 4}) {
    const RankImage odd = transform(f, {n, -10, Variant::kOdd});
    const RankImage even = transform(f, {n, -10, Variant::kEven});
    const RankImage full = transform(f, {n, -10, Variant::kFull});
    for (size_t i = 0; i < full.ranks.size(); ++i)
      CHECK(int(odd.ranks[i]) + int(even.ranks[i]) == int(full.ranks[i]));
  }
}

TEST_CASE("adding a constant leaves the rank image unchanged") {
  const Frame f = testing::noise_frame(16, 16, 9);
  Frame base = f;
  for (auto& s : base.samples) s = uint8_t(s / 2);
  Frame shifted = base;
  for (auto& s : shifted.samples) s = uint8_t(s + 40);
  const LrtParams p{2, -10, Variant::kOdd};
  CHECK(transform(base, p).ranks == transform(shifted, p).ranks);
}

TEST_CASE("transform is translation equivariant away from borders") {
  const Frame f = testing::textured_frame(32, 24, 11);
  Frame moved(32, 24);
  for (int y = 0; y < 24; ++y)
    for (int x = 0; x < 32; ++x)
      moved.at(y, x) = f.at_clamped(y - 3, x - 5);
  const LrtParams p{2, -10, Variant::kOdd};
  const RankImage r0 = transform(f, p);
  const RankImage r1 = transform(moved, p);
  for (int y = 5; y < 24 - 2; ++y)
    for (int x = 7; x < 32 - 2; ++x)
      CHECK(r1.at(y, x) == r0.at(y - 3, x - 5));
}

TEST_CASE("sample_half keeps the even checkerboard") {
  RankImage r(2, 2, 4);
  for (auto& v : r.ranks) v = 4;
  const RankImage s = sample_half(r);
  CHECK(s.present(0, 0));
  CHECK(!s.present(0, 1));
  CHECK(!s.present(1, 0));
  CHECK(s.present(1, 1));
  CHECK(s.sampling == Sampling::kHalf);
}

TEST_CASE("sample_half of qcif keeps 12672 of 25344") {
  RankImage r(176, 144, 12);
  const RankImage s = sample_half(r);
  CHECK(s.pixel_count() == 25344);
  CHECK(s.present_count() == 12672);
}

TEST_CASE("present plus absent counts stay balanced") {
  for (auto [w, h] : {std::pair{7, 5}, {8, 5}, {33, 9}}) {
    RankImage r(w, h, 12);
    const RankImage s = sample_half(r);
    CHECK(s.present_count() == size_t((w * h + 1) / 2));
  }
}

TEST_CASE("interpolation fills a constant rank field exactly") {
  RankImage r(6, 6, 12);
  for (auto& v : r.ranks) v = 7;
  const RankImage s = sample_half(r);
  const RankImage filled = interpolate_missing(s);
  CHECK(filled.sampling == Sampling::kFull);
  for (uint8_t v : filled.ranks) CHECK(v == 7);
}

TEST_CASE("interpolation picks the lower median of {2,2,7,7}") {
  // (2,1) in a 3x4 image is absent under checkerboard sampling and all of
  // its axial neighbors are in bounds.
  RankImage img(3, 4, 12);
  RankImage s = sample_half(img);
  s.at(1, 1) = 2;
  s.at(3, 1) = 2;
  s.at(2, 0) = 7;
  s.at(2, 2) = 7;
  const RankImage filled = interpolate_missing(s);
  CHECK(int(filled.at(2, 1)) == 2);
}

TEST_CASE("interpolating a full image is a no-op") {
  const Frame f = testing::noise_frame(10, 8, 3);
  const RankImage r = transform(f, {1, -10, Variant::kOdd});
  CHECK(interpolate_missing(r) == r);
}

TEST_CASE("natural content skews the rank histogram toward max rank") {
  const Frame f = testing::natural_frame(96, 80, 19);
  const RankImage r = transform(f, {2, -10, Variant::kOdd});
  size_t top_quarter = 0, bottom_quarter = 0;
  for (uint8_t v : r.ranks) {
    if (int(v) > 3 * r.max_rank / 4) ++top_quarter;
    if (int(v) < r.max_rank / 4) ++bottom_quarter;
  }
  CHECK(top_quarter > bottom_quarter);
  CHECK(top_quarter * 2 > r.pixel_count());  // mode lives at the top
}

TEST_CASE("instrumented transform counts the model terms") {
  const Frame f = testing::noise_frame(20, 10, 77);
  for (int n = 1; n <= 4; ++n) {
    TransformCounters c;
    transform_serial(f, {n, -10, Variant::kOdd}, &c);
    const uint64_t pairs = uint64_t(200) * uint64_t(n) * uint64_t(n + 1);
    CHECK(c.comparisons == pairs);
    CHECK(c.increments == 2 * pairs);
  }
}
