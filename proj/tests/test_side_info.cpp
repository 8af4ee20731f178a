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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "lrtdvc/merge.hpp"
#include "lrtdvc/side_info.hpp"

using namespace lrtdvc;

namespace {

// Binary checker texture with values {30, 60}: the pairwise differences
// {0, +-30} keep delta-ranks invariant under the 2x+110 contrast scaling
// (both 30 and 60 compare the same way against a +-10 window), and the
// texture is 6-periodic in both axes.
int pat(int y, int x) { return 30 + 30 * (((y / 3) + (x / 3)) % 2); }

struct CloneScene {
  Frame wz;    // the whole frame is the texture
  Frame ref;   // contrast clone everywhere, true texture in a right patch
};

// The reference offers two kinds of matches for interior WZ blocks: clone
// windows (identical ranks, mean ~200) all over, and honest texture
// windows (identical ranks AND mean) in the patch at columns >= 24.
CloneScene make_clone_scene() {
  CloneScene s;
  s.wz = Frame(64, 64);
  s.ref = Frame(64, 64);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      s.wz.at(y, x) = uint8_t(pat(y, x));
      if (x >= 24 && x <= 51)
        s.ref.at(y, x) = uint8_t(pat(y, x - 12));  // true texture patch
      else
        s.ref.at(y, x) = uint8_t(2 * pat(y, x + 12) + 110);  // clone
    }
  }
  return s;
}

}  // namespace

TEST_CASE("thresholds follow the 0.05*|S|*256 law") {
  const MatchThresholds full = make_thresholds(12, Sampling::kFull);
  CHECK(full.t1 == 5.0);
  CHECK(full.t2 == doctest::Approx(153.6));
  const MatchThresholds half = make_thresholds(12, Sampling::kHalf);
  CHECK(half.t2 == doctest::Approx(76.8));
}

TEST_CASE("rank_sad basics and oracle") {
  RankImage a(16, 16, 12), b(16, 16, 12);
  testing::Rng rng(4);
  for (auto& v : a.ranks) v = uint8_t(rng.below(13));
  CHECK(rank_sad(a, a) == 0);

  b = a;
  for (auto& v : b.ranks) v = uint8_t(v < 12 ? v + 1 : 11);
  CHECK(rank_sad(a, b) == 256);  // unit offset at every position

  for (auto& v : b.ranks) v = uint8_t(rng.below(13));
  int64_t expect = 0;
  for (size_t i = 0; i < a.ranks.size(); ++i)
    expect += std::abs(int(a.ranks[i]) - int(b.ranks[i]));
  CHECK(rank_sad(a, b) == expect);

  RankImage c(8, 8, 12);
  CHECK_THROWS(rank_sad(a, c));
}

TEST_CASE("rank_sad in sampled mode sums present positions only") {
  RankImage a(4, 4, 4), b(4, 4, 4);
  for (auto& v : a.ranks) v = 0;
  for (auto& v : b.ranks) v = 1;
  const RankImage half = sample_half(a);
  CHECK(rank_sad(half, b) == 8);  // 8 present positions, diff 1 each
}

TEST_CASE("static scene settles on the zero vector through the mean gate") {
  const Frame f = testing::textured_frame(64, 48, 21);
  const RankImage ranks = transform(f, {2, -10, Variant::kOdd});
  const MeanGrid means = block_means(f);
  const RefPlane ref{&f, &ranks};
  const MatchThresholds th = make_thresholds(ranks.max_rank, Sampling::kFull);

  const MotionField mf = motion_search(ranks, means, {&ref, 1}, th, 16);
  for (const BlockMatch& m : mf.blocks) {
    CHECK(m.lsad1 == 0);
    CHECK(m.mv2_valid);
    CHECK(m.lsad2 == 0);
    CHECK(m.used_mv2);
    CHECK(m.chosen == MotionVector{0, 0});
  }
}

TEST_CASE("eq-7 selection holds per block on a moving scene") {
  const auto seq = testing::moving_sequence(64, 48, 2, 31, 2, 3);
  const LrtParams p{2, -10, Variant::kOdd};
  const RankImage wz_ranks = transform(seq[1], p);
  const RankImage ref_ranks = transform(seq[0], p);
  const MeanGrid means = block_means(seq[1]);
  const RefPlane ref{&seq[0], &ref_ranks};
  const MatchThresholds th =
      make_thresholds(wz_ranks.max_rank, Sampling::kFull);

  const MotionField mf = motion_search(wz_ranks, means, {&ref, 1}, th, 8);
  for (const BlockMatch& m : mf.blocks) {
    if (m.mv2_valid) {
      CHECK(m.lsad1 <= m.lsad2);
      const bool expect_mv2 =
          double(std::abs(m.lsad2 - m.lsad1)) <= th.t2;
      CHECK(m.used_mv2 == expect_mv2);
      CHECK(m.chosen == (expect_mv2 ? m.mv2 : m.mv1));
    } else {
      CHECK(!m.used_mv2);
      CHECK(m.chosen == m.mv1);
    }
  }
}

TEST_CASE("lsad1 is the global window minimum (exhaustive oracle)") {
  const auto seq = testing::moving_sequence(32, 32, 2, 7);
  const LrtParams p{1, -10, Variant::kOdd};
  const RankImage wz_ranks = transform(seq[1], p);
  const RankImage ref_ranks = transform(seq[0], p);
  const MeanGrid means = block_means(seq[1]);
  const RefPlane ref{&seq[0], &ref_ranks};
  const int range = 4;

  const MotionField mf = motion_search(
      wz_ranks, means, {&ref, 1},
      make_thresholds(wz_ranks.max_rank, Sampling::kFull), range);

  for (const BlockMatch& m : mf.blocks) {
    const int y0 = m.by * 16, x0 = m.bx * 16;
    int64_t best = -1;
    for (int dy = -range; dy <= range; ++dy) {
      for (int dx = -range; dx <= range; ++dx) {
        const int cy = y0 + dy, cx = x0 + dx;
        if (cy < 0 || cy + 16 > 32 || cx < 0 || cx + 16 > 32) continue;
        int64_t sad = 0;
        for (int i = 0; i < 16; ++i)
          for (int j = 0; j < 16; ++j)
            sad += std::abs(int(wz_ranks.at(y0 + i, x0 + j)) -
                            int(ref_ranks.at(cy + i, cx + j)));
        if (best < 0 || sad < best) best = sad;
      }
    }
    CHECK(m.lsad1 == best);
  }
}

TEST_CASE("search is deterministic and the omp path matches serial") {
  const auto seq = testing::moving_sequence(64, 48, 2, 13);
  const LrtParams p{2, -10, Variant::kOdd};
  const RankImage wz_ranks = transform(seq[1], p);
  const RankImage ref_ranks = transform(seq[0], p);
  const MeanGrid means = block_means(seq[1]);
  const RefPlane ref{&seq[0], &ref_ranks};
  const MatchThresholds th =
      make_thresholds(wz_ranks.max_rank, Sampling::kFull);

  const MotionField a = motion_search(wz_ranks, means, {&ref, 1}, th, 8);
  const MotionField b = motion_search(wz_ranks, means, {&ref, 1}, th, 8);
  const MotionField c =
      motion_search_serial(wz_ranks, means, {&ref, 1}, th, 8);
  REQUIRE(a.blocks.size() == b.blocks.size());
  REQUIRE(a.blocks.size() == c.blocks.size());
  for (size_t i = 0; i < a.blocks.size(); ++i) {
    CHECK(a.blocks[i].chosen == b.blocks[i].chosen);
    CHECK(a.blocks[i].chosen == c.blocks[i].chosen);
    CHECK(a.blocks[i].lsad1 == c.blocks[i].lsad1);
    CHECK(a.blocks[i].lsad2 == c.blocks[i].lsad2);
  }
}

TEST_CASE("compensate copies blocks from the chosen references") {
  const Frame ref0(32, 32, 10);
  const Frame ref1(32, 32, 200);
  const RankImage dummy0(32, 32, 4), dummy1(32, 32, 4);
  std::vector<RefPlane> refs = {{&ref0, &dummy0}, {&ref1, &dummy1}};

  MotionField mf;
  mf.block_size = 16;
  mf.cols = 2;
  mf.rows = 2;
  mf.blocks.resize(4);
  for (int b = 0; b < 4; ++b) {
    mf.blocks[size_t(b)].by = b / 2;
    mf.blocks[size_t(b)].bx = b % 2;
    mf.blocks[size_t(b)].chosen_ref = b % 2;  // alternate references
  }
  const Frame si = compensate(mf, refs, 32, 32);
  CHECK(si.at(0, 0) == 10);
  CHECK(si.at(0, 16) == 200);
  CHECK(si.at(16, 0) == 10);
  CHECK(si.at(16, 16) == 200);
}

TEST_CASE("zero motion field against one reference reproduces it") {
  const Frame f = testing::textured_frame(48, 32, 3);
  const RankImage ranks = transform(f, {1, -10, Variant::kOdd});
  const MeanGrid means = block_means(f);
  const RefPlane ref{&f, &ranks};
  const MotionField mf = motion_search(
      ranks, means, {&ref, 1},
      make_thresholds(ranks.max_rank, Sampling::kFull), 4);
  CHECK(compensate(mf, {&ref, 1}, 48, 32) == f);
}

TEST_CASE("contrast clone misleads plain rank search; mean gate fixes it") {
  const CloneScene s = make_clone_scene();
  const LrtParams p{2, -10, Variant::kOdd};
  const RankImage wz_ranks = transform(s.wz, p);
  const RankImage ref_ranks = transform(s.ref, p);
  const MeanGrid means = block_means(s.wz);
  const RefPlane ref{&s.ref, &ref_ranks};
  const MatchThresholds th =
      make_thresholds(wz_ranks.max_rank, Sampling::kFull);

  const MotionField plain =
      motion_search(wz_ranks, means, {&ref, 1}, th, 16, false);
  const MotionField assisted =
      motion_search(wz_ranks, means, {&ref, 1}, th, 16, true);

  const Frame si_plain = compensate(plain, {&ref, 1}, 64, 64);
  const Frame si_assisted = compensate(assisted, {&ref, 1}, 64, 64);

  // Inspect the interior block (1,1): ranks match the clone perfectly, so
  // the unassisted search lands on rank-identical but contrast-scaled
  // content; the mean gate recovers the true texture exactly.
  const BlockMatch& mp = plain.at(1, 1);
  const BlockMatch& ma = assisted.at(1, 1);
  CHECK(mp.lsad1 == 0);
  CHECK(!mp.used_mv2);
  CHECK(ma.mv2_valid);
  CHECK(ma.used_mv2);
  CHECK(ma.lsad2 == 0);

  bool plain_block_right = true, assisted_block_right = true;
  for (int y = 16; y < 32; ++y) {
    for (int x = 16; x < 32; ++x) {
      plain_block_right &= si_plain.at(y, x) == s.wz.at(y, x);
      assisted_block_right &= si_assisted.at(y, x) == s.wz.at(y, x);
    }
  }
  CHECK(!plain_block_right);
  CHECK(assisted_block_right);
  CHECK(psnr(s.wz, si_assisted) > psnr(s.wz, si_plain));
}
