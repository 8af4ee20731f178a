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

#ifndef LRTDVC_MERGE_HPP_
#define LRTDVC_MERGE_HPP_

#include <cstdint>
#include <vector>

#include "lrtdvc/lrt.hpp"

namespace lrtdvc {

// Lossy rank-alphabet reduction. The rarely occurring low ranks are merged
// pairwise onto the higher value of each pair; high ranks survive unchanged.
struct MergeMap {
  int max_rank = 0;
  std::vector<uint8_t> table;      // rank -> merged rank, size max_rank + 1
  std::vector<uint8_t> survivors;  // distinct post-merge values, descending

  uint8_t lowest() const { return survivors.back(); }
  bool is_survivor(uint8_t v) const;
};

// Pair-merges the lowest max_rank/4 + 1 rank pairs, (2k, 2k+1) -> 2k+1.
// max_rank must be a positive multiple of 4 (true for every supported
// neighborhood). Survivor counts: 4 -> 3, 12 -> 9, 24 -> 18, 40 -> 30.
MergeMap build_merge_map(int max_rank);

// Pass-through map for the no-merge ablation.
MergeMap identity_merge_map(int max_rank);

// Per-pixel table lookup; absent positions stay absent.
RankImage merge_ranks(const RankImage& r, const MergeMap& m);

}  // namespace lrtdvc

#endif  // LRTDVC_MERGE_HPP_
