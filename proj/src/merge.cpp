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

#include "lrtdvc/merge.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lrtdvc {

bool MergeMap::is_survivor(uint8_t v) const {
  return std::find(survivors.begin(), survivors.end(), v) != survivors.end();
}

MergeMap build_merge_map(int max_rank) {
  if (max_rank < 4 || max_rank % 4 != 0)
    throw std::invalid_argument("unsupported max_rank " +
                                std::to_string(max_rank));
  MergeMap m;
  m.max_rank = max_rank;
  m.table.resize(size_t(max_rank) + 1);

  // Pair the lowest max_rank/4 + 1 rank pairs onto their higher member;
  // everything above survives. Survivor count lands on |S| + 1 - pairs.
  const int pairs = max_rank / 4 + 1;
  for (int r = 0; r <= max_rank; ++r)
    m.table[size_t(r)] = uint8_t(r < 2 * pairs ? (r | 1) : r);

  for (int r = max_rank; r >= 2 * pairs; --r)
    m.survivors.push_back(uint8_t(r));
  for (int r = 2 * pairs - 1; r >= 1; r -= 2)
    m.survivors.push_back(uint8_t(r));
  return m;
}

MergeMap identity_merge_map(int max_rank) {
  if (max_rank < 1) throw std::invalid_argument("max_rank must be positive");
  MergeMap m;
  m.max_rank = max_rank;
  m.table.resize(size_t(max_rank) + 1);
  for (int r = 0; r <= max_rank; ++r) {
    m.table[size_t(r)] = uint8_t(r);
    m.survivors.push_back(uint8_t(max_rank - r));
  }
  return m;
}

RankImage merge_ranks(const RankImage& r, const MergeMap& m) {
  if (r.max_rank != m.max_rank)
    throw std::invalid_argument("merge map built for a different max_rank");
  RankImage out = r;
  for (auto& v : out.ranks) {
    if (v == RankImage::kAbsent) continue;
    if (v >= m.table.size()) throw std::out_of_range("rank above max_rank");
    v = m.table[v];
  }
  return out;
}

}  // namespace lrtdvc
