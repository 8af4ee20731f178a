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

#ifndef LRTDVC_BITSTREAM_HPP_
#define LRTDVC_BITSTREAM_HPP_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lrtdvc/frame.hpp"
#include "lrtdvc/lrt.hpp"

namespace lrtdvc {

// Serialized WZ frame layout, all multi-byte fields little-endian:
//
//   [magic "LRTW" 4B][version 1B][width 2B][height 2B][N 1B][delta 1B signed]
//   [variant 1B][sampling 1B][block_size 1B][mean count 2B][mean bytes]
//   [mq_len 4B][mq bytes]
//
// Bit 0x80 of the variant byte marks a stream whose ranks were not merged
// (the --no-merge ablation); the low bits carry the Variant value.

inline constexpr uint8_t kWzMagic[4] = {'L', 'R', 'T', 'W'};
inline constexpr uint8_t kWzVersion = 1;
inline constexpr uint8_t kVariantUnmergedFlag = 0x80;
inline constexpr size_t kWzHeaderBytes = 20;

struct WzFrameHeader {
  int width = 0;
  int height = 0;
  LrtParams params;
  bool merged = true;
  int block_size = 16;
};

struct WzFrameRecord {
  WzFrameHeader header;
  MeanGrid means;
  std::vector<uint8_t> mq;

  uint64_t bits_header() const { return kWzHeaderBytes * 8; }
  uint64_t bits_means() const { return uint64_t(means.count()) * 8; }
  uint64_t bits_mq() const { return uint64_t(mq.size()) * 8; }
  uint64_t bits_total() const {
    return bits_header() + bits_means() + bits_mq();
  }
};

void write_wz_frame(std::ostream& out, const WzFrameRecord& rec);

// Returns false on clean EOF before the magic; throws on anything torn.
bool read_wz_frame(std::istream& in, WzFrameRecord* out);

}  // namespace lrtdvc

#endif  // LRTDVC_BITSTREAM_HPP_
