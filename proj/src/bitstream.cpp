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

#include "lrtdvc/bitstream.hpp"

#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace lrtdvc {

namespace {

void put_u16(std::ostream& out, uint16_t v) {
  const uint8_t b[2] = {uint8_t(v & 0xFF), uint8_t(v >> 8)};
  out.write(reinterpret_cast<const char*>(b), 2);
}

void put_u32(std::ostream& out, uint32_t v) {
  const uint8_t b[4] = {uint8_t(v & 0xFF), uint8_t((v >> 8) & 0xFF),
                        uint8_t((v >> 16) & 0xFF), uint8_t(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

uint16_t get_u16(std::istream& in) {
  uint8_t b[2];
  in.read(reinterpret_cast<char*>(b), 2);
  return uint16_t(b[0] | (uint16_t(b[1]) << 8));
}

uint32_t get_u32(std::istream& in) {
  uint8_t b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return uint32_t(b[0]) | (uint32_t(b[1]) << 8) | (uint32_t(b[2]) << 16) |
         (uint32_t(b[3]) << 24);
}

[[noreturn]] void corrupt(const char* what) {
  throw std::runtime_error(std::string("corrupt WZ bitstream: ") + what);
}

}  // namespace

void write_wz_frame(std::ostream& out, const WzFrameRecord& rec) {
  const WzFrameHeader& h = rec.header;
  out.write(reinterpret_cast<const char*>(kWzMagic), 4);
  out.put(char(kWzVersion));
  put_u16(out, uint16_t(h.width));
  put_u16(out, uint16_t(h.height));
  out.put(char(uint8_t(h.params.n)));
  out.put(char(int8_t(h.params.delta)));
  uint8_t variant = uint8_t(h.params.variant);
  if (!h.merged) variant |= kVariantUnmergedFlag;
  out.put(char(variant));
  out.put(char(uint8_t(h.params.sampling)));
  out.put(char(uint8_t(h.block_size)));
  put_u16(out, uint16_t(rec.means.count()));
  out.write(reinterpret_cast<const char*>(rec.means.means.data()),
            std::streamsize(rec.means.means.size()));
  put_u32(out, uint32_t(rec.mq.size()));
  out.write(reinterpret_cast<const char*>(rec.mq.data()),
            std::streamsize(rec.mq.size()));
  if (!out) throw std::runtime_error("WZ bitstream write failed");
}

bool read_wz_frame(std::istream& in, WzFrameRecord* out) {
  uint8_t magic[4];
  in.read(reinterpret_cast<char*>(magic), 4);
  if (in.gcount() == 0 && in.eof()) return false;
  if (in.gcount() != 4 || std::memcmp(magic, kWzMagic, 4) != 0)
    corrupt("bad magic");

  const int version = in.get();
  if (version != kWzVersion) corrupt("unknown version");

  WzFrameHeader h;
  h.width = get_u16(in);
  h.height = get_u16(in);
  h.params.n = in.get();
  h.params.delta = int8_t(in.get());
  const int variant = in.get();
  h.merged = (variant & kVariantUnmergedFlag) == 0;
  h.params.variant = Variant(variant & 0x0F);
  h.params.sampling = Sampling(in.get());
  h.block_size = in.get();
  if (!in) corrupt("truncated header");
  if (h.width <= 0 || h.height <= 0 || h.params.n < 1 || h.params.n > 4 ||
      h.block_size <= 0)
    corrupt("implausible header fields");

  const int mean_count = get_u16(in);
  const int cols = (h.width + h.block_size - 1) / h.block_size;
  const int rows = (h.height + h.block_size - 1) / h.block_size;
  if (mean_count != cols * rows) corrupt("mean count mismatch");

  out->header = h;
  out->means.block_size = h.block_size;
  out->means.cols = cols;
  out->means.rows = rows;
  out->means.means.resize(size_t(mean_count));
  in.read(reinterpret_cast<char*>(out->means.means.data()), mean_count);
  if (in.gcount() != mean_count) corrupt("truncated means");

  const uint32_t mq_len = get_u32(in);
  if (!in) corrupt("truncated length");
  out->mq.resize(mq_len);
  in.read(reinterpret_cast<char*>(out->mq.data()), std::streamsize(mq_len));
  if (size_t(in.gcount()) != mq_len) corrupt("truncated MQ payload");
  return true;
}

}  // namespace lrtdvc
