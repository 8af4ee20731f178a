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

#include "lrtdvc/mq_coder.hpp"

#include <cassert>

namespace lrtdvc {

namespace {

constexpr uint32_t kAMin = 0x8000;

struct QeState {
  uint16_t qe;
  uint8_t nmps;
  uint8_t nlps;
  uint8_t sw;
};

// The 47-state probability FSM.
constexpr QeState kStates[47] = {
    {0x5601, 1, 1, 1},    {0x3401, 2, 6, 0},    {0x1801, 3, 9, 0},
    {0x0AC1, 4, 12, 0},   {0x0521, 5, 29, 0},   {0x0221, 38, 33, 0},
    {0x5601, 7, 6, 1},    {0x5401, 8, 14, 0},   {0x4801, 9, 14, 0},
    {0x3801, 10, 14, 0},  {0x3001, 11, 17, 0},  {0x2401, 12, 18, 0},
    {0x1C01, 13, 20, 0},  {0x1601, 29, 21, 0},  {0x5601, 15, 14, 1},
    {0x5401, 16, 14, 0},  {0x5101, 17, 15, 0},  {0x4801, 18, 16, 0},
    {0x3801, 19, 17, 0},  {0x3401, 20, 18, 0},  {0x3001, 21, 19, 0},
    {0x2801, 22, 19, 0},  {0x2401, 23, 20, 0},  {0x2201, 24, 21, 0},
    {0x1C01, 25, 22, 0},  {0x1801, 26, 23, 0},  {0x1601, 27, 24, 0},
    {0x1401, 28, 25, 0},  {0x1201, 29, 26, 0},  {0x1101, 30, 27, 0},
    {0x0AC1, 31, 28, 0},  {0x09C1, 32, 29, 0},  {0x08A1, 33, 30, 0},
    {0x0521, 34, 31, 0},  {0x0441, 35, 32, 0},  {0x02A1, 36, 33, 0},
    {0x0221, 37, 34, 0},  {0x0141, 38, 35, 0},  {0x0111, 39, 36, 0},
    {0x0085, 40, 37, 0},  {0x0049, 41, 38, 0},  {0x0025, 42, 39, 0},
    {0x0015, 43, 40, 0},  {0x0009, 44, 41, 0},  {0x0005, 45, 42, 0},
    {0x0001, 45, 43, 0},  {0x5601, 46, 46, 0},
};

}  // namespace

MqEncoder::MqEncoder(int num_contexts) : ctxs_(size_t(num_contexts)) {
  a_ = kAMin;
  c_ = 0;
  ct_ = 12;
  buf_.push_back(0);  // carry scratch; payload starts at index 1
  bp_ = 0;
}

void MqEncoder::put_byte(uint8_t v) {
  if (bp_ == buf_.size())
    buf_.push_back(v);
  else
    buf_[bp_] = v;
}

void MqEncoder::byte_out() {
  if (buf_[bp_] == 0xFF) {
    ++bp_;
    put_byte(uint8_t(c_ >> 20));
    c_ &= 0xFFFFF;
    ct_ = 7;
    return;
  }
  if ((c_ & 0x8000000) == 0) {
    ++bp_;
    put_byte(uint8_t(c_ >> 19));
    c_ &= 0x7FFFF;
    ct_ = 8;
    return;
  }
  // Propagate the carry into the previous byte, restuffing if it become
  // 0xFF in the process.
  ++buf_[bp_];
  if (buf_[bp_] == 0xFF) {
    c_ &= 0x7FFFFFF;
    ++bp_;
    put_byte(uint8_t(c_ >> 20));
    c_ &= 0xFFFFF;
    ct_ = 7;
  } else {
    ++bp_;
    put_byte(uint8_t(c_ >> 19));
    c_ &= 0x7FFFF;
    ct_ = 8;
  }
}

void MqEncoder::renorm() {
  do {
    a_ <<= 1;
    c_ <<= 1;
    if (--ct_ == 0) byte_out();
  } while ((a_ & kAMin) == 0);
}

void MqEncoder::encode(int bit, int ctx) {
  assert(!finished_);
  Ctx& cx = ctxs_.at(size_t(ctx));
  const QeState& st = kStates[cx.state];
  const uint32_t qe = st.qe;

  if (bit == cx.mps) {
    a_ -= qe;
    if ((a_ & kAMin) == 0) {
      if (a_ < qe)
        a_ = qe;
      else
        c_ += qe;
      cx.state = st.nmps;
      renorm();
    } else {
      c_ += qe;
    }
  } else {
    a_ -= qe;
    if (a_ < qe)
      c_ += qe;
    else
      a_ = qe;
    if (st.sw) cx.mps ^= 1;
    cx.state = st.nlps;
    renorm();
  }
}

std::vector<uint8_t> MqEncoder::finish() {
  assert(!finished_);
  finished_ = true;
  // SETBITS: top C up with 1-bits the decoder can regenerate on its own.
  const uint32_t tempc = c_ + a_;
  c_ |= 0xFFFF;
  if (c_ >= tempc) c_ -= kAMin;
  c_ <<= ct_;
  byte_out();
  c_ <<= ct_;
  byte_out();
  if (buf_[bp_] != 0xFF) ++bp_;  // a trailing 0xFF is all stuffing, drop it
  return std::vector<uint8_t>(buf_.begin() + 1, buf_.begin() + long(bp_));
}

std::vector<uint8_t> mq_encode(std::span<const SymbolCtx> stream,
                               int num_contexts) {
  MqEncoder enc(num_contexts);
  for (const auto& sc : stream) enc.encode(sc.symbol, sc.context);
  return enc.finish();
}

MqDecoder::MqDecoder(std::span<const uint8_t> data, int num_contexts)
    : data_(data.begin(), data.end()), ctxs_(size_t(num_contexts)) {
  const uint8_t b0 = data_.empty() ? 0xFF : data_[0];
  if (data_.empty()) ++synth_;
  c_ = uint32_t(b0) << 16;
  byte_in();
  c_ <<= 7;
  ct_ -= 7;
  a_ = kAMin;
}

void MqDecoder::byte_in() {
  if (bp_ < data_.size()) {
    uint32_t next;
    bool synthetic = false;
    if (bp_ + 1 < data_.size()) {
      next = data_[bp_ + 1];
    } else {
      next = 0xFF;
      synthetic = true;
    }
    if (data_[bp_] == 0xFF) {
      if (next > 0x8F) {
        // Terminated: feed 1-bits without moving on.
        c_ += 0xFF00;
        ct_ = 8;
        ++synth_;
      } else {
        ++bp_;
        c_ += next << 9;  // unstuff
        ct_ = 7;
      }
    } else {
      ++bp_;
      c_ += next << 8;
      ct_ = 8;
      if (synthetic) ++synth_;
    }
  } else {
    c_ += 0xFF00;
    ct_ = 8;
    ++synth_;
  }
}

void MqDecoder::renorm() {
  do {
    if (ct_ == 0) byte_in();
    a_ <<= 1;
    c_ <<= 1;
    --ct_;
  } while ((a_ & kAMin) == 0);
}

int MqDecoder::decode(int ctx) {
  if (synth_ > kMaxSyntheticByteins)
    throw MqExhausted("MQ payload exhausted before the symbol stream ended");

  Ctx& cx = ctxs_.at(size_t(ctx));
  const QeState& st = kStates[cx.state];
  const uint32_t qe = st.qe;
  int d;

  a_ -= qe;
  if ((c_ >> 16) < qe) {
    // LPS exchange, with the conditional swap when the interval inverted.
    if (a_ < qe) {
      d = cx.mps;
      cx.state = st.nmps;
    } else {
      d = 1 - cx.mps;
      if (st.sw) cx.mps ^= 1;
      cx.state = st.nlps;
    }
    a_ = qe;
    renorm();
  } else {
    c_ -= qe << 16;
    if ((a_ & kAMin) == 0) {
      if (a_ < qe) {
        d = 1 - cx.mps;
        if (st.sw) cx.mps ^= 1;
        cx.state = st.nlps;
      } else {
        d = cx.mps;
        cx.state = st.nmps;
      }
      renorm();
    } else {
      d = cx.mps;
    }
  }
  return d;
}

std::vector<uint8_t> mq_decode(std::span<const uint8_t> bytes,
                               std::span<const uint8_t> contexts,
                               int num_contexts) {
  MqDecoder dec(bytes, num_contexts);
  std::vector<uint8_t> symbols;
  symbols.reserve(contexts.size());
  for (uint8_t ctx : contexts) symbols.push_back(uint8_t(dec.decode(ctx)));
  return symbols;
}

}  // namespace lrtdvc
