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

#ifndef LRTDVC_MQ_CODER_HPP_
#define LRTDVC_MQ_CODER_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace lrtdvc {

// Context-adaptive binary arithmetic coder: the 47-state Qe finite state
// machine with byte stuffing after 0xFF and the standard two-byte flush.
// Contexts start at state 0 with MPS 0.

inline constexpr int kMqContexts = 9;

struct SymbolCtx {
  uint8_t symbol;   // 0 or 1
  uint8_t context;  // 0 .. num_contexts-1

  bool operator==(const SymbolCtx&) const = default;
};

class MqEncoder {
 public:
  explicit MqEncoder(int num_contexts = kMqContexts);

  void encode(int bit, int ctx);
  // Flush and hand over the codeword. The encoder is spent afterwards.
  std::vector<uint8_t> finish();

 private:
  struct Ctx {
    uint8_t state = 0;
    uint8_t mps = 0;
  };

  void renorm();
  void byte_out();
  void put_byte(uint8_t v);

  std::vector<uint8_t> buf_;  // buf_[0] is the carry scratch byte
  size_t bp_ = 0;
  uint32_t a_ = 0;
  uint32_t c_ = 0;
  int ct_ = 0;
  std::vector<Ctx> ctxs_;
  bool finished_ = false;
};

// Raised when a decode keeps pulling bits well past the end of the payload,
// which a correctly terminated codeword never does.
class MqExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MqDecoder {
 public:
  explicit MqDecoder(std::span<const uint8_t> data,
                     int num_contexts = kMqContexts);

  int decode(int ctx);
  int synthetic_byteins() const { return synth_; }

  // Byteins a well-formed stream may legitimately need past its last real
  // byte (terminal padding plus the init prefetch). Anything beyond this is
  // a truncated payload.
  static constexpr int kMaxSyntheticByteins = 8;

 private:
  struct Ctx {
    uint8_t state = 0;
    uint8_t mps = 0;
  };

  void byte_in();
  void renorm();

  std::vector<uint8_t> data_;
  size_t bp_ = 0;
  uint32_t a_ = 0;
  uint32_t c_ = 0;
  int ct_ = 0;
  int synth_ = 0;
  std::vector<Ctx> ctxs_;
};

// One-shot helpers over the classes above. mq_decode replays a recorded
// context sequence, which is how the position decoder drives it.
std::vector<uint8_t> mq_encode(std::span<const SymbolCtx> stream,
                               int num_contexts = kMqContexts);
std::vector<uint8_t> mq_decode(std::span<const uint8_t> bytes,
                               std::span<const uint8_t> contexts,
                               int num_contexts = kMqContexts);

}  // namespace lrtdvc

#endif  // LRTDVC_MQ_CODER_HPP_
