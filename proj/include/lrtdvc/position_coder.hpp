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

#ifndef LRTDVC_POSITION_CODER_HPP_
#define LRTDVC_POSITION_CODER_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "lrtdvc/lrt.hpp"
#include "lrtdvc/merge.hpp"
#include "lrtdvc/mq_coder.hpp"

namespace lrtdvc {

// Bitplane serialization of a merged rank image. Planes run from the
// highest surviving rank downward; each plane raster-scans the positions no
// earlier plane claimed and emits 1 where the pixel carries the plane's
// rank. The context of a symbol is the number of already-claimed pixels
// among its 8 neighbors, so encoder and decoder stay in lockstep without
// side channels. The lowest surviving rank is implied, never coded.
//
// Input ranks must already be merged (every present value a survivor).
std::vector<SymbolCtx> encode_positions(const RankImage& merged,
                                        const MergeMap& map);

// Inverse scan driving an MqDecoder over the payload. Positions left
// unclaimed after the last coded plane take the lowest surviving rank.
// decoded_stream, when given, captures the (symbol, context) pairs for
// synchrony checks.
RankImage decode_positions(std::span<const uint8_t> mq_bytes, int width,
                           int height, Sampling sampling, const MergeMap& map,
                           std::vector<SymbolCtx>* decoded_stream = nullptr);

}  // namespace lrtdvc

#endif  // LRTDVC_POSITION_CODER_HPP_
