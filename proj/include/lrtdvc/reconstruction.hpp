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

#ifndef LRTDVC_RECONSTRUCTION_HPP_
#define LRTDVC_RECONSTRUCTION_HPP_

#include <vector>

#include "lrtdvc/frame.hpp"
#include "lrtdvc/lrt.hpp"
#include "lrtdvc/merge.hpp"

namespace lrtdvc {

struct ReconParams {
  LrtParams lrt;
  int step = 2;
  // Unknown-pixel SAD gate. Negative selects the default
  // 0.05 * max_rank * (present axial neighbor count) per pixel.
  double t3 = -1.0;
  // Hard cap against plateau oscillation; the stopping rule normally fires
  // far earlier.
  int max_iterations = 256;
};

struct IterationRecord {
  int iteration = 0;
  double rank_psnr = 0.0;
  int changed_pixels = 0;
};
using IterationTrace = std::vector<IterationRecord>;

// PSNR between rank images with peak max_rank, over positions present in
// both. +infinity when they agree everywhere compared.
double rank_fidelity(const RankImage& ref, const RankImage& est);

struct DlrtexResult {
  Frame frame;
  IterationTrace trace;
};

// Iterative reconstruction: nudge every pixel by +/-step toward agreement
// between its current rank and the reference rank, Jacobi-style from the
// previous iterate, until the rank fidelity drops; return the iterate
// before the drop. A half-sampled reference restricts comparisons and
// updates to the present positions. When map is given, iterate ranks are
// passed through it so they live in the reference's merged alphabet.
DlrtexResult dlrtex(const RankImage& rank_ref, const Frame& si,
                    const ReconParams& p, const MergeMap* map = nullptr);

// Sampled-mode reconstruction: known-rank pixels via the restricted
// dlrtex, then each unknown pixel is classified by the SAD between its
// present-neighbor reference ranks and the co-located SI ranks — below t3
// it is copied from SI, otherwise it takes the average of its reconstructed
// axial neighbors.
Frame reconstruct_sampled(const RankImage& sampled_ref, const Frame& si,
                          const RankImage& si_ranks, const ReconParams& p,
                          const MergeMap* map = nullptr,
                          IterationTrace* trace = nullptr);

// Per-block mean correction toward the transmitted means (clamped to
// [0,255]) followed by one more dlrtex run to iron out the block seams.
Frame post_process(const Frame& decoded, const MeanGrid& wz_means,
                   const RankImage& rank_ref, const ReconParams& p,
                   const MergeMap* map = nullptr,
                   IterationTrace* trace = nullptr);

}  // namespace lrtdvc

#endif  // LRTDVC_RECONSTRUCTION_HPP_
