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

#include "lrtdvc/complexity.hpp"

#include <stdexcept>

namespace lrtdvc {

OpCounts& OpCounts::operator+=(const OpCounts& o) {
  comparisons += o.comparisons;
  increments += o.increments;
  additions += o.additions;
  memory_ops += o.memory_ops;
  shifts += o.shifts;
  decrements += o.decrements;
  moves += o.moves;
  modulo2 += o.modulo2;
  divisions += o.divisions;
  multiplications += o.multiplications;
  return *this;
}

double weighted_cycles(const OpCounts& ops, const CycleWeights& w) {
  return double(ops.comparisons) * w.comparison +
         double(ops.increments) * w.increment +
         double(ops.additions) * w.addition +
         double(ops.memory_ops) * w.memory + double(ops.shifts) * w.shift +
         double(ops.decrements) * w.decrement + double(ops.moves) * w.move +
         double(ops.modulo2) * w.modulo2 +
         double(ops.divisions) * w.division +
         double(ops.multiplications) * w.multiplication;
}

OpCounts lrt_cost(uint64_t pixels, int n) {
  if (n < 1) throw std::invalid_argument("neighborhood size must be >= 1");
  const uint64_t pairs = pixels * uint64_t(n) * uint64_t(n + 1);
  OpCounts ops;
  ops.comparisons = pairs;
  ops.increments = 2 * pairs;
  ops.additions = pixels;  // running block-mean accumulation
  return ops;
}

OpCounts lrt_cost_naive(uint64_t pixels, int n) {
  OpCounts ops = lrt_cost(pixels, n);
  ops.comparisons *= 2;
  return ops;
}

uint64_t beta_symbols(uint64_t pixels, std::span<const uint64_t> hist_desc) {
  uint64_t total = 0;
  for (uint64_t h : hist_desc) total += h;
  if (total != pixels)
    throw std::invalid_argument("histogram does not sum to the pixel count");

  // Each coded plane scans whatever earlier planes left unclaimed; the
  // lowest plane is implied and never coded.
  uint64_t beta = 0;
  uint64_t remaining = pixels;
  for (size_t plane = 0; plane + 1 < hist_desc.size(); ++plane) {
    beta += remaining;
    remaining -= hist_desc[plane];
  }
  return beta;
}

OpCounts context_cost(uint64_t pixels, uint64_t beta) {
  if (beta < pixels)
    throw std::invalid_argument("beta below the first-plane symbol count");
  OpCounts ops;
  ops.comparisons = beta;
  ops.increments = 4 * pixels + 8 * (beta - pixels);
  return ops;
}

OpCounts mq_cost(uint64_t beta) {
  OpCounts ops;
  ops.memory_ops = 3 * beta;
  ops.comparisons = beta;
  ops.additions = beta;
  ops.shifts = 2 * beta;
  ops.decrements = beta;
  ops.moves = beta;
  return ops;
}

double ldpc_cost(uint64_t pixels, int n_code, const CycleWeights& w) {
  if (n_code < 1) throw std::invalid_argument("code index must be >= 1");
  const double per_pixel =
      4.0 * w.addition + 7.0 * w.memory + w.decrement +
      (double(n_code + 1) / 132.0) *
          (w.division + w.multiplication + 2.0 * w.addition + w.decrement);
  return 8.0 * double(pixels) * per_pixel;
}

PowerEstimate power(double cycles, double rate_bps, double k, double alpha,
                    double f_wz) {
  PowerEstimate e;
  e.cycles = cycles;
  e.rate_bps = rate_bps;
  e.power = k * (f_wz * cycles + alpha * rate_bps);
  return e;
}

}  // namespace lrtdvc
