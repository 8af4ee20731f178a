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

#ifndef LRTDVC_COMPLEXITY_HPP_
#define LRTDVC_COMPLEXITY_HPP_

#include <cstdint>
#include <span>

namespace lrtdvc {

// Weighted instruction tallies for the encoder cost model. Counts are per
// frame; cycles come from the embedded-profile weights below.
struct OpCounts {
  uint64_t comparisons = 0;
  uint64_t increments = 0;
  uint64_t additions = 0;
  uint64_t memory_ops = 0;  // reads and copies share one weight
  uint64_t shifts = 0;
  uint64_t decrements = 0;
  uint64_t moves = 0;
  uint64_t modulo2 = 0;
  uint64_t divisions = 0;
  uint64_t multiplications = 0;

  OpCounts& operator+=(const OpCounts& o);
};

// Average cycles per instruction class on an embedded in-order core.
struct CycleWeights {
  double comparison = 1.0;
  double addition = 1.0;
  double division = 6.0;
  double multiplication = 6.0;
  double increment = 0.5;
  double shift = 0.5;
  double decrement = 0.5;
  double modulo2 = 0.5;
  double move = 0.5;
  double memory = 3.0;
};

double weighted_cycles(const OpCounts& ops, const CycleWeights& w = {});

// Rank transform over P pixels, neighborhood size n: PN(N+1) comparisons
// (the shared-comparison variant), 2PN(N+1) increments, plus one addition
// per pixel for the running block mean.
OpCounts lrt_cost(uint64_t pixels, int n);
// Without comparison sharing: twice the comparisons.
OpCounts lrt_cost_naive(uint64_t pixels, int n);

// Total symbols the position coder emits, given the histogram of surviving
// rank values in descending rank order. The lowest plane is implied and
// contributes nothing. Throws if the histogram does not sum to pixels.
uint64_t beta_symbols(uint64_t pixels, std::span<const uint64_t> hist_desc);

// Context modelling: P(C+4I) for the first plane, (beta-P)(C+8I) after.
OpCounts context_cost(uint64_t pixels, uint64_t beta);

// Worst-case per-symbol MQ bundle, beta times.
OpCounts mq_cost(uint64_t beta);

// LDPC encoder reference cost for the n-th code, in weighted cycles; the
// (n+1)/132 term makes the per-pixel cost fractional, so this one returns
// cycles directly.
double ldpc_cost(uint64_t pixels, int n_code, const CycleWeights& w = {});

struct PowerEstimate {
  double cycles = 0.0;
  double rate_bps = 0.0;
  double power = 0.0;  // k * (f_wz * cycles + alpha * rate_bps)
};

PowerEstimate power(double cycles, double rate_bps, double k = 1.0,
                    double alpha = 50.0, double f_wz = 15.0);

}  // namespace lrtdvc

#endif  // LRTDVC_COMPLEXITY_HPP_
