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

// Times the OpenMP kernels against their serial reference paths and checks
// that both produce identical results while at it.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "lrtdvc/frame.hpp"
#include "lrtdvc/lrt.hpp"
#include "lrtdvc/parallel.hpp"
#include "lrtdvc/reconstruction.hpp"
#include "lrtdvc/side_info.hpp"

using namespace lrtdvc;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Deterministic texture+gradient test frame; enough structure to keep the
// kernels honest.
Frame synthetic_frame(int w, int h, uint64_t seed) {
  Frame f(w, h);
  uint64_t s = seed * 0x9E3779B97F4A7C15ull + 1;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      s ^= s << 13;
      s ^= s >> 7;
      s ^= s << 17;
      const int grad = (x * 96) / w + (y * 64) / h;
      const int tex = int(((x * 13 + y * 7 + int(seed)) % 32)) * 2;
      const int noise = int(s % 17) - 8;
      int v = 48 + grad + tex + noise;
      f.at(y, x) = uint8_t(v < 0 ? 0 : (v > 255 ? 255 : v));
    }
  }
  return f;
}

template <typename F>
double time_best_of(int reps, F fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    fn();
    const double t = ms_since(t0);
    if (t < best) best = t;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap_from_env();
  const int w = argc > 1 ? std::atoi(argv[1]) : 352;
  const int h = argc > 2 ? std::atoi(argv[2]) : 288;
  const int reps = argc > 3 ? std::atoi(argv[3]) : 5;
  std::printf("frame %dx%d, best of %d, %d thread(s)\n\n", w, h, reps,
              max_threads());

  const Frame a = synthetic_frame(w, h, 1);
  const Frame b = synthetic_frame(w, h, 2);
  LrtParams params;
  params.n = 2;

  // transform
  RankImage serial_ranks, parallel_ranks;
  const double t_ser = time_best_of(
      reps, [&] { serial_ranks = transform_serial(a, params); });
  const double t_par =
      time_best_of(reps, [&] { parallel_ranks = transform(a, params); });
  const bool ok_t = serial_ranks == parallel_ranks;
  std::printf("transform        serial %8.2f ms   omp %8.2f ms   x%.2f  %s\n",
              t_ser, t_par, t_ser / t_par, ok_t ? "match" : "MISMATCH");

  // motion search
  const RankImage ranks_b = transform(b, params);
  const MeanGrid means = block_means(a);
  const MatchThresholds th =
      make_thresholds(serial_ranks.max_rank, Sampling::kFull);
  const RefPlane ref{&b, &ranks_b};
  MotionField mf_ser, mf_par;
  const double m_ser = time_best_of(reps, [&] {
    mf_ser = motion_search_serial(serial_ranks, means, {&ref, 1}, th, 16);
  });
  const double m_par = time_best_of(reps, [&] {
    mf_par = motion_search(serial_ranks, means, {&ref, 1}, th, 16);
  });
  bool ok_m = mf_ser.blocks.size() == mf_par.blocks.size();
  for (size_t i = 0; ok_m && i < mf_ser.blocks.size(); ++i)
    ok_m = mf_ser.blocks[i].chosen == mf_par.blocks[i].chosen &&
           mf_ser.blocks[i].lsad1 == mf_par.blocks[i].lsad1;
  std::printf("motion search    serial %8.2f ms   omp %8.2f ms   x%.2f  %s\n",
              m_ser, m_par, m_ser / m_par, ok_m ? "match" : "MISMATCH");

  // reconstruction (transform-dominated update loop)
  Frame si = compensate(mf_par, {&ref, 1}, w, h);
  ReconParams rp;
  rp.lrt = params;
  Frame recon;
  const double r_par = time_best_of(reps, [&] {
    recon = dlrtex(serial_ranks, si, rp).frame;
  });
  std::printf("dlrtex           omp %8.2f ms (%zu px)\n", r_par,
              recon.pixel_count());

  return (ok_t && ok_m) ? 0 : 1;
}
