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

#ifndef LRTDVC_PARALLEL_HPP_
#define LRTDVC_PARALLEL_HPP_

namespace lrtdvc {

// Honors LRTDVC_THREADS when set; no-op without OpenMP.
void apply_thread_cap_from_env();

int max_threads();

}  // namespace lrtdvc

#endif  // LRTDVC_PARALLEL_HPP_
