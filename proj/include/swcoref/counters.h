// Copyright 2026 The swcoref Authors.
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

#ifndef SWCOREF_COUNTERS_H_
#define SWCOREF_COUNTERS_H_

#include <cstdint>

namespace swcoref {

// Algorithmic work done by a resolver run. Used for hardware-independent
// scaling checks next to wall-clock timing.
struct WorkCounters {
  uint64_t similarity_evaluations = 0;  // string pair scorings
  uint64_t vector_combinations = 0;     // per-mention weighted sums
  uint64_t distance_evaluations = 0;    // cosine distances computed
  uint64_t cluster_merges = 0;

  void Reset() { *this = WorkCounters{}; }
};

}  // namespace swcoref

#endif  // SWCOREF_COUNTERS_H_
