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

#ifndef SWCOREF_ASSIGNMENT_H_
#define SWCOREF_ASSIGNMENT_H_

#include <utility>
#include <vector>

namespace swcoref {

struct Assignment {
  std::vector<std::pair<size_t, size_t>> pairs;  // (row, column), by row
  double total = 0.0;
};

// Maximum-weight one-to-one matching of a rectangular score matrix
// (Kuhn-Munkres with potentials, O(n^2 m)). Matches min(rows, cols) pairs;
// `total` is the sum of matched scores in row order. Rows must have equal
// length and finite entries.
Assignment OptimalAssignment(const std::vector<std::vector<double>> &scores);

}  // namespace swcoref

#endif  // SWCOREF_ASSIGNMENT_H_
