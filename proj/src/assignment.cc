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

#include "swcoref/assignment.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace swcoref {

Assignment OptimalAssignment(const std::vector<std::vector<double>> &scores) {
  Assignment result;
  const size_t rows = scores.size();
  if (rows == 0) return result;
  const size_t cols = scores[0].size();
  for (const auto &row : scores) {
    if (row.size() != cols) {
      throw std::invalid_argument("OptimalAssignment: ragged matrix");
    }
    for (double x : row) {
      if (!std::isfinite(x)) {
        throw std::invalid_argument("OptimalAssignment: non-finite entry");
      }
    }
  }
  if (cols == 0) return result;

  // The solver below needs n <= m; transpose when there are more rows.
  const bool transposed = rows > cols;
  const size_t n = transposed ? cols : rows;
  const size_t m = transposed ? rows : cols;
  auto cost = [&](size_t i, size_t j) {
    return transposed ? -scores[j][i] : -scores[i][j];
  };

  // 1-based potentials formulation; column 0 is a virtual source.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<size_t> match_of_col(m + 1, 0), way(m + 1, 0);
  for (size_t i = 1; i <= n; ++i) {
    match_of_col[0] = i;
    size_t j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const size_t i0 = match_of_col[j0];
      double delta = kInf;
      size_t j1 = 0;
      for (size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double reduced = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match_of_col[j0] != 0);
    do {
      const size_t j1 = way[j0];
      match_of_col[j0] = match_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<size_t> col_of_row(rows, std::numeric_limits<size_t>::max());
  for (size_t j = 1; j <= m; ++j) {
    if (match_of_col[j] == 0) continue;
    const size_t small = match_of_col[j] - 1;
    const size_t large = j - 1;
    if (transposed) {
      col_of_row[large] = small;
    } else {
      col_of_row[small] = large;
    }
  }
  for (size_t r = 0; r < rows; ++r) {
    if (col_of_row[r] == std::numeric_limits<size_t>::max()) continue;
    result.pairs.emplace_back(r, col_of_row[r]);
    result.total += scores[r][col_of_row[r]];
  }
  return result;
}

}  // namespace swcoref
