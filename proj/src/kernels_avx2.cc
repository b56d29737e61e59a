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

// Built with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "swcoref/kernels.h"

namespace swcoref::kernels::detail {

namespace {

double DotAvx2(const double *a, const double *b, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const size_t blocked = n & ~size_t{3};
  for (size_t i = 0; i < blocked; i += 4) {
    const __m256d product =
        _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, product);
  }
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  // [l0 + l1, l2 + l3]
  const __m128d pairs = _mm_hadd_pd(lo, hi);
  double sum = _mm_cvtsd_f64(pairs) + _mm_cvtsd_f64(_mm_unpackhi_pd(pairs, pairs));
  for (size_t i = blocked; i < n; ++i) {
    const double product = a[i] * b[i];
    sum = sum + product;
  }
  return sum;
}

void WeightedSumAvx2(double *out, double wa, const double *a, double wb,
                     const double *b, size_t n) {
  const __m256d va = _mm256_set1_pd(wa);
  const __m256d vb = _mm256_set1_pd(wb);
  const size_t blocked = n & ~size_t{3};
  for (size_t i = 0; i < blocked; i += 4) {
    const __m256d left = _mm256_mul_pd(va, _mm256_loadu_pd(a + i));
    const __m256d right = _mm256_mul_pd(vb, _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(left, right));
  }
  for (size_t i = blocked; i < n; ++i) {
    const double left = wa * a[i];
    const double right = wb * b[i];
    out[i] = left + right;
  }
}

void DivideAvx2(double *out, const double *in, double divisor, size_t n) {
  const __m256d d = _mm256_set1_pd(divisor);
  const size_t blocked = n & ~size_t{3};
  for (size_t i = 0; i < blocked; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(in + i), d));
  }
  for (size_t i = blocked; i < n; ++i) out[i] = in[i] / divisor;
}

}  // namespace

const KernelTable kAvx2Table = {Isa::kAvx2, DotAvx2, WeightedSumAvx2,
                                DivideAvx2};

}  // namespace swcoref::kernels::detail
